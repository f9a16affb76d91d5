#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "varpois/pva.hpp"

namespace vp {

struct Obstruction {
    std::string kind;        // "NoPreimage" or "NotExact"
    unsigned component = 0;  // 1-based, 0 when not tied to a component
    DVec witness;
    std::string message;
};

struct StepResult {
    std::optional<LocalFunctional> density;
    DVec preimage;  // G with K G = H dh_n / du
    std::optional<Obstruction> obstruction;
    std::optional<int> kernel_dim;  // integration constants set to zero; nullopt means infinite
};

struct StepCertificate {
    bool recursion = false;  // K dh_{n+1} = H dh_n exactly
    std::optional<int> kernel_dim;
};

struct HierarchyState {
    Hamiltonian H, K;
    std::vector<LocalFunctional> densities;
    std::vector<StepCertificate> certificates;  // certificates[n] belongs to densities[n + 1]
    std::optional<Obstruction> obstruction;
};

struct InvolutionMatrix {
    std::vector<std::vector<bool>> H, K;
    bool all() const;
};

// f = dg + r, r = 0 exactly when f lies in dV
std::pair<DiffPoly, DiffPoly> integrate_total(const DiffPoly& f);

// K must be quasiconstant, triangular, with diagonal entries a d^n.
bool lenard_supported(const Hamiltonian& K);
DVec invert_K(const Hamiltonian& K, const DVec& F);  // throws NoPreimage

StepResult lenard_step(const HierarchyState& state);
bool certify_step(const Hamiltonian& H, const Hamiltonian& K, const LocalFunctional& prev, const LocalFunctional& next);
InvolutionMatrix verify_involution(const HierarchyState& state);
InvolutionMatrix verify_involution_serial(const HierarchyState& state);
bool vector_fields_commute(const HierarchyState& state);
HierarchyState run_hierarchy(const Hamiltonian& H, const Hamiltonian& K, const LocalFunctional& seed, unsigned steps,
                             bool check_pair = true);

}  // namespace vp
