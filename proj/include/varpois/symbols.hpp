#pragma once

#include <optional>
#include <string>

namespace vp {

// Process-wide symbol tables for parameter and function names.
unsigned intern_param(const std::string& name);
unsigned intern_func(const std::string& name);
std::optional<unsigned> find_param(const std::string& name);
std::optional<unsigned> find_func(const std::string& name);
std::string param_name(unsigned k);
std::string func_name(unsigned k);

// Number of jet components used when printing (u vs u1, u2, ...).
void set_display_components(unsigned ell);
unsigned display_components();

std::string jet_name(unsigned i, unsigned n);
std::string primed(const std::string& base, unsigned n);

}  // namespace vp
