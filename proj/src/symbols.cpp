#include "varpois/symbols.hpp"

#include <atomic>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace vp {

namespace {

struct Table {
    std::mutex mu;
    std::vector<std::string> names;

    unsigned intern(const std::string& n) {
        std::lock_guard<std::mutex> lk(mu);
        for (unsigned k = 0; k < names.size(); ++k)
            if (names[k] == n) return k;
        names.push_back(n);
        return static_cast<unsigned>(names.size() - 1);
    }
    std::optional<unsigned> find(const std::string& n) {
        std::lock_guard<std::mutex> lk(mu);
        for (unsigned k = 0; k < names.size(); ++k)
            if (names[k] == n) return k;
        return std::nullopt;
    }
    std::string name(unsigned k) {
        std::lock_guard<std::mutex> lk(mu);
        if (k >= names.size()) return "?" + std::to_string(k);
        return names[k];
    }
};

Table& params() {
    static Table t;
    return t;
}
Table& funcs() {
    static Table t;
    return t;
}

std::atomic<unsigned> g_ell{1};

}  // namespace

unsigned intern_param(const std::string& name) { return params().intern(name); }
unsigned intern_func(const std::string& name) { return funcs().intern(name); }
std::optional<unsigned> find_param(const std::string& name) { return params().find(name); }
std::optional<unsigned> find_func(const std::string& name) { return funcs().find(name); }
std::string param_name(unsigned k) { return params().name(k); }
std::string func_name(unsigned k) { return funcs().name(k); }

void set_display_components(unsigned ell) { g_ell = ell; }
unsigned display_components() { return g_ell; }

std::string primed(const std::string& base, unsigned n) {
    if (n == 0) return base;
    if (n <= 2) return base + std::string(n, '\'');
    return base + "^(" + std::to_string(n) + ")";
}

std::string jet_name(unsigned i, unsigned n) {
    std::string base = (g_ell == 1 && i == 1) ? "u" : "u" + std::to_string(i);
    return primed(base, n);
}

}  // namespace vp
