#include <benchmark/benchmark.h>

#include <map>

#include "varpois/lenard.hpp"
#include "varpois/pva.hpp"
#include "varpois/symbols.hpp"

using namespace vp;

namespace {

DiffOp magri_op(unsigned i) {
    DiffPoly v = DiffPoly::jet(i);
    DiffPoly c(RatFunc::var(param_var(intern_param("c"))));
    return DiffOp(v.derivative()) + DiffOp::term(DiffPoly(2) * v, 1) + DiffOp::term(c, 3);
}

Hamiltonian diag_magri(unsigned ell) {
    MatDiffOp m(ell, ell);
    for (unsigned i = 0; i < ell; ++i) m.at(i, i) = magri_op(i + 1);
    return {m};
}

Hamiltonian gfz(unsigned ell = 1) {
    MatDiffOp m(ell, ell);
    for (unsigned i = 0; i < ell; ++i) m.at(i, i) = DiffOp::d();
    return {m};
}

const HierarchyState& kdv(int steps) {
    static std::map<int, HierarchyState> cache;
    auto it = cache.find(steps);
    if (it == cache.end()) {
        DiffPoly u = DiffPoly::jet(1);
        it = cache.emplace(steps, run_hierarchy(diag_magri(1), gfz(), {u * u * FieldElem(Rat(1, 2))}, steps)).first;
    }
    return it->second;
}

void BM_jacobi_parallel(benchmark::State& st) {
    Hamiltonian H = diag_magri(static_cast<unsigned>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(check_jacobi(H).ok);
}
void BM_jacobi_serial(benchmark::State& st) {
    Hamiltonian H = diag_magri(static_cast<unsigned>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(check_jacobi_serial(H).ok);
}
void BM_compatible_parallel(benchmark::State& st) {
    Hamiltonian H = diag_magri(2), K = gfz(2);
    for (auto _ : st) benchmark::DoNotOptimize(check_compatible(H, K).ok);
}
void BM_compatible_serial(benchmark::State& st) {
    Hamiltonian H = diag_magri(2), K = gfz(2);
    for (auto _ : st) benchmark::DoNotOptimize(check_compatible_serial(H, K).ok);
}
void BM_involution_parallel(benchmark::State& st) {
    const HierarchyState& s = kdv(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(verify_involution(s).all());
}
void BM_involution_serial(benchmark::State& st) {
    const HierarchyState& s = kdv(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(verify_involution_serial(s).all());
}

}  // namespace

BENCHMARK(BM_jacobi_parallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_jacobi_serial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compatible_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compatible_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_involution_parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_involution_serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
