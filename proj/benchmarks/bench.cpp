#include <benchmark/benchmark.h>

#include "pgsnf/charsum.hpp"
#include "pgsnf/incidence.hpp"
#include "pgsnf/invariants.hpp"
#include "pgsnf/snf.hpp"

using namespace pgsnf;

namespace {

// (n, q, r) projective cells of increasing size
const IntMatrix& cell(int which) {
    static const IntMatrix m[] = {
        projective_incidence_matrix(2, 4, 2).dense(),  // 21 x 21
        projective_incidence_matrix(3, 4, 2).dense(),  // 357 x 85
        projective_incidence_matrix(2, 27, 2).dense(), // 757 x 757
        projective_incidence_matrix(3, 8, 3).dense(),  // 585 x 585
    };
    return m[which];
}

const std::uint64_t kCellP[] = {2, 2, 3, 2};

void BM_Incidence(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(projective_incidence_matrix(3, 4, 2));
}
BENCHMARK(BM_Incidence)->Unit(benchmark::kMillisecond);

void BM_SnfElimination(benchmark::State& st) {
    const auto& m = cell(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(smith_normal_form(m, {.method = SnfMethod::elimination}));
}
BENCHMARK(BM_SnfElimination)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SnfCertified(benchmark::State& st) {
    const auto& m = cell(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(smith_normal_form(m, {.method = SnfMethod::certified}));
}
BENCHMARK(BM_SnfCertified)->Arg(0)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_PLocal(benchmark::State& st) {
    const int which = static_cast<int>(st.range(0));
    const auto& m = cell(which);
    for (auto _ : st) benchmark::DoNotOptimize(p_elementary_divisors(m, kCellP[which]));
}
BENCHMARK(BM_PLocal)->Arg(0)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ProjectiveSpectrum(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(projective_spectrum(4, 9, 3));
}
BENCHMARK(BM_ProjectiveSpectrum)->Unit(benchmark::kMicrosecond);

void BM_JacobiTable(benchmark::State& st) {
    CharacterTable T(Field::create(FieldSpec::for_order(16)), 6);
    for (auto _ : st)
        for (std::uint64_t b0 = 1; b0 < 15; ++b0)
            for (std::uint64_t b1 = 1; b1 < 15; ++b1) benchmark::DoNotOptimize(jacobi_sum(b0, b1, T));
}
BENCHMARK(BM_JacobiTable)->Unit(benchmark::kMillisecond);

void BM_EtaDirect(benchmark::State& st) {
    auto F = Field::create(FieldSpec::for_order(9));
    CharacterTable T(F, 8);
    const auto ys = enumerate_subspaces(*F, 3, 2);
    const auto basis = monomial_basis(3, 9);
    for (auto _ : st)
        for (std::size_t i = 0; i < 64; ++i) benchmark::DoNotOptimize(eta_coordinate(basis[i * 7 % basis.size()], ys[i], T));
}
BENCHMARK(BM_EtaDirect)->Unit(benchmark::kMillisecond);

void BM_EtaFast(benchmark::State& st) {
    auto F = Field::create(FieldSpec::for_order(9));
    CharacterTable T(F, 8);
    const auto ys = enumerate_subspaces(*F, 3, 2);
    const auto basis = monomial_basis(3, 9);
    std::vector<PointLogs> logs;
    for (std::size_t i = 0; i < 64; ++i) logs.push_back(point_logs(*F, ys[i]));
    for (auto _ : st)
        for (std::size_t i = 0; i < 64; ++i) benchmark::DoNotOptimize(eta_coordinate_fast(basis[i * 7 % basis.size()], logs[i], T));
}
BENCHMARK(BM_EtaFast)->Unit(benchmark::kMillisecond);

void BM_WanAudit(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(wan_audit(3, 4, 2));
}
BENCHMARK(BM_WanAudit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
