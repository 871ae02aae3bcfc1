#include <benchmark/benchmark.h>

#include <pdmseries/pdmseries.hpp>

namespace {

using namespace pdmseries;

void BM_GenerateGeneral(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const PotentialSpec pot = make_cornell(1.0, 0.2, -1.5);
  const MassProfile mass = expand_exponential(1.0, 0.1, order);
  const QuantumNumbers q(3, 1, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(generate_coefficients(RecurrenceKind::general(), pot, mass, q, -0.8, order));
  state.SetComplexityN(order);
}
BENCHMARK(BM_GenerateGeneral)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_GenerateExpMass(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const PotentialSpec pot = make_cornell(1.0, 0.2, -1.5);
  const MassProfile mass = expand_exponential(1.0, 0.1, order);
  const QuantumNumbers q(3, 1, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(generate_coefficients(RecurrenceKind::exp_mass_cornell(0.1), pot, mass, q, -0.8, order));
}
BENCHMARK(BM_GenerateExpMass)->RangeMultiplier(2)->Range(8, 256);

void BM_Mismatch(benchmark::State& state) {
  const PotentialSpec pot = make_cornell(1.0, 0.2, -1.5);
  const MassProfile mass = expand_exponential(1.0, 0.1, kDefaultTruncationOrder);
  const SolverConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_mismatch(pot, mass, QuantumNumbers(3, 0, 0), -1.2, cfg));
}
BENCHMARK(BM_Mismatch);

void BM_FindEigenvalueCoulomb(benchmark::State& state) {
  SolverConfig cfg;
  cfg.e_lo = -0.7;
  cfg.e_hi = -0.3;
  for (auto _ : state)
    benchmark::DoNotOptimize(find_eigenvalue(make_coulomb(1.0), constant_mass(1.0), QuantumNumbers(3, 0, 0), cfg));
}
BENCHMARK(BM_FindEigenvalueCoulomb)->Unit(benchmark::kMillisecond);

void BM_OracleCoulomb(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        oracle::numerov_eigenvalue(make_coulomb(1.0), constant_mass(1.0), QuantumNumbers(3, 0, 0), -0.7, -0.3));
}
BENCHMARK(BM_OracleCoulomb)->Unit(benchmark::kMillisecond);

void BM_ScanSpectrum(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        scan_spectrum(make_coulomb(1.0), constant_mass(1.0), QuantumNumbers(3, 0, 0), -0.6, -0.01, 200));
}
BENCHMARK(BM_ScanSpectrum)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
