#include <benchmark/benchmark.h>

#include "rkhs/experiments.hpp"
#include "rkhs/hermite_basis.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/mdm.hpp"
#include "rkhs/smolyak.hpp"
#include "rkhs/tensor.hpp"
#include "rkhs/transference.hpp"
#include "rkhs/worst_case.hpp"

namespace {

void BM_GaussHermiteRule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rkhs::hermite::gauss_hermite_rule(n));
}
BENCHMARK(BM_GaussHermiteRule)->Arg(16)->Arg(64)->Arg(256);

void BM_WceIntegrationGram(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const rkhs::KernelSpec spec = rkhs::KernelSpec::gaussian({1.0, 0.7});
  const std::vector<rkhs::hermite::QuadratureRule1D> factors(2, rkhs::hermite::gauss_hermite_rule(k));
  const rkhs::QuadratureRule rule = rkhs::tensor_rule(factors);
  for (auto _ : state) benchmark::DoNotOptimize(rkhs::wce_integration(rule, spec));
}
BENCHMARK(BM_WceIntegrationGram)->Arg(4)->Arg(8)->Arg(16);

void BM_TransferQuadrature(benchmark::State& state) {
  const std::vector<double> sigma{0.5, 1.0, 1.5};
  const rkhs::QuadratureRule rule = rkhs::smolyak_rule(3, rkhs::SmolyakLevels::linear(6));
  for (auto _ : state) benchmark::DoNotOptimize(rkhs::transfer_quadrature_to_hermite(rule, sigma));
}
BENCHMARK(BM_TransferQuadrature);

void BM_SplineApproximationError(benchmark::State& state) {
  const rkhs::SpectralSystem sys(rkhs::KernelSpec::gaussian({0.8}), rkhs::MultiIndexSet::tensor(1, 40));
  rkhs::NodeMatrix nodes(6, 1);
  nodes << -2.0, -1.2, -0.4, 0.3, 1.1, 1.9;
  const rkhs::SamplingMethod method = rkhs::spline_method(nodes, sys);
  for (auto _ : state) benchmark::DoNotOptimize(rkhs::wce_approximation(method, sys));
}
BENCHMARK(BM_SplineApproximationError);

void BM_SmolyakRule(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rkhs::smolyak_rule(dim, rkhs::SmolyakLevels::linear(static_cast<int>(dim) + 3)));
  }
}
BENCHMARK(BM_SmolyakRule)->Arg(2)->Arg(4)->Arg(8);

void BM_MdmBuild(benchmark::State& state) {
  const rkhs::InfiniteKernel kernel(rkhs::Family::gaussian, rkhs::SequenceRule::power(1.5));
  const rkhs::CostModel model = rkhs::CostModel::dollar(
      [](std::size_t m) { return 1.0 + static_cast<double>(m); }, "1+m");
  const double budget = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rkhs::mdm_build(kernel, budget, model));
}
BENCHMARK(BM_MdmBuild)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
