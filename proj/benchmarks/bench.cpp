#include <benchmark/benchmark.h>

#include <complex>

#include "ampforge/gaussian.hpp"
#include "ampforge/gram.hpp"
#include "ampforge/homodyne.hpp"
#include "ampforge/kraus.hpp"

using namespace ampforge;

namespace {

void BM_GramMatrix(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::vector<PureState> states;
  for (int i = 0; i < n; ++i)
    states.push_back(make_coherent_state(Complex(0.1 * i, 0.05 * i), 40));
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(states));
}
BENCHMARK(BM_GramMatrix)->Arg(2)->Arg(4)->Arg(8);

void BM_SearchOmega(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::vector<PureState> in, out;
  for (int i = 0; i < n; ++i) {
    in.push_back(make_coherent_state(Complex(0.15 * i, 0.0), 40));
    out.push_back(make_coherent_state(Complex(0.3 * i, 0.0), 40));
  }
  GramMatrix gp = gram_matrix(in), gx = gram_matrix(out);
  Eigen::VectorXd p = Eigen::VectorXd::Constant(n, 0.2);
  for (auto _ : state)
    benchmark::DoNotOptimize(search_omega(gp, gx, p, 8, 1));
}
BENCHMARK(BM_SearchOmega)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_KrausPipeline(benchmark::State& state) {
  int dim = 30;
  std::vector<PureState> in = {make_coherent_state(0.0, dim),
                               make_coherent_state(0.5, dim)};
  std::vector<PureState> out = {make_coherent_state(0.0, dim),
                                make_coherent_state(1.0, dim)};
  auto cert = solve_two_state(inner(in[1], in[0]), inner(out[1], out[0]), 0.2);
  for (auto _ : state) {
    KrausSet k = build_kraus(factor_omega(cert.omega), dual_basis(in), out);
    benchmark::DoNotOptimize(k);
  }
}
BENCHMARK(BM_KrausPipeline)->Unit(benchmark::kMicrosecond);

void BM_WignerOverlap(benchmark::State& state) {
  GaussianState a = GaussianState::coherent(Complex(0.4, -0.3));
  GaussianState b = GaussianState::thermal(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(wigner_overlap(a, b));
}
BENCHMARK(BM_WignerOverlap);

void BM_SimulateHomodyne(benchmark::State& state) {
  HomodyneSetup s{1.0, 10.0, 0.5};
  long trials = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_homodyne(s, trials, 42, 4));
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_SimulateHomodyne)->Arg(100000)->Arg(1000000)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
