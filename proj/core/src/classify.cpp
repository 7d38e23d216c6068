#include "ampforge/classify.hpp"

#include <cmath>

#include "ampforge/gram.hpp"

namespace ampforge {

namespace {

template <typename State>
double gain_impl(const Observable& obs, const State& input,
                 const State& output) {
  double in = expectation(obs, input);
  if (std::abs(in) <= 1e-12)
    throw ZeroInputSignal("input expectation vanishes; gain undefined");
  return expectation(obs, output) / in;
}

template <typename State>
bool noiseless_impl(const Observable& obs, const State& input,
                    const State& output, double tol) {
  return std::abs(fluctuation(obs, output) - fluctuation(obs, input)) <= tol;
}

template <typename State>
double residual_impl(const Observable& obs, const State& input,
                     const State& output, double g) {
  double in = expectation(obs, input);
  double out = expectation(obs, output);
  if (std::abs(out - g * in) > 1e-6 * std::max(1.0, std::abs(out)))
    throw GainInconsistent("gain relation <A>_out = g <A>_in violated");
  Observable sq = obs.squared();
  return (expectation(sq, output) - expectation(sq, input)) -
         (g * g - 1.0) * in * in;
}

}  // namespace

double gain(const Observable& obs, const DensityMatrix& input,
            const DensityMatrix& output) {
  return gain_impl(obs, input, output);
}
double gain(const Observable& obs, const PureState& input,
            const PureState& output) {
  return gain_impl(obs, input, output);
}

bool is_noiseless(const Observable& obs, const DensityMatrix& input,
                  const DensityMatrix& output, double tol) {
  return noiseless_impl(obs, input, output, tol);
}
bool is_noiseless(const Observable& obs, const PureState& input,
                  const PureState& output, double tol) {
  return noiseless_impl(obs, input, output, tol);
}

double noiseless_residual(const Observable& obs, const DensityMatrix& input,
                          const DensityMatrix& output, double g) {
  return residual_impl(obs, input, output, g);
}
double noiseless_residual(const Observable& obs, const PureState& input,
                          const PureState& output, double g) {
  return residual_impl(obs, input, output, g);
}

AmplifierClass classify(const AmplificationSpec& spec,
                        std::uint64_t search_seed) {
  const int n = spec.size();
  AmplifierClass cls;

  cls.deterministic = true;
  for (int i = 0; i < n; ++i)
    cls.deterministic = cls.deterministic && spec.probs(i) == 1.0;

  cls.linear = true;
  for (int i = 1; i < n; ++i)
    cls.linear = cls.linear &&
                 std::abs(spec.gains(i) - spec.gains(0)) <=
                     1e-9 * std::max(1.0, std::abs(spec.gains(0)));

  cls.noiseless = true;
  for (const auto& obs : spec.observables)
    for (int i = 0; i < n; ++i)
      cls.noiseless =
          cls.noiseless && is_noiseless(obs, spec.inputs[i], spec.targets[i]);

  bool no_amplification = true;
  for (int i = 0; i < n; ++i)
    no_amplification = no_amplification && std::abs(spec.gains(i) - 1.0) <= 1e-9;

  if (cls.deterministic && cls.linear && cls.noiseless && !no_amplification) {
    cls.feasible = false;
    cls.notes =
        "deterministic linear noiseless amplification with gain > 1 is "
        "infeasible: overlaps must not shrink under a deterministic map";
    return cls;
  }

  GramMatrix g_pi = gram_matrix(spec.inputs);
  GramMatrix g_xi = gram_matrix(spec.targets);
  if (n == 1) {
    cls.feasible = true;
    cls.notes = "single-state transformation is always realizable";
  } else if (n == 2 && spec.probs(0) == spec.probs(1)) {
    auto cert = solve_two_state(g_pi.entries(0, 1), g_xi.entries(0, 1),
                                spec.probs(0));
    cls.feasible = cert.feasible;
    cls.notes = cls.feasible ? "analytic two-state solver found omega"
                             : "analytic two-state solver: infeasible";
  } else {
    auto result = search_omega(g_pi, g_xi, spec.probs, 64, search_seed);
    cls.feasible = result.found() && result.certificate->feasible;
    cls.notes = cls.feasible
                    ? "penalty search found omega"
                    : "penalty search exhausted (evidence, not proof, of "
                      "infeasibility); best penalty " +
                          std::to_string(result.best_penalty);
  }
  return cls;
}

MonotonicityReport monotonicity_check(
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs_before,
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs_after) {
  if (pairs_before.size() != pairs_after.size())
    throw LengthMismatch("before/after pair lists differ in length");
  MonotonicityReport report;
  report.pairs.reserve(pairs_before.size());
  for (std::size_t i = 0; i < pairs_before.size(); ++i) {
    MonotonicityEntry e;
    e.d_before =
        trace_distance(pairs_before[i].first, pairs_before[i].second);
    e.d_after = trace_distance(pairs_after[i].first, pairs_after[i].second);
    e.ok = e.d_before + 1e-9 >= e.d_after;
    if (!e.ok) ++report.violations;
    report.pairs.push_back(e);
  }
  return report;
}

}  // namespace ampforge
