#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ampforge/amplification_spec.hpp"
#include "ampforge/states.hpp"

namespace ampforge {

struct AmplifierClass {
  bool deterministic = false;
  bool noiseless = false;
  bool linear = false;
  bool feasible = false;
  std::string notes;
};

double gain(const Observable& obs, const DensityMatrix& input,
            const DensityMatrix& output);
double gain(const Observable& obs, const PureState& input,
            const PureState& output);

bool is_noiseless(const Observable& obs, const DensityMatrix& input,
                  const DensityMatrix& output, double tol = 1e-8);
bool is_noiseless(const Observable& obs, const PureState& input,
                  const PureState& output, double tol = 1e-8);

// Tr{A^2 (output - input)} - (g^2 - 1) Tr(A input)^2; zero is necessary
// for noiseless amplification at gain g. Equals the variance difference
// whenever the gain relation holds.
double noiseless_residual(const Observable& obs, const DensityMatrix& input,
                          const DensityMatrix& output, double g);
double noiseless_residual(const Observable& obs, const PureState& input,
                          const PureState& output, double g);

AmplifierClass classify(const AmplificationSpec& spec,
                        std::uint64_t search_seed = 0);

struct MonotonicityEntry {
  double d_before = 0.0;
  double d_after = 0.0;
  bool ok = false;
};

struct MonotonicityReport {
  std::vector<MonotonicityEntry> pairs;
  int violations = 0;
};

MonotonicityReport monotonicity_check(
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs_before,
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs_after);

}  // namespace ampforge
