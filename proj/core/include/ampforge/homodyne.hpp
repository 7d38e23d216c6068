#pragma once

#include <cstdint>

#include "ampforge/errors.hpp"

namespace ampforge {

// Balanced homodyne detection: signal |b>, local oscillator |c>, relative
// phase delta; the statistic is the photon-number difference of the two
// splitter outputs.
struct HomodyneSetup {
  double b_mag = 0.0;
  double c_mag = 1.0;
  double delta = 0.0;
};

double homodyne_mean(const HomodyneSetup& s);         // 2|b||c| sin(delta)
double homodyne_std(const HomodyneSetup& s);          // sqrt(|b|^2+|c|^2)
double homodyne_sensitivity(const HomodyneSetup& s);  // error-transfer formula

struct HomodyneStats {
  double mean = 0.0;
  double stddev = 0.0;
  double sensitivity = 0.0;
};
HomodyneStats homodyne_stats(const HomodyneSetup& s);

struct HomodyneSample {
  double emp_mean = 0.0;
  double emp_std = 0.0;
};

// Seeded Monte Carlo: independent Poisson photon counts at both splitter
// outputs. Trials are partitioned into fixed-size blocks with per-block
// seeds derived from (seed, block index); the result is bit-identical for
// any worker count.
HomodyneSample simulate_homodyne(const HomodyneSetup& s, long trials,
                                 std::uint64_t seed, int workers = 1);

}  // namespace ampforge
