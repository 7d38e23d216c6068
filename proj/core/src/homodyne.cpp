#include "ampforge/homodyne.hpp"

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "ampforge/rng.hpp"

namespace ampforge {

namespace {

void validate(const HomodyneSetup& s) {
  if (s.b_mag < 0.0 || s.c_mag <= 0.0)
    throw InvalidParameters("require |b| >= 0 and |c| > 0");
}

constexpr long kBlockTrials = 1 << 16;

}  // namespace

double homodyne_mean(const HomodyneSetup& s) {
  validate(s);
  return 2.0 * s.b_mag * s.c_mag * std::sin(s.delta);
}

double homodyne_std(const HomodyneSetup& s) {
  validate(s);
  return std::sqrt(s.b_mag * s.b_mag + s.c_mag * s.c_mag);
}

double homodyne_sensitivity(const HomodyneSetup& s) {
  validate(s);
  if (s.b_mag == 0.0)
    throw ZeroSignal("phase sensitivity undefined at |b| = 0");
  double c = std::cos(s.delta);
  if (std::abs(c) <= 1e-12)
    throw DivergentSensitivity("sensitivity diverges at delta = +-pi/2");
  double ratio = s.c_mag / s.b_mag;
  return std::sqrt(1.0 + ratio * ratio) / (2.0 * s.c_mag * std::abs(c));
}

HomodyneStats homodyne_stats(const HomodyneSetup& s) {
  return {homodyne_mean(s), homodyne_std(s), homodyne_sensitivity(s)};
}

HomodyneSample simulate_homodyne(const HomodyneSetup& s, long trials,
                                 std::uint64_t seed, int workers) {
  validate(s);
  if (trials < 1000)
    throw InsufficientTrials("need at least 1000 trials");
  if (workers < 1) workers = 1;

  // 50:50 splitter on coherent inputs: the two outputs are coherent with
  // these mean photon numbers, so counts are independent Poisson.
  double base = 0.5 * (s.b_mag * s.b_mag + s.c_mag * s.c_mag);
  double cross = s.b_mag * s.c_mag * std::sin(s.delta);
  double lambda1 = base + cross;
  double lambda2 = base - cross;

  const long blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<long long> sum_d(blocks, 0), sum_d2(blocks, 0);

  auto run_block = [&](long blk) {
    long n = std::min(kBlockTrials, trials - blk * kBlockTrials);
    std::mt19937_64 rng(derive_seed(seed, std::uint64_t(blk)));
    std::poisson_distribution<long long> p1(lambda1), p2(lambda2);
    long long sd = 0, sd2 = 0;
    for (long t = 0; t < n; ++t) {
      long long d = p1(rng) - p2(rng);
      sd += d;
      sd2 += d * d;
    }
    sum_d[blk] = sd;
    sum_d2[blk] = sd2;
  };

  if (workers == 1 || blocks == 1) {
    for (long blk = 0; blk < blocks; ++blk) run_block(blk);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (long blk = w; blk < blocks; blk += workers) run_block(blk);
      });
    for (auto& t : pool) t.join();
  }

  // integer block sums merge exactly regardless of worker count
  long long total = 0, total2 = 0;
  for (long blk = 0; blk < blocks; ++blk) {
    total += sum_d[blk];
    total2 += sum_d2[blk];
  }
  HomodyneSample out;
  out.emp_mean = double(total) / double(trials);
  double var = double(total2) / double(trials) - out.emp_mean * out.emp_mean;
  out.emp_std = std::sqrt(std::max(var, 0.0));
  return out;
}

}  // namespace ampforge
