#include <doctest.h>

#include <cmath>

#include "ampforge/homodyne.hpp"

using namespace ampforge;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("analytic homodyne statistics") {
  SUBCASE("zero phase gives zero mean") {
    CHECK(homodyne_mean({1.0, 10.0, 0.0}) == doctest::Approx(0.0));
  }
  SUBCASE("reference point b=1, c=10, delta=pi/6") {
    HomodyneSetup s{1.0, 10.0, kPi / 6.0};
    CHECK(homodyne_mean(s) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(homodyne_std(s) == doctest::Approx(std::sqrt(101.0)).epsilon(1e-12));
    CHECK(homodyne_sensitivity(s) ==
          doctest::Approx(std::sqrt(101.0) / (20.0 * std::cos(kPi / 6.0)))
              .epsilon(1e-12));
    CHECK(homodyne_sensitivity(s) == doctest::Approx(0.5802).epsilon(2e-4));
  }
  SUBCASE("amplifying the signal improves sensitivity") {
    HomodyneSetup amp{2.0, 10.0, kPi / 6.0};
    CHECK(homodyne_sensitivity(amp) < homodyne_sensitivity({1.0, 10.0,
                                                            kPi / 6.0}));
  }
  SUBCASE("error cases") {
    CHECK_THROWS_AS(homodyne_sensitivity({0.0, 10.0, 0.3}), ZeroSignal);
    CHECK_THROWS_AS(homodyne_sensitivity({1.0, 10.0, kPi / 2.0}),
                    DivergentSensitivity);
  }
  SUBCASE("mean odd in delta, std independent of delta") {
    for (double d : {0.1, 0.5, 1.2}) {
      CHECK(homodyne_mean({1.0, 5.0, -d}) ==
            doctest::Approx(-homodyne_mean({1.0, 5.0, d})));
      CHECK(homodyne_std({1.0, 5.0, d}) ==
            doctest::Approx(homodyne_std({1.0, 5.0, 0.0})));
    }
  }
  SUBCASE("sensitivity strictly decreasing in b") {
    double prev = 1e300;
    for (double b = 0.2; b <= 4.0; b += 0.2) {
      double s = homodyne_sensitivity({b, 10.0, kPi / 6.0});
      CHECK(s < prev);
      prev = s;
    }
  }
}

TEST_CASE("homodyne_stats bundles the three formulas") {
  HomodyneSetup s{1.5, 8.0, 0.4};
  auto st = homodyne_stats(s);
  CHECK(st.mean == doctest::Approx(homodyne_mean(s)));
  CHECK(st.stddev == doctest::Approx(homodyne_std(s)));
  CHECK(st.sensitivity == doctest::Approx(homodyne_sensitivity(s)));
}

TEST_CASE("simulate_homodyne") {
  HomodyneSetup s{1.0, 10.0, kPi / 6.0};
  SUBCASE("matches analytic statistics at 10^6 trials") {
    auto r = simulate_homodyne(s, 1000000, 42);
    CHECK(std::abs(r.emp_mean - 10.0) < 0.051);
    CHECK(std::abs(r.emp_std - std::sqrt(101.0)) < 0.02 * std::sqrt(101.0));
  }
  SUBCASE("dark port stays near zero") {
    auto r = simulate_homodyne({0.0, 10.0, 0.7}, 100000, 7);
    CHECK(std::abs(r.emp_mean) < 5.0 * r.emp_std / std::sqrt(100000.0));
  }
  SUBCASE("deterministic for a fixed seed") {
    auto a = simulate_homodyne(s, 50000, 99);
    auto b = simulate_homodyne(s, 50000, 99);
    CHECK(a.emp_mean == b.emp_mean);
    CHECK(a.emp_std == b.emp_std);
  }
  SUBCASE("independent of worker count") {
    auto one = simulate_homodyne(s, 200000, 5, 1);
    auto four = simulate_homodyne(s, 200000, 5, 4);
    CHECK(one.emp_mean == four.emp_mean);
    CHECK(one.emp_std == four.emp_std);
  }
  SUBCASE("trial floor enforced") {
    CHECK_THROWS_AS(simulate_homodyne(s, 500, 1), InsufficientTrials);
  }
  SUBCASE("5-sigma agreement across a (b, delta) grid") {
    int fails = 0;
    for (double b : {0.5, 1.0, 2.0, 4.0})
      for (double d : {-1.0, -0.4, 0.0, 0.4, 1.0}) {
        HomodyneSetup g{b, 10.0, d};
        auto r = simulate_homodyne(g, 100000, 1234);
        if (std::abs(r.emp_mean - homodyne_mean(g)) >
            5.0 * r.emp_std / std::sqrt(100000.0))
          ++fails;
      }
    CHECK(fails == 0);
  }
}
