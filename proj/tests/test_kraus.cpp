#include <doctest.h>

#include <cmath>
#include <random>

#include "ampforge/kraus.hpp"

using namespace ampforge;

namespace {

Vector basis(int dim, int k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

Matrix random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ();
}

}  // namespace

TEST_CASE("dual_basis") {
  SUBCASE("orthonormal set is self-dual") {
    std::vector<PureState> set = {PureState(basis(3, 0)),
                                  PureState(basis(3, 1))};
    DualBasis d = dual_basis(set);
    REQUIRE(d.size() == 2);
    CHECK((d.duals[0] - basis(3, 0)).norm() < 1e-12);
    CHECK((d.duals[1] - basis(3, 1)).norm() < 1e-12);
    CHECK(std::abs(d.gammas(0) - Complex(1.0)) < 1e-12);
  }
  SUBCASE("non-orthogonal pair is biorthogonal within 1e-12") {
    Vector v1(2);
    v1 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    std::vector<PureState> set = {PureState(basis(2, 0)), PureState(v1)};
    DualBasis d = dual_basis(set);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Complex ip = d.duals[i].dot(set[j].amplitudes());
        CHECK(std::abs(ip - (i == j ? Complex(1.0) : Complex(0.0))) < 1e-12);
      }
    // dual of |0> must reject |+>: direction (1,-1)
    CHECK(std::abs(d.duals[0](0) / d.duals[0](1) + 1.0) < 1e-10);
  }
  SUBCASE("dependent set rejected") {
    std::vector<PureState> set = {PureState(basis(2, 0)),
                                  PureState(basis(2, 0))};
    CHECK_THROWS_AS(dual_basis(set), LinearlyDependentSet);
  }
}

TEST_CASE("factor_omega") {
  SUBCASE("identity factors to an isometry") {
    Matrix c = factor_omega(OmegaMatrix::make(Matrix::Identity(2, 2)));
    CHECK((c.adjoint() * c - Matrix::Identity(2, 2)).norm() < 1e-12);
  }
  SUBCASE("all-ones is rank one") {
    Matrix c = factor_omega(OmegaMatrix::make(Matrix::Ones(2, 2)));
    CHECK(c.rows() == 1);
    CHECK(std::abs(std::abs(c(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(c(0, 0) - c(0, 1)) < 1e-12);
  }
  SUBCASE("indefinite omega rejected") {
    // satisfies the entrywise Cauchy-Schwarz bound but is not PSD
    Matrix m(3, 3);
    m << 1, 1, 1, 1, 1, -1, 1, -1, 1;
    CHECK_THROWS_AS(factor_omega(OmegaMatrix::make(m)), NotPSD);
  }
}

TEST_CASE("build_kraus basics") {
  SUBCASE("single-state identity map") {
    std::vector<PureState> set = {PureState(basis(2, 0))};
    Matrix c = Matrix::Ones(1, 1);
    KrausSet k = build_kraus(c, dual_basis(set), set);
    REQUIRE(k.num_operators() == 1);
    Matrix expect = Matrix::Zero(2, 2);
    expect(0, 0) = 1.0;
    CHECK((k.operators[0] - expect).norm() < 1e-12);
  }
  SUBCASE("action contract on a non-orthogonal pair") {
    Vector v1(2);
    v1 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    std::vector<PureState> inputs = {PureState(basis(2, 0)), PureState(v1)};
    std::vector<PureState> targets = {PureState(basis(2, 0)),
                                      PureState(basis(2, 1))};
    double p = 0.25;
    Matrix c = factor_omega(OmegaMatrix::make(Matrix::Identity(2, 2) * p));
    KrausSet k = build_kraus(c, dual_basis(inputs), targets);
    for (int kk = 0; kk < k.num_operators(); ++kk)
      for (int i = 0; i < 2; ++i) {
        Vector out = k.operators[kk] * inputs[i].amplitudes();
        Vector want = c(kk, i) * targets[i].amplitudes();
        CHECK((out - want).norm() < 1e-10);
      }
  }
}

TEST_CASE("coherent pair synthesis round trip") {
  int dim = 30;
  double p = 0.2;
  std::vector<PureState> inputs = {make_coherent_state(0.0, dim),
                                   make_coherent_state(0.5, dim)};
  std::vector<PureState> targets = {make_coherent_state(0.0, dim),
                                    make_coherent_state(1.0, dim)};
  Complex s = inner(inputs[1], inputs[0]);
  Complex t = inner(targets[1], targets[0]);
  auto cert = solve_two_state(s, t, p);
  REQUIRE(cert.feasible);

  Matrix c = factor_omega(cert.omega);
  DualBasis duals = dual_basis(inputs);
  KrausSet kraus = build_kraus(c, duals, targets);

  auto spec = AmplificationSpec::make(
      inputs, targets, Eigen::Vector2d(1.0, 2.0),
      Eigen::Vector2d::Constant(p), {Observable::quadrature_q(dim)});
  auto report = verify_kraus(kraus, spec);
  CHECK(report.all_passed);
  for (const auto& check : report.per_state) {
    CHECK(check.success_prob == doctest::Approx(p).epsilon(1e-8));
    CHECK(check.fidelity >= 1.0 - 1e-6);
  }
  CHECK(report.completeness_margin > -1e-9);

  SUBCASE("C^dag C reconstructs omega up to transpose") {
    CHECK(((c.adjoint() * c).transpose() - cert.omega.entries).norm() < 1e-9);
  }
  SUBCASE("gram consistency against the certificate K") {
    Matrix gp(2, 2), gx(2, 2);
    gp << 1.0, s, std::conj(s), 1.0;
    gx << 1.0, t, std::conj(t), 1.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Complex acc = 0.0;
        for (int kk = 0; kk < c.rows(); ++kk)
          acc += std::conj(c(kk, j)) * c(kk, i) * gx(i, j);
        CHECK(std::abs(gp(i, j) - acc - cert.residual_k(i, j)) < 1e-8);
      }
  }
  SUBCASE("unitary freedom leaves observables invariant") {
    std::mt19937_64 rng(31);
    Matrix u = random_unitary(int(c.rows()), rng);
    KrausSet rotated = build_kraus(u * c, duals, targets);
    CHECK((rotated.completeness_sum() - kraus.completeness_sum()).norm() <
          1e-9);
    auto rreport = verify_kraus(rotated, spec);
    for (size_t i = 0; i < rreport.per_state.size(); ++i)
      CHECK(rreport.per_state[i].success_prob ==
            doctest::Approx(report.per_state[i].success_prob).epsilon(1e-9));
  }
  SUBCASE("trace non-increase on random states in the span") {
    std::mt19937_64 rng(37);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      Complex c0(gauss(rng), gauss(rng)), c1(gauss(rng), gauss(rng));
      Vector psi = c0 * inputs[0].amplitudes() + c1 * inputs[1].amplitudes();
      psi /= psi.norm();
      Matrix rho = psi * psi.adjoint();
      Complex tr = 0.0;
      for (const Matrix& m : kraus.operators)
        tr += (m * rho * m.adjoint()).trace();
      CHECK(tr.real() <= 1.0 + 1e-9);
      CHECK(std::abs(tr.imag()) < 1e-12);
    }
  }
}

TEST_CASE("verify_kraus identity map") {
  int dim = 4;
  std::vector<PureState> set = {PureState(basis(dim, 0)),
                                PureState(basis(dim, 1))};
  Matrix c = factor_omega(OmegaMatrix::make(Matrix::Identity(2, 2)));
  KrausSet k = build_kraus(c, dual_basis(set), set);
  auto spec = AmplificationSpec::make(set, set, Eigen::Vector2d(1.0, 1.0),
                                      Eigen::Vector2d(1.0, 1.0),
                                      {Observable::number(dim)});
  auto report = verify_kraus(k, spec);
  CHECK(report.all_passed);
  for (const auto& check : report.per_state) {
    CHECK(check.success_prob == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(check.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(std::abs(report.completeness_margin) < 1e-12);
}
