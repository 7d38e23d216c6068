#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "ampforge/states.hpp"

using namespace ampforge;

namespace {

PureState random_pure(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  v /= v.norm();
  return PureState(v);
}

DensityMatrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityMatrix((rho + rho.adjoint().eval()) / 2.0);
}

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  return (a + a.adjoint().eval()) / 2.0;
}

}  // namespace

TEST_CASE("coherent state construction") {
  SUBCASE("vacuum is the first basis vector") {
    PureState vac = make_coherent_state(0.0, 5);
    CHECK(vac.amplitudes()(0) == Complex(1.0, 0.0));
    CHECK(vac.amplitudes().tail(4).norm() == 0.0);
  }
  SUBCASE("mean photon number matches |alpha|^2") {
    PureState s = make_coherent_state(1.0, 20);
    CHECK(expectation(Observable::number(20), s) == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("truncation guard") {
    CHECK_THROWS_AS(make_coherent_state(3.0, 5), TruncationTooSmall);
    CHECK_THROWS_AS(make_coherent_state(1.0, 0), InvalidDim);
  }
  SUBCASE("default dim keeps the tail below 1e-8 up to |alpha| = 4") {
    for (double a : {0.5, 1.0, 2.0, 3.0, 4.0})
      CHECK_NOTHROW(make_coherent_state(Complex(a, 0.0)));
  }
}

TEST_CASE("expectation") {
  Observable n20 = Observable::number(20);
  CHECK(expectation(n20, make_coherent_state(0.0, 20)) == doctest::Approx(0.0));
  CHECK(expectation(n20, make_coherent_state(1.5, 20)) ==
        doctest::Approx(2.25).epsilon(1e-6));

  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  CHECK(expectation(Observable(z), DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(0.0));

  CHECK_THROWS_AS(expectation(Observable::number(3),
                              make_coherent_state(0.0, 5)),
                  DimensionMismatch);
}

TEST_CASE("fluctuation") {
  SUBCASE("eigenstate has zero fluctuation") {
    Vector v = Vector::Zero(4);
    v(2) = 1.0;
    CHECK(fluctuation(Observable::number(4), PureState(v)) ==
          doctest::Approx(0.0).epsilon(1e-10));
  }
  SUBCASE("coherent photon-number fluctuation is Poissonian") {
    CHECK(fluctuation(Observable::number(40), make_coherent_state(2.0, 40)) ==
          doctest::Approx(2.0).epsilon(1e-6));
  }
  SUBCASE("vacuum quadrature variance is 1/2") {
    CHECK(fluctuation(Observable::quadrature_q(20),
                      make_coherent_state(0.0, 20)) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
  }
}

TEST_CASE("overlap") {
  PureState a = make_coherent_state(0.0, 30);
  PureState b = make_coherent_state(1.0, 30);
  CHECK(overlap(a, a) == doctest::Approx(1.0));
  CHECK(overlap(a, b) == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  CHECK(overlap(mm, mm) == doctest::Approx(0.5));
}

TEST_CASE("coherent overlap closed form e^{-|a-b|^2}") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Complex alpha(u(rng), u(rng)), beta(u(rng), u(rng));
    alpha *= 0.7;  // keep |alpha| <= 2
    beta *= 0.7;
    double expect = std::exp(-std::norm(alpha - beta));
    CHECK(overlap(make_coherent_state(alpha, 40),
                  make_coherent_state(beta, 40)) ==
          doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("overlap equals the eigenbasis double sum") {
  // Tr(rho sigma) = sum_{f,g} <a_f|rho|a_g><a_g|sigma|a_f> in any
  // Hermitian eigenbasis.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    int dim = 2 + int(rng() % 7);
    DensityMatrix rho = random_density(dim, rng);
    DensityMatrix sig = random_density(dim, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(random_hermitian(dim, rng));
    const Matrix& u = es.eigenvectors();
    Matrix r = u.adjoint() * rho.matrix() * u;
    Matrix s = u.adjoint() * sig.matrix() * u;
    Complex sum = 0.0;
    for (int f = 0; f < dim; ++f)
      for (int g = 0; g < dim; ++g) sum += r(f, g) * s(g, f);
    CHECK(overlap(rho, sig) == doctest::Approx(sum.real()).epsilon(1e-8));
    CHECK(std::abs(sum.imag()) < 1e-10);
  }
}

TEST_CASE("trace distance") {
  Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  DensityMatrix p0 = DensityMatrix::from_pure(PureState(e0));
  DensityMatrix p1 = DensityMatrix::from_pure(PureState(e1));
  CHECK(trace_distance(p0, p0) == doctest::Approx(0.0));
  CHECK(trace_distance(p0, p1) == doctest::Approx(1.0));
  CHECK(trace_distance(p0, DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(0.5));
}

TEST_CASE("trace distance is a metric on a random corpus") {
  std::mt19937_64 rng(3);
  std::vector<DensityMatrix> corpus;
  for (int i = 0; i < 6; ++i) corpus.push_back(random_density(4, rng));
  for (const auto& a : corpus)
    for (const auto& b : corpus) {
      CHECK(trace_distance(a, b) == trace_distance(b, a));
      for (const auto& c : corpus)
        CHECK(trace_distance(a, c) <=
              trace_distance(a, b) + trace_distance(b, c) + 1e-10);
    }
}

TEST_CASE("gram matrix") {
  SUBCASE("orthonormal set gives the identity") {
    std::vector<PureState> basis;
    for (int i = 0; i < 3; ++i) {
      Vector v = Vector::Zero(3);
      v(i) = 1.0;
      basis.emplace_back(v);
    }
    GramMatrix g = gram_matrix(basis);
    CHECK((g.entries - Matrix::Identity(3, 3)).norm() < 1e-12);
  }
  SUBCASE("two-state example") {
    Vector v0 = Vector::Zero(2), v1(2);
    v0(0) = 1.0;
    v1 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    GramMatrix g = gram_matrix({PureState(v0), PureState(v1)});
    CHECK(std::abs(g.entries(0, 0) - 1.0) < 1e-10);
    CHECK(std::abs(g.entries(0, 1) - 1.0 / std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(g.entries(1, 0) - 1.0 / std::sqrt(2.0)) < 1e-10);
  }
  SUBCASE("always PSD; nonsingular for independent sets") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<PureState> set;
      for (int i = 0; i < 4; ++i) set.push_back(random_pure(8, rng));
      GramMatrix g = gram_matrix(set);
      CHECK(g.min_eigenvalue() > -1e-10);
      CHECK(g.min_eigenvalue() > 1e-12);  // random sets are independent
    }
  }
  SUBCASE("empty set rejected") {
    CHECK_THROWS_AS(gram_matrix({}), EmptySet);
  }
}

TEST_CASE("pure state fluctuation identity") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    PureState psi = random_pure(6, rng);
    Observable a = Observable(random_hermitian(6, rng));
    CHECK(overlap(psi, psi) == doctest::Approx(1.0).epsilon(1e-12));
    double fl = fluctuation(a, psi);
    double direct =
        expectation(a.squared(), psi) - std::pow(expectation(a, psi), 2);
    CHECK(fl * fl == doctest::Approx(direct).epsilon(1e-10));
  }
}
