#include "ampforge/states.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace ampforge {

namespace {

void require_same_dim(int a, int b) {
  if (a != b)
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a) +
                            " vs " + std::to_string(b));
}

void require_hermitian(const Matrix& m, const char* what) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw InvalidState(std::string(what) + " is not Hermitian within 1e-10");
}

}  // namespace

PureState::PureState(Vector amplitudes, std::string label)
    : amps_(std::move(amplitudes)), label_(std::move(label)) {
  if (amps_.size() < 1) throw InvalidDim("pure state needs dim >= 1");
  double n = amps_.norm();
  if (std::abs(n - 1.0) > 1e-10)
    throw InvalidState("pure state norm " + std::to_string(n) +
                       " deviates from 1 beyond 1e-10");
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() < 1 || m_.rows() != m_.cols())
    throw InvalidDim("density matrix must be square with dim >= 1");
  require_hermitian(m_, "density matrix");
  if (std::abs(m_.trace().real() - 1.0) > 1e-10 ||
      std::abs(m_.trace().imag()) > 1e-10)
    throw InvalidState("density matrix trace deviates from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw InvalidState("density matrix has eigenvalue below -1e-9");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw InvalidDim("dim must be >= 1");
  return DensityMatrix(Matrix::Identity(dim, dim) / double(dim));
}

DensityMatrix DensityMatrix::thermal(double nbar, int dim) {
  if (dim < 1) throw InvalidDim("dim must be >= 1");
  if (nbar < 0) throw InvalidState("mean photon number must be >= 0");
  Eigen::VectorXd p(dim);
  double ratio = nbar / (nbar + 1.0);
  for (int n = 0; n < dim; ++n)
    p(n) = std::pow(ratio, n) / (nbar + 1.0);
  p /= p.sum();
  Matrix m = Matrix::Zero(dim, dim);
  m.diagonal() = p.cast<Complex>();
  return DensityMatrix(m);
}

Observable::Observable(Matrix m) : m_(std::move(m)) {
  if (m_.rows() < 1 || m_.rows() != m_.cols())
    throw InvalidDim("observable must be square with dim >= 1");
  require_hermitian(m_, "observable");
}

Matrix annihilation(int dim) {
  if (dim < 1) throw InvalidDim("dim must be >= 1");
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Observable Observable::number(int dim) {
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = double(k);
  return Observable(n);
}

Observable Observable::quadrature_q(int dim) {
  Matrix a = annihilation(dim);
  return Observable((a + a.adjoint().eval()) / std::sqrt(2.0));
}

Observable Observable::quadrature_p(int dim) {
  Matrix a = annihilation(dim);
  Matrix m = (a - a.adjoint().eval()) / Complex(0.0, std::sqrt(2.0));
  // force exact Hermiticity against round-off
  return Observable(((m + m.adjoint().eval()) / 2.0).eval());
}

Observable Observable::squared() const { return Observable(m_ * m_); }

double Observable::max_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double GramMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

int default_coherent_dim(Complex alpha) {
  double a = std::abs(alpha);
  return std::max(20, int(std::ceil(a * a + 6.0 * a + 10.0)));
}

PureState make_coherent_state(Complex alpha, int dim) {
  if (dim < 1) throw InvalidDim("dim must be >= 1");
  double lam = std::norm(alpha);  // |alpha|^2
  // Poisson head mass, computed in linear space.
  double head = 0.0, term = std::exp(-lam);
  for (int n = 0; n < dim; ++n) {
    head += term;
    term *= lam / double(n + 1);
  }
  if (1.0 - head > 1e-8)
    throw TruncationTooSmall("coherent tail mass " +
                             std::to_string(1.0 - head) + " exceeds 1e-8");
  Vector v(dim);
  Complex c = std::exp(-lam / 2.0);
  for (int n = 0; n < dim; ++n) {
    v(n) = c;
    c *= alpha / std::sqrt(double(n + 1));
  }
  v /= v.norm();
  return PureState(std::move(v));
}

PureState make_coherent_state(Complex alpha) {
  return make_coherent_state(alpha, default_coherent_dim(alpha));
}

double expectation(const Observable& obs, const DensityMatrix& rho) {
  require_same_dim(obs.dim(), rho.dim());
  Complex tr = (obs.matrix() * rho.matrix()).trace();
  if (std::abs(tr.imag()) > 1e-10)
    throw InvalidState("expectation has imaginary part beyond 1e-10");
  return tr.real();
}

double expectation(const Observable& obs, const PureState& psi) {
  require_same_dim(obs.dim(), psi.dim());
  Complex v = psi.amplitudes().adjoint() * obs.matrix() * psi.amplitudes();
  if (std::abs(v.imag()) > 1e-10)
    throw InvalidState("expectation has imaginary part beyond 1e-10");
  return v.real();
}

namespace {
double variance_to_std(double var) {
  if (var < -1e-12)
    throw NegativeVariance("variance " + std::to_string(var) +
                           " below -1e-12");
  return std::sqrt(std::max(var, 0.0));
}
}  // namespace

double fluctuation(const Observable& obs, const DensityMatrix& rho) {
  double m1 = expectation(obs, rho);
  double m2 = expectation(obs.squared(), rho);
  return variance_to_std(m2 - m1 * m1);
}

double fluctuation(const Observable& obs, const PureState& psi) {
  double m1 = expectation(obs, psi);
  double m2 = expectation(obs.squared(), psi);
  return variance_to_std(m2 - m1 * m1);
}

Complex inner(const PureState& a, const PureState& b) {
  require_same_dim(a.dim(), b.dim());
  return a.amplitudes().dot(b.amplitudes());  // Eigen dot conjugates a
}

double overlap(const PureState& a, const PureState& b) {
  return std::norm(inner(a, b));
}

double overlap(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim());
  Complex tr = (a.matrix() * b.matrix()).trace();
  return tr.real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim());
  Matrix diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

GramMatrix gram_matrix(const std::vector<PureState>& states) {
  if (states.empty()) throw EmptySet("gram_matrix of empty set");
  const int n = static_cast<int>(states.size());
  GramMatrix g;
  g.entries.resize(n, n);
  g.labels.reserve(n);
  for (const auto& s : states) {
    require_same_dim(states.front().dim(), s.dim());
    g.labels.push_back(s.label());
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g.entries(i, j) = inner(states[j], states[i]);  // <psi_j|psi_i>
  return g;
}

}  // namespace ampforge
