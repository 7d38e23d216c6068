#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "ampforge/errors.hpp"

namespace ampforge {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kHermTol = 1e-10;

// Normalized complex vector in a truncated Fock (or abstract) basis.
class PureState {
 public:
  explicit PureState(Vector amplitudes, std::string label = "");

  const Vector& amplitudes() const { return amps_; }
  int dim() const { return static_cast<int>(amps_.size()); }
  const std::string& label() const { return label_; }

 private:
  Vector amps_;
  std::string label_;
};

// Hermitian, trace-one, positive semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int dim);
  // Thermal state with mean photon number nbar, truncated and renormalized.
  static DensityMatrix thermal(double nbar, int dim);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Matrix m_;
};

// Hermitian matrix with expectation/fluctuation semantics.
class Observable {
 public:
  explicit Observable(Matrix m);

  static Observable number(int dim);
  static Observable quadrature_q(int dim);  // (a + a^dag)/sqrt(2)
  static Observable quadrature_p(int dim);  // (a - a^dag)/(i sqrt(2))

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  Observable squared() const;
  double max_eigenvalue() const;

 private:
  Matrix m_;
};

struct GramMatrix {
  Matrix entries;  // entries(i,j) = <psi_j|psi_i>
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(entries.rows()); }
  double min_eigenvalue() const;
};

// Annihilation operator on the truncated Fock space; a|n> = sqrt(n)|n-1>.
Matrix annihilation(int dim);

int default_coherent_dim(Complex alpha);
PureState make_coherent_state(Complex alpha, int dim);
PureState make_coherent_state(Complex alpha);  // uses default_coherent_dim

double expectation(const Observable& obs, const DensityMatrix& rho);
double expectation(const Observable& obs, const PureState& psi);
double fluctuation(const Observable& obs, const DensityMatrix& rho);
double fluctuation(const Observable& obs, const PureState& psi);

// Tr(rho_a rho_b); |<a|b>|^2 for pure inputs.
double overlap(const DensityMatrix& a, const DensityMatrix& b);
double overlap(const PureState& a, const PureState& b);
Complex inner(const PureState& a, const PureState& b);  // <a|b>

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

GramMatrix gram_matrix(const std::vector<PureState>& states);

}  // namespace ampforge
