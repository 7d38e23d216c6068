#include "ampforge/gram.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "ampforge/rng.hpp"

namespace ampforge {

namespace {

double min_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Complex phase_of(Complex z) {
  double a = std::abs(z);
  return a > 0.0 ? z / a : Complex(1.0, 0.0);
}

void require_square_match(int a, int b) {
  if (a != b)
    throw DimensionMismatch("matrix sizes differ: " + std::to_string(a) +
                            " vs " + std::to_string(b));
}

}  // namespace

OmegaMatrix OmegaMatrix::make(Matrix entries) {
  const int n = static_cast<int>(entries.rows());
  if (n < 1 || entries.cols() != n)
    throw DimensionMismatch("omega must be square");
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw InvalidState("omega is not Hermitian within 1e-10");
  OmegaMatrix o;
  o.prob_diag.resize(n);
  for (int i = 0; i < n; ++i) {
    double p = entries(i, i).real();
    if (p < -1e-10 || p > 1.0 + 1e-10)
      throw InvalidProbability("omega diagonal entry outside [0,1]");
    o.prob_diag(i) = p;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(entries(i, j)) >
          std::sqrt(o.prob_diag(i) * o.prob_diag(j)) + 1e-10)
        throw InvalidState("omega entry violates Cauchy-Schwarz bound");
  o.entries = std::move(entries);
  return o;
}

Matrix residual_k(const GramMatrix& g_pi, const GramMatrix& g_xi,
                  const OmegaMatrix& omega) {
  require_square_match(g_pi.size(), g_xi.size());
  require_square_match(g_pi.size(), omega.size());
  Matrix k = g_pi.entries - g_xi.entries.cwiseProduct(omega.entries);
  return ((k + k.adjoint().eval()) / 2.0).eval();  // symmetrize round-off
}

FeasibilityCertificate check_feasibility(const GramMatrix& g_pi,
                                         const GramMatrix& g_xi,
                                         const OmegaMatrix& omega,
                                         double tol) {
  FeasibilityCertificate cert;
  cert.omega = omega;
  cert.residual_k = residual_k(g_pi, g_xi, omega);
  cert.min_eig_omega = min_eig(omega.entries);
  cert.min_eig_k = min_eig(cert.residual_k);
  cert.tol = tol;
  // tolerance relative to matrix trace
  double scale = std::max(1.0, omega.entries.trace().real());
  bool diag_ok = true;
  for (int i = 0; i < omega.size(); ++i)
    diag_ok &= std::abs(omega.entries(i, i).real() - omega.prob_diag(i)) <=
               1e-10;
  cert.feasible = diag_ok && cert.min_eig_omega >= -tol * scale &&
                  cert.min_eig_k >= -tol * scale;
  return cert;
}

FeasibilityCertificate solve_two_state(Complex s, Complex t, double p) {
  if (std::abs(s) > 1.0 + 1e-12 || std::abs(t) > 1.0 + 1e-12)
    throw InvalidProbability("overlaps must have modulus <= 1");
  if (p < 0.0 || p > 1.0)
    throw InvalidProbability("success probability outside [0,1]");

  const double as = std::abs(s), at = std::abs(t);
  Complex omega12;
  if (at * p > 1e-15) {
    omega12 = p * std::min(1.0, as / (at * p)) * phase_of(s / t);
  } else {
    omega12 = p * phase_of(s);
  }
  Matrix om(2, 2);
  om << Complex(p), omega12, std::conj(omega12), Complex(p);

  GramMatrix g_pi, g_xi;
  g_pi.entries.resize(2, 2);
  g_pi.entries << Complex(1), s, std::conj(s), Complex(1);
  g_xi.entries.resize(2, 2);
  g_xi.entries << Complex(1), t, std::conj(t), Complex(1);

  auto cert = check_feasibility(g_pi, g_xi, OmegaMatrix::make(std::move(om)));
  cert.method = FeasibilityMethod::AnalyticTwoState;
  // analytic criterion: max(|s| - |t| p, 0) <= 1 - p
  cert.feasible = std::max(as - at * p, 0.0) <= 1.0 - p + 1e-12;
  return cert;
}

MaxProbResult max_success_probability(Complex s, Complex t) {
  const double as = std::abs(s), at = std::abs(t);
  if (as > 1.0 + 1e-12 || at > 1.0 + 1e-12)
    throw InvalidProbability("overlaps must have modulus <= 1");
  if (at >= 1.0 - 1e-15 && as < 1.0 - 1e-15) return {0.0, true};
  if (as <= at) return {1.0, false};
  return {std::min(1.0, (1.0 - as) / (1.0 - at)), false};
}

namespace {

// Off-diagonal parameterization of Hermitian Omega with fixed diagonal.
struct OmegaParam {
  int n;
  Eigen::VectorXd p;
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> caps;  // sqrt(p_i p_j)

  explicit OmegaParam(const Eigen::VectorXd& probs)
      : n(static_cast<int>(probs.size())), p(probs) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        pairs.emplace_back(i, j);
        caps.push_back(std::sqrt(p(i) * p(j)));
      }
  }

  int dof() const { return 2 * static_cast<int>(pairs.size()); }

  void project(Eigen::VectorXd& x) const {
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      double re = x(2 * k), im = x(2 * k + 1);
      double mag = std::hypot(re, im);
      if (mag > caps[k] && mag > 0.0) {
        x(2 * k) = re * caps[k] / mag;
        x(2 * k + 1) = im * caps[k] / mag;
      }
    }
  }

  Matrix to_matrix(const Eigen::VectorXd& x) const {
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = p(i);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      Complex z(x(2 * k), x(2 * k + 1));
      m(pairs[k].first, pairs[k].second) = z;
      m(pairs[k].second, pairs[k].first) = std::conj(z);
    }
    return m;
  }
};

double penalty(const Matrix& g_pi, const Matrix& g_xi, const Matrix& omega) {
  Matrix k = g_pi - g_xi.cwiseProduct(omega);
  k = (k + k.adjoint().eval()) / 2.0;
  double lo = min_eig(omega);
  double lk = min_eig(k);
  double a = std::max(0.0, -lo);
  double b = std::max(0.0, -lk);
  return a * a + b * b;
}

}  // namespace

SearchResult search_omega(const GramMatrix& g_pi, const GramMatrix& g_xi,
                          const Eigen::VectorXd& p, int restarts,
                          std::uint64_t seed) {
  const int n = g_pi.size();
  require_square_match(n, g_xi.size());
  if (n < 2 || n > 8)
    throw NTooLarge("search_omega supports 2 <= N <= 8, got " +
                    std::to_string(n));
  if (p.size() != n) throw DimensionMismatch("probability vector length != N");
  for (int i = 0; i < n; ++i)
    if (p(i) < 0.0 || p(i) > 1.0)
      throw InvalidProbability("success probability outside [0,1]");

  OmegaParam param(p);
  const int dof = param.dof();
  auto phi = [&](const Eigen::VectorXd& x) {
    return penalty(g_pi.entries, g_xi.entries, param.to_matrix(x));
  };

  double best_phi = std::numeric_limits<double>::infinity();
  double best_fro = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x = Eigen::VectorXd::Zero(dof);

  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dof);
    if (r == 0) {
      // phase-aligned start: drive K_ij toward zero where possible
      for (std::size_t k = 0; k < param.pairs.size(); ++k) {
        auto [i, j] = param.pairs[k];
        Complex gx = g_xi.entries(i, j);
        if (std::abs(gx) > 1e-12) {
          Complex z = g_pi.entries(i, j) / gx;
          double mag = std::min(std::abs(z), param.caps[k]);
          z = phase_of(z) * mag;
          x(2 * k) = z.real();
          x(2 * k + 1) = z.imag();
        }
      }
    } else if (r > 1) {
      std::mt19937_64 rng(derive_seed(seed, std::uint64_t(r)));
      std::uniform_real_distribution<double> u01(0.0, 1.0);
      for (std::size_t k = 0; k < param.pairs.size(); ++k) {
        double mag = u01(rng) * param.caps[k];
        double ang = 2.0 * M_PI * u01(rng);
        x(2 * k) = mag * std::cos(ang);
        x(2 * k + 1) = mag * std::sin(ang);
      }
    }
    param.project(x);
    double fx = phi(x);

    // compass pattern search with shrinking step
    double step = 0.25;
    int sweeps = 0;
    while (fx > 0.0 && step > 1e-10 && sweeps < 400) {
      bool improved = false;
      for (int c = 0; c < dof; ++c) {
        for (double dir : {1.0, -1.0}) {
          Eigen::VectorXd y = x;
          y(c) += dir * step;
          param.project(y);
          double fy = phi(y);
          if (fy < fx) {
            x = std::move(y);
            fx = fy;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
      ++sweeps;
    }

    double fro = param.to_matrix(x).norm();
    if (fx < best_phi - 1e-18 ||
        (std::abs(fx - best_phi) <= 1e-18 && fro < best_fro)) {
      best_phi = fx;
      best_fro = fro;
      best_x = x;
    }
    if (best_phi == 0.0 && r >= 1) break;  // feasible point found
  }

  SearchResult result;
  result.best_penalty = best_phi;
  result.best_omega = param.to_matrix(best_x);
  if (best_phi < 1e-12) {
    auto cert = check_feasibility(g_pi, g_xi,
                                  OmegaMatrix::make(result.best_omega));
    cert.method = FeasibilityMethod::PenaltySearch;
    result.certificate = std::move(cert);
  }
  return result;
}

}  // namespace ampforge
