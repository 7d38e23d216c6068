#include "ampforge/gaussian.hpp"

#include <cmath>

namespace ampforge {

namespace {

constexpr double kZeroAmplitude = 1e-12;

void require_aligned(std::size_t n_states, Eigen::Index n_gains) {
  if (static_cast<Eigen::Index>(n_states) != n_gains)
    throw LengthMismatch("states and gains must have the same length");
}

}  // namespace

GaussianState GaussianState::vacuum() { return GaussianState{}; }

GaussianState GaussianState::coherent(Complex alpha) {
  GaussianState g;
  g.d << std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag();
  return g;
}

GaussianState GaussianState::thermal(double nbar) {
  if (nbar < 0) throw InvalidParameters("mean photon number must be >= 0");
  GaussianState g;
  g.gamma = (2.0 * nbar + 1.0) * Eigen::Matrix2d::Identity();
  return g;
}

GaussianState GaussianState::make(Eigen::Vector2d d, Eigen::Matrix2d gamma,
                                  std::string label) {
  if (std::abs(gamma(0, 1) - gamma(1, 0)) > 1e-12)
    throw InvalidState("covariance must be symmetric within 1e-12");
  if (gamma.determinant() < 1.0 - 1e-9)
    throw InvalidState("covariance violates the uncertainty bound det >= 1");
  GaussianState g;
  g.d = std::move(d);
  g.gamma = std::move(gamma);
  g.label = std::move(label);
  return g;
}

GaussianState moments_from_fock(const DensityMatrix& rho) {
  const int dim = rho.dim();
  if (dim >= 2) {
    double boundary = rho.matrix()(dim - 1, dim - 1).real() +
                      rho.matrix()(dim - 2, dim - 2).real();
    if (boundary >= 1e-8)
      throw TruncationBoundary(
          "top-2 Fock levels hold mass " + std::to_string(boundary) +
          "; enlarge truncation before extracting moments");
  }
  Observable q = Observable::quadrature_q(dim);
  Observable p = Observable::quadrature_p(dim);
  GaussianState g;
  g.d << expectation(q, rho), expectation(p, rho);
  Matrix qm = q.matrix(), pm = p.matrix();
  auto anti = [&](const Matrix& a, const Matrix& b) {
    return ((a * b + b * a) * rho.matrix()).trace().real();
  };
  g.gamma(0, 0) = anti(qm, qm) - 2.0 * g.d(0) * g.d(0);
  g.gamma(1, 1) = anti(pm, pm) - 2.0 * g.d(1) * g.d(1);
  g.gamma(0, 1) = g.gamma(1, 0) = anti(qm, pm) - 2.0 * g.d(0) * g.d(1);
  return g;
}

double wigner(const GaussianState& g, double q, double p) {
  double det = g.gamma.determinant();
  if (det <= 0.0) throw SingularCovariance("covariance is singular");
  Eigen::Vector2d x(q, p);
  Eigen::Vector2d dx = x - g.d;
  double quad = dx.dot(g.gamma.inverse() * dx);
  return std::exp(-quad) / (M_PI * std::sqrt(det));
}

double wigner_overlap(const GaussianState& a, const GaussianState& b) {
  Eigen::Matrix2d sum = a.gamma + b.gamma;
  double det = sum.determinant();
  if (det <= 0.0) throw SingularCovariance("covariance sum is singular");
  Eigen::Vector2d dd = a.d - b.d;
  return 2.0 / std::sqrt(det) * std::exp(-dd.dot(sum.inverse() * dd));
}

PhasePoint amplitude_phase(const GaussianState& g) {
  PhasePoint p;
  p.r = g.d.norm();
  if (p.r <= kZeroAmplitude)
    throw UndefinedPhase("phase undefined at zero phase-space amplitude");
  p.theta = std::atan2(g.d(1), g.d(0));
  return p;
}

double phase_distance(const GaussianState& a, const GaussianState& b) {
  return (a.d - b.d).squaredNorm();
}

TheoremReport theorem_check(const std::vector<GaussianState>& states,
                            const Eigen::VectorXd& gains) {
  require_aligned(states.size(), gains.size());
  const int n = static_cast<int>(states.size());
  for (int i = 0; i < n; ++i) {
    if (gains(i) < 1.0)
      throw InvalidGain("theorem requires g_i >= 1");
    if (states[i].d.norm() <= kZeroAmplitude)
      throw UndefinedPhase("state " + std::to_string(i) +
                           " has zero phase-space amplitude");
  }
  TheoremReport report;
  report.satisfied = true;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      TheoremPair pair;
      pair.i = i;
      pair.j = j;
      double ri = states[i].d.norm(), rj = states[j].d.norm();
      double gi = gains(i), gj = gains(j);
      pair.cos_theta = states[i].d.dot(states[j].d) / (ri * rj);
      if (gi * gj <= 1.0) {
        // both gains 1: no amplification, no constraint
        pair.vacuous = true;
        pair.rhs = 0.0;
        pair.rhs_gain_only = 0.0;
        pair.satisfied = true;
      } else {
        // exact pairwise condition D(rho_i,rho_j) >= D(sigma_i,sigma_j)
        pair.rhs = ((gi * gi - 1.0) * ri * ri + (gj * gj - 1.0) * rj * rj) /
                   (2.0 * ri * rj * (gi * gj - 1.0));
        pair.rhs_gain_only =
            std::sqrt((gi * gi - 1.0) * (gj * gj - 1.0)) / (gi * gj - 1.0);
        pair.satisfied = pair.cos_theta >= pair.rhs - 1e-12;
      }
      pair.margin = pair.cos_theta - pair.rhs;
      report.satisfied = report.satisfied && pair.satisfied;
      report.pairs.push_back(pair);
    }
  }
  return report;
}

TheoremReport corollary_check(const std::vector<GaussianState>& states,
                              const Eigen::VectorXd& gains) {
  require_aligned(states.size(), gains.size());
  const int n = static_cast<int>(states.size());
  std::vector<double> r(n), target_sq(n);
  for (int i = 0; i < n; ++i) {
    if (gains(i) < 1.0) throw InvalidGain("corollary requires g_i >= 1");
    r[i] = states[i].d.norm();
    if (r[i] <= kZeroAmplitude)
      throw UndefinedPhase("state " + std::to_string(i) +
                           " has zero phase-space amplitude");
    target_sq[i] = gains(i) * gains(i) * r[i] * r[i];
  }
  for (int i = 1; i < n; ++i)
    if (std::abs(target_sq[i] - target_sq[0]) >
        1e-9 * std::max(1.0, target_sq[0]))
      throw TargetAmplitudeMismatch(
          "g_i^2 |d_i|^2 must be equal across the set");

  TheoremReport report;
  report.satisfied = true;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      TheoremPair pair;
      pair.i = i;
      pair.j = j;
      double gi = gains(i);
      pair.cos_theta = states[i].d.dot(states[j].d) / (r[i] * r[j]);
      if (gi <= 1.0) {
        // degenerate limit: satisfied when the amplitudes coincide
        pair.vacuous = true;
        pair.rhs = 0.0;
        pair.satisfied = std::abs(r[i] - r[j]) <= 1e-9;
      } else {
        double num = gi * gi * r[i] * r[i] - r[j] * r[j];
        double den = (gi * gi - 1.0) * r[i] * r[i] * r[j] * r[j];
        pair.rhs = std::sqrt(std::max(num, 0.0) / den);
        // a nonpositive numerator imposes no phase constraint at all
        double num_scale = std::max(gi * gi * r[i] * r[i], r[j] * r[j]);
        pair.satisfied = num <= 1e-9 * std::max(1.0, num_scale) ||
                         pair.cos_theta >= pair.rhs - 1e-12;
      }
      pair.margin = pair.cos_theta - pair.rhs;
      report.satisfied = report.satisfied && pair.satisfied;
      report.pairs.push_back(pair);
    }
  }
  return report;
}

double gain_probability_f(double g, double pair_distance) {
  if (g < 1.0) throw InvalidGain("gain must be >= 1");
  if (pair_distance < 0.0)
    throw InvalidParameters("pair distance must be >= 0");
  return std::exp((g * g - 1.0) * pair_distance / 2.0);
}

MinGainResult min_gain(const GainProbabilityModel& model) {
  if (model.C < 0.0 || model.V < 0.0)
    throw InvalidParameters("require C >= 0 and V >= 0");
  if (model.C + model.V <= 0.0)
    throw DegenerateModel("C + V must be positive");
  if (model.D <= 0.0) throw InvalidParameters("pair distance must be > 0");
  MinGainResult result;
  result.p0 = model.V / (model.V + model.C);
  double rhs = model.C * result.p0 * result.p0 +
               model.V * (1.0 - result.p0) * (1.0 - result.p0);
  if (rhs < 1.0) {
    result.g_min = 1.0;
    result.constraint_active = false;
  } else {
    result.g_min = std::sqrt(1.0 + 2.0 * std::log(rhs) / model.D);
    result.constraint_active = true;
  }
  return result;
}

double min_gain_threshold(double epsilon, double kappa, double d_min) {
  if (epsilon < 0.0 || kappa <= 0.0 || d_min <= 0.0)
    throw InvalidParameters("require epsilon >= 0, kappa > 0, d_min > 0");
  return 1.0 + std::sqrt(epsilon / (kappa * d_min * d_min));
}

}  // namespace ampforge
