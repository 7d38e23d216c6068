#pragma once

#include <string>
#include <vector>

#include "ampforge/states.hpp"

namespace ampforge {

// Single-mode Gaussian state: first moment d and covariance gamma, in the
// convention where the vacuum covariance is the identity and a coherent
// state alpha has d = sqrt(2) (Re alpha, Im alpha).
struct GaussianState {
  Eigen::Vector2d d = Eigen::Vector2d::Zero();
  Eigen::Matrix2d gamma = Eigen::Matrix2d::Identity();
  std::string label;

  static GaussianState vacuum();
  static GaussianState coherent(Complex alpha);
  static GaussianState thermal(double nbar);  // gamma = (2 nbar + 1) I
  static GaussianState make(Eigen::Vector2d d, Eigen::Matrix2d gamma,
                            std::string label = "");  // validates
};

struct PhasePoint {
  double r = 0.0;
  double theta = 0.0;  // in (-pi, pi]
};

// C = Tr(tau_1 tau_2), V = Tr(ups_1 ups_2)/Tr(sig_1 sig_2),
// D = phase-space distance of the input pair.
struct GainProbabilityModel {
  double C = 0.0;
  double V = 0.0;
  double D = 0.0;
};

GaussianState moments_from_fock(const DensityMatrix& rho);

double wigner(const GaussianState& g, double q, double p);
double wigner_overlap(const GaussianState& a, const GaussianState& b);

PhasePoint amplitude_phase(const GaussianState& g);
double phase_distance(const GaussianState& a, const GaussianState& b);

struct TheoremPair {
  int i = 0, j = 0;
  double cos_theta = 0.0;
  double rhs = 0.0;           // threshold actually enforced
  double rhs_gain_only = 0.0; // amplitude-free sqrt((gi^2-1)(gj^2-1))/(gi gj - 1)
  double margin = 0.0;        // cos_theta - rhs
  bool vacuous = false;       // both gains 1: no constraint
  bool satisfied = false;
};

struct TheoremReport {
  std::vector<TheoremPair> pairs;
  bool satisfied = false;
};

// Existence condition for a deterministic noiseless phase-preserving
// amplifier: equivalent to D(rho_i, rho_j) >= D(sigma_i, sigma_j) for
// every pair, with sigma moments g_i d_i.
TheoremReport theorem_check(const std::vector<GaussianState>& states,
                            const Eigen::VectorXd& gains);

// Common-target-amplitude special case.
TheoremReport corollary_check(const std::vector<GaussianState>& states,
                              const Eigen::VectorXd& gains);

// f(g) = exp((g^2 - 1) D / 2) for coherent pairs at phase-space distance D.
double gain_probability_f(double g, double pair_distance);

struct MinGainResult {
  double g_min = 1.0;
  double p0 = 0.0;
  bool constraint_active = false;
};
MinGainResult min_gain(const GainProbabilityModel& model);

double min_gain_threshold(double epsilon, double kappa, double d_min);

}  // namespace ampforge
