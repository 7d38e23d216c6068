#pragma once

#include <cstdint>
#include <optional>

#include "ampforge/states.hpp"

namespace ampforge {

// Hermitian PSD matrix with diag(Omega) = success probabilities and
// |Omega_ij| <= sqrt(p_i p_j) (Cauchy-Schwarz on ancilla overlaps).
struct OmegaMatrix {
  Matrix entries;
  Eigen::VectorXd prob_diag;

  // Validates Hermiticity, diag consistency and the Cauchy-Schwarz bound.
  static OmegaMatrix make(Matrix entries);
  int size() const { return static_cast<int>(entries.rows()); }
};

enum class FeasibilityMethod { AnalyticTwoState, PenaltySearch, UserSupplied };

struct FeasibilityCertificate {
  OmegaMatrix omega;
  Matrix residual_k;
  double min_eig_omega = 0.0;
  double min_eig_k = 0.0;
  bool feasible = false;
  FeasibilityMethod method = FeasibilityMethod::UserSupplied;
  double tol = 1e-9;
};

// G_Pi - G_Xi o Omega (entrywise Hadamard product).
Matrix residual_k(const GramMatrix& g_pi, const GramMatrix& g_xi,
                  const OmegaMatrix& omega);

FeasibilityCertificate check_feasibility(const GramMatrix& g_pi,
                                         const GramMatrix& g_xi,
                                         const OmegaMatrix& omega,
                                         double tol = 1e-9);

// Closed-form N=2 solution at equal success probability p.
// s = <psi_2|psi_1>, t = <phi_2|phi_1>.
FeasibilityCertificate solve_two_state(Complex s, Complex t, double p);

struct MaxProbResult {
  double p = 0.0;
  // |t| = 1 with |s| < 1: no finite bound applies.
  bool degenerate_target = false;
};
MaxProbResult max_success_probability(Complex s, Complex t);

struct SearchResult {
  std::optional<FeasibilityCertificate> certificate;  // empty => NotFound
  double best_penalty = 0.0;
  Matrix best_omega;
  bool found() const { return certificate.has_value(); }
};

// Multi-start derivative-free penalty minimization over Hermitian Omega
// with fixed diagonal. A NotFound result is evidence, not proof, of
// infeasibility.
SearchResult search_omega(const GramMatrix& g_pi, const GramMatrix& g_xi,
                          const Eigen::VectorXd& p, int restarts = 64,
                          std::uint64_t seed = 0);

}  // namespace ampforge
