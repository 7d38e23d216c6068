#pragma once

#include <vector>

#include "ampforge/amplification_spec.hpp"
#include "ampforge/gram.hpp"
#include "ampforge/states.hpp"

namespace ampforge {

// Biorthogonal duals of a linearly independent set, normalized so that
// <dual_i|psi_j> = delta_ij.
struct DualBasis {
  std::vector<Vector> duals;
  Vector gammas;  // gamma_i = <dual_i|psi_i>, fixed to 1 by normalization

  int size() const { return static_cast<int>(duals.size()); }
};

struct KrausSet {
  std::vector<Matrix> operators;  // M operators, dim_out x dim_in
  Matrix coeffs;                  // M x N, (C^dag C)^T reconstructs Omega

  int num_operators() const { return static_cast<int>(operators.size()); }
  Matrix completeness_sum() const;  // sum_k M_k^dag M_k
};

DualBasis dual_basis(const std::vector<PureState>& states);

// Factor Omega = C^dag C keeping eigenvalues above rank_tol * lambda_max.
Matrix factor_omega(const OmegaMatrix& omega, double rank_tol = 1e-10);

KrausSet build_kraus(const Matrix& coeffs, const DualBasis& duals,
                     const std::vector<PureState>& targets);

struct KrausStateCheck {
  double success_prob = 0.0;  // sum_k |c_ki|^2
  double expected_prob = 0.0;
  double fidelity = 0.0;  // of the normalized success-branch output
  bool prob_ok = false;
  bool fidelity_ok = false;
};

struct VerificationReport {
  std::vector<KrausStateCheck> per_state;
  double completeness_margin = 0.0;  // 1 - lambda_max(sum M^dag M)
  bool completeness_ok = false;
  bool all_passed = false;
};

VerificationReport verify_kraus(const KrausSet& kraus,
                                const AmplificationSpec& spec);

}  // namespace ampforge
