#include "ampforge/kraus.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace ampforge {

AmplificationSpec AmplificationSpec::make(std::vector<PureState> inputs,
                                          std::vector<PureState> targets,
                                          Eigen::VectorXd gains,
                                          Eigen::VectorXd probs,
                                          std::vector<Observable> observables) {
  const int n = static_cast<int>(inputs.size());
  if (n == 0) throw EmptySet("amplification spec needs at least one state");
  if (static_cast<int>(targets.size()) != n || gains.size() != n ||
      probs.size() != n)
    throw LengthMismatch("inputs, targets, gains, probs must share length");
  for (const auto& s : inputs)
    if (s.dim() != inputs.front().dim())
      throw DimensionMismatch("input states have mixed dimensions");
  for (const auto& s : targets)
    if (s.dim() != inputs.front().dim())
      throw DimensionMismatch("target states must match input dimension");
  for (int i = 0; i < n; ++i)
    if (probs(i) < 0.0 || probs(i) > 1.0)
      throw InvalidProbability("success probability outside [0,1]");
  for (const auto& obs : observables) {
    if (obs.dim() != inputs.front().dim())
      throw DimensionMismatch("observable dimension mismatch");
    for (int i = 0; i < n; ++i) {
      double in = expectation(obs, inputs[i]);
      double out = expectation(obs, targets[i]);
      if (std::abs(out - gains(i) * in) >
          1e-6 * std::max(1.0, std::abs(out)))
        throw GainInconsistent("declared gain " + std::to_string(gains(i)) +
                               " inconsistent with state expectations");
    }
  }
  AmplificationSpec spec;
  spec.inputs = std::move(inputs);
  spec.targets = std::move(targets);
  spec.gains = std::move(gains);
  spec.probs = std::move(probs);
  spec.observables = std::move(observables);
  return spec;
}

DualBasis dual_basis(const std::vector<PureState>& states) {
  GramMatrix g = gram_matrix(states);
  const int n = g.size();
  if (g.min_eigenvalue() <= 1e-10)
    throw LinearlyDependentSet(
        "source set is (numerically) linearly dependent");
  Matrix ginv = g.entries.inverse();
  DualBasis basis;
  basis.duals.reserve(n);
  basis.gammas = Vector::Ones(n);
  // dual_i = sum_k conj(Ginv_ki) psi_k gives <dual_i|psi_j> = delta_ij
  for (int i = 0; i < n; ++i) {
    Vector d = Vector::Zero(states.front().dim());
    for (int k = 0; k < n; ++k)
      d += std::conj(ginv(k, i)) * states[k].amplitudes();
    basis.duals.push_back(std::move(d));
  }
  return basis;
}

Matrix factor_omega(const OmegaMatrix& omega, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(omega.entries);
  const auto& evals = es.eigenvalues();
  double lmax = std::max(evals.maxCoeff(), 0.0);
  if (evals.minCoeff() < -rank_tol * std::max(1.0, lmax))
    throw NotPSD("omega has eigenvalue " + std::to_string(evals.minCoeff()));
  const int n = omega.size();
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (evals(i) > rank_tol * lmax) keep.push_back(i);
  Matrix c(static_cast<int>(keep.size()), n);
  for (std::size_t r = 0; r < keep.size(); ++r)
    c.row(static_cast<int>(r)) =
        std::sqrt(evals(keep[r])) * es.eigenvectors().col(keep[r]).transpose();
  // (C^dag C)^T = Omega, so the synthesized map's pairwise sums
  // sum_k conj(c_kj) c_ki reproduce Omega_ij exactly.
  return c;
}

KrausSet build_kraus(const Matrix& coeffs, const DualBasis& duals,
                     const std::vector<PureState>& targets) {
  const int n = static_cast<int>(coeffs.cols());
  const int m = static_cast<int>(coeffs.rows());
  if (duals.size() != n || static_cast<int>(targets.size()) != n)
    throw ShapeMismatch("coefficient columns must match duals and targets");
  for (int i = 0; i < n; ++i)
    if (std::abs(duals.gammas(i)) <= 1e-10)
      throw ZeroGamma("dual normalization gamma_i vanishes");
  const int dim_in = static_cast<int>(duals.duals.front().size());
  const int dim_out = targets.front().dim();
  KrausSet set;
  set.coeffs = coeffs;
  set.operators.reserve(m);
  for (int k = 0; k < m; ++k) {
    Matrix op = Matrix::Zero(dim_out, dim_in);
    for (int i = 0; i < n; ++i)
      op += (coeffs(k, i) / duals.gammas(i)) * targets[i].amplitudes() *
            duals.duals[i].adjoint();
    set.operators.push_back(std::move(op));
  }
  return set;
}

Matrix KrausSet::completeness_sum() const {
  Matrix sum = Matrix::Zero(operators.front().cols(), operators.front().cols());
  for (const auto& op : operators) sum += op.adjoint() * op;
  return sum;
}

VerificationReport verify_kraus(const KrausSet& kraus,
                                const AmplificationSpec& spec) {
  const int n = spec.size();
  if (kraus.coeffs.cols() != n)
    throw ShapeMismatch("kraus coefficient columns != spec size");
  for (const auto& op : kraus.operators)
    if (op.cols() != spec.dim())
      throw ShapeMismatch("kraus operator shape != spec dimension");

  VerificationReport report;
  report.per_state.resize(n);
  for (int i = 0; i < n; ++i) {
    auto& chk = report.per_state[i];
    chk.expected_prob = spec.probs(i);
    chk.success_prob = kraus.coeffs.col(i).squaredNorm();
    // success-branch output, renormalized
    Matrix rho_out = Matrix::Zero(spec.dim(), spec.dim());
    const Vector& psi = spec.inputs[i].amplitudes();
    for (const auto& op : kraus.operators) {
      Vector v = op * psi;
      rho_out += v * v.adjoint();
    }
    double tr = rho_out.trace().real();
    const Vector& phi = spec.targets[i].amplitudes();
    chk.fidelity =
        tr > 0.0 ? (phi.adjoint() * rho_out * phi).value().real() / tr : 0.0;
    chk.prob_ok = std::abs(chk.success_prob - chk.expected_prob) <= 1e-8;
    chk.fidelity_ok = chk.fidelity >= 1.0 - 1e-8;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(kraus.completeness_sum(),
                                           Eigen::EigenvaluesOnly);
  report.completeness_margin = 1.0 - es.eigenvalues().maxCoeff();
  report.completeness_ok = report.completeness_margin >= -1e-9;
  report.all_passed = report.completeness_ok;
  for (const auto& chk : report.per_state)
    report.all_passed = report.all_passed && chk.prob_ok && chk.fidelity_ok;
  return report;
}

}  // namespace ampforge
