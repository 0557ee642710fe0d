#pragma once

#include <vector>

#include "sscnet/types.hpp"

namespace sscnet {

/// Parameters of the matrix-LASSO ADMM solve.
///
/// Defaults follow common SSC practice: tau = mu = 10 (values between 10 and
/// 100 are reasonable), adaptive penalty with the usual residual-balancing
/// rule, and a stop when max|Z - C| drops under tol_abs.
///
/// With a rank-deficient X the primal gap can vanish while C is still
/// drifting. Setting dual_tol > 0 additionally requires mu * max|C_k+1 - C_k|
/// to fall under it before stopping.
struct SscConfig {
  double tau = 10.0;             // data-fidelity weight
  double mu_init = 10.0;         // initial ADMM penalty
  bool adaptive_mu = true;
  double rho = 2.0;              // penalty scale factor
  double residual_ratio = 10.0;  // primal/dual imbalance that triggers a rescale
  int adapt_iters = 10;          // mu is frozen after this many iterations
  int max_iters = 200;
  double tol_abs = 2e-4;
  double dual_tol = 0.0;  // 0 disables the dual check
  bool normalize_columns = true;

  /// Throws invalid_input when any invariant is violated.
  void validate() const;
};

struct SolveReport {
  int iterations = 0;
  std::vector<double> primal_residuals;  // ||Z - C||_F per iteration
  std::vector<double> objective_values;  // objective at the iterate C per iteration
  double final_mu = 0.0;
  bool converged = false;
  int mu_updates = 0;
  std::vector<Index> zero_columns;  // columns left unnormalized (all zero)
};

struct SscSolution {
  CoefficientMatrix coefficients;
  Matrix z;  // companion split variable at the last iterate
  SolveReport report;
};

/// Elementwise soft-threshold sign(m) * max(|m| - lambda, 0).
Matrix shrink(const Matrix& m, double lambda);

/// Solves min ||C||_1 + tau/2 ||X - X Z||_F^2 s.t. Z = C - diag(C) by ADMM.
///
/// The returned C is for the column-normalized X when cfg.normalize_columns is
/// set. The solve is deterministic: identical inputs give bit-identical output
/// regardless of the OpenMP thread count.
SscSolution solve_ssc(const ActivationMatrix& x, const SscConfig& cfg = {});

/// ||C||_1 + tau/2 ||X - X C||_F^2, evaluated elementwise from X.
double ssc_objective(const ActivationMatrix& x, const CoefficientMatrix& c, double tau);

/// W = |C| + |C^T|.
AffinityMatrix build_affinity(const CoefficientMatrix& c);

/// Per-column share of absolute coefficient mass that sits on columns with
/// the same label. Columns with no coefficient mass score 0.
std::vector<double> subspace_preserving_ratios(const CoefficientMatrix& c,
                                               const LabelVector& labels);

/// Copy of X with every nonzero column scaled to unit l2 norm. Indices of
/// all-zero columns are appended to zero_columns when it is non-null.
Matrix normalize_columns(const Matrix& x, std::vector<Index>* zero_columns = nullptr);

}  // namespace sscnet
