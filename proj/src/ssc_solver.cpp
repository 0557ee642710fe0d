#include "sscnet/ssc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sscnet/error.hpp"
#include "sscnet/kernels.hpp"

namespace sscnet {

namespace {

namespace k = kernels::omp;

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::invalid_input, "ssc config: " + message);
}

/// Cached inverse of (tau G + mu I) and the fixed part of the Z right-hand
/// side premultiplied by it. Rebuilt only when mu changes.
class ZUpdate {
 public:
  ZUpdate(const Matrix& gram, double tau) : tau_gram_(tau * gram) {}

  void refactor(double mu) {
    const Index n = tau_gram_.rows();
    Matrix system = tau_gram_;
    system.diagonal().array() += mu;
    Eigen::LLT<Matrix> llt(system);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::internal,
                  "Cholesky factorization of tau*X^T*X + mu*I failed (mu=" +
                      std::to_string(mu) + ")");
    }
    inverse_ = llt.solve(Matrix::Identity(n, n));
    // Exact symmetry keeps Z-column arithmetic independent of layout.
    inverse_ = (0.5 * (inverse_ + inverse_.transpose())).eval();
    fixed_ = k::sym_multiply(inverse_, tau_gram_);
  }

  // Z = (tau G + mu I)^{-1} (tau G + mu C - Lambda)
  Matrix apply(const Matrix& c, const Matrix& lambda, double mu) const {
    Matrix rhs = mu * c - lambda;
    Matrix z = k::sym_multiply(inverse_, rhs);
    z += fixed_;
    return z;
  }

 private:
  Matrix tau_gram_;
  Matrix inverse_;
  Matrix fixed_;
};

}  // namespace

void SscConfig::validate() const {
  require(std::isfinite(tau) && tau > 0.0, "tau must be positive");
  require(std::isfinite(mu_init) && mu_init > 0.0, "mu_init must be positive");
  require(std::isfinite(rho) && rho > 1.0, "rho must exceed 1");
  require(std::isfinite(residual_ratio) && residual_ratio > 0.0,
          "residual_ratio must be positive");
  require(adapt_iters >= 0, "adapt_iters must be nonnegative");
  require(max_iters >= 1, "max_iters must be at least 1");
  require(std::isfinite(tol_abs) && tol_abs > 0.0, "tol_abs must be positive");
  require(std::isfinite(dual_tol) && dual_tol >= 0.0, "dual_tol must be nonnegative");
}

Matrix shrink(const Matrix& m, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::invalid_input, "shrink: lambda must be finite and nonnegative");
  }
  if (!m.allFinite()) throw Error(ErrorCode::invalid_input, "shrink: non-finite input");
  return k::soft_threshold(m, lambda);
}

Matrix normalize_columns(const Matrix& x, std::vector<Index>* zero_columns) {
  Matrix out = x;
  for (Index j = 0; j < x.cols(); ++j) {
    const double norm = x.col(j).norm();
    if (norm > 0.0) {
      out.col(j) /= norm;
    } else if (zero_columns != nullptr) {
      zero_columns->push_back(j);
    }
  }
  return out;
}

SscSolution solve_ssc(const ActivationMatrix& x, const SscConfig& cfg) {
  cfg.validate();
  const Index n = x.samples();

  SolveReport report;
  const Matrix data =
      cfg.normalize_columns ? normalize_columns(x.values(), &report.zero_columns) : x.values();
  const Matrix gram = k::gram(data);
  // Evaluate the objective from whichever operand is cheaper.
  const bool objective_from_gram = data.rows() > n;

  double mu = cfg.mu_init;
  ZUpdate z_update(gram, cfg.tau);
  z_update.refactor(mu);

  Matrix c = Matrix::Zero(n, n);
  Matrix lambda = Matrix::Zero(n, n);
  Matrix z;

  report.primal_residuals.reserve(static_cast<std::size_t>(cfg.max_iters));
  report.objective_values.reserve(static_cast<std::size_t>(cfg.max_iters));

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    z = z_update.apply(c, lambda, mu);
    const kernels::AdmmSweep sweep = k::admm_shrink_dual(z, c, lambda, mu);

    const double fit = objective_from_gram ? k::gram_reconstruction_error(gram, c)
                                           : k::reconstruction_error(data, c);
    report.iterations = iter + 1;
    report.primal_residuals.push_back(sweep.gap_frobenius);
    report.objective_values.push_back(k::l1_norm(c) + 0.5 * cfg.tau * fit);

    const bool settled = cfg.dual_tol == 0.0 || mu * sweep.max_abs_change < cfg.dual_tol;
    if (sweep.max_abs_gap < cfg.tol_abs && settled) {
      report.converged = true;
      break;
    }
    if (cfg.adaptive_mu && iter + 1 < std::min(cfg.max_iters, cfg.adapt_iters)) {
      const double primal = sweep.gap_frobenius;
      const double dual = mu * sweep.change_frobenius;
      double next_mu = mu;
      if (primal > cfg.residual_ratio * dual) {
        next_mu = mu * cfg.rho;
      } else if (dual > cfg.residual_ratio * primal) {
        next_mu = mu / cfg.rho;
      }
      if (next_mu != mu) {
        mu = next_mu;
        z_update.refactor(mu);
        ++report.mu_updates;
      }
    }
  }
  report.final_mu = mu;
  return SscSolution{CoefficientMatrix(std::move(c)), std::move(z), std::move(report)};
}

double ssc_objective(const ActivationMatrix& x, const CoefficientMatrix& c, double tau) {
  if (c.size() != x.samples()) {
    throw Error(ErrorCode::dimension_mismatch,
                "ssc_objective: C is " + std::to_string(c.size()) + "x" +
                    std::to_string(c.size()) + " but X has " + std::to_string(x.samples()) +
                    " samples");
  }
  if (!(tau > 0.0)) throw Error(ErrorCode::invalid_input, "ssc_objective: tau must be positive");
  return k::l1_norm(c.values()) + 0.5 * tau * k::reconstruction_error(x.values(), c.values());
}

AffinityMatrix build_affinity(const CoefficientMatrix& c) {
  return AffinityMatrix(k::abs_symmetrize(c.values()));
}

std::vector<double> subspace_preserving_ratios(const CoefficientMatrix& c,
                                               const LabelVector& labels) {
  if (static_cast<Index>(labels.size()) != c.size()) {
    throw Error(ErrorCode::dimension_mismatch, "subspace_preserving_ratios: label count mismatch");
  }
  std::vector<double> out(labels.size(), 0.0);
  for (Index j = 0; j < c.size(); ++j) {
    double same = 0.0, total = 0.0;
    for (Index i = 0; i < c.size(); ++i) {
      const double v = std::abs(c.values()(i, j));
      total += v;
      if (labels[i] == labels[j]) same += v;
    }
    out[j] = total > 0.0 ? same / total : 0.0;
  }
  return out;
}

}  // namespace sscnet
