#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace sscnet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// d x N activations, one column per input sample.
class ActivationMatrix {
 public:
  /// Throws invalid_input unless d >= 1, N >= 2 and every entry is finite.
  explicit ActivationMatrix(Matrix values);

  Index neurons() const noexcept { return values_.rows(); }
  Index samples() const noexcept { return values_.cols(); }
  const Matrix& values() const noexcept { return values_; }

 private:
  Matrix values_;
};

/// N x N self-expressive coefficients with an exactly zero diagonal.
class CoefficientMatrix {
 public:
  explicit CoefficientMatrix(Matrix values);

  Index size() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }

 private:
  Matrix values_;
};

/// Symmetric, nonnegative N x N graph with zero diagonal.
class AffinityMatrix {
 public:
  /// Validates exact symmetry, nonnegativity, finiteness and zero diagonal.
  explicit AffinityMatrix(Matrix values);

  Index size() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }

 private:
  Matrix values_;
};

/// Symmetric N x N kernel or affinity used as a CKA argument. Input is
/// symmetrized as (M + M^T) / 2 on construction, which is a no-op for
/// matrices that are already exactly symmetric.
class SimilarityMatrix {
 public:
  explicit SimilarityMatrix(Matrix values);
  SimilarityMatrix(const AffinityMatrix& affinity);  // NOLINT: implicit by intent

  Index size() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }

 private:
  Matrix values_;
};

/// Per-sample integer class ids in [0, K).
class LabelVector {
 public:
  /// num_classes < 0 means "infer as max label + 1".
  explicit LabelVector(std::vector<int> ids, int num_classes = -1);

  std::size_t size() const noexcept { return ids_.size(); }
  int num_classes() const noexcept { return num_classes_; }
  const std::vector<int>& ids() const noexcept { return ids_; }
  int operator[](std::size_t i) const { return ids_[i]; }

 private:
  std::vector<int> ids_;
  int num_classes_;
};

}  // namespace sscnet
