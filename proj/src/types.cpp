#include "sscnet/types.hpp"

#include <algorithm>
#include <string>

#include "sscnet/error.hpp"

namespace sscnet {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::invalid_input, std::string(what) + ": non-finite entry");
  }
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": expected a square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

ActivationMatrix::ActivationMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1) {
    throw Error(ErrorCode::invalid_input, "activation matrix: need at least one neuron (row)");
  }
  if (values_.cols() < 2) {
    throw Error(ErrorCode::invalid_input, "activation matrix: need at least two samples (columns)");
  }
  require_finite(values_, "activation matrix");
}

CoefficientMatrix::CoefficientMatrix(Matrix values) : values_(std::move(values)) {
  require_square(values_, "coefficient matrix");
  require_finite(values_, "coefficient matrix");
  for (Index i = 0; i < values_.rows(); ++i) {
    if (values_(i, i) != 0.0) {
      throw Error(ErrorCode::invalid_input, "coefficient matrix: diagonal must be zero");
    }
  }
}

AffinityMatrix::AffinityMatrix(Matrix values) : values_(std::move(values)) {
  require_square(values_, "affinity matrix");
  require_finite(values_, "affinity matrix");
  const Index n = values_.rows();
  for (Index j = 0; j < n; ++j) {
    if (values_(j, j) != 0.0) {
      throw Error(ErrorCode::invalid_input, "affinity matrix: diagonal must be zero");
    }
    for (Index i = 0; i < n; ++i) {
      if (values_(i, j) < 0.0) {
        throw Error(ErrorCode::invalid_input, "affinity matrix: negative entry");
      }
      if (values_(i, j) != values_(j, i)) {
        throw Error(ErrorCode::invalid_input, "affinity matrix: not symmetric");
      }
    }
  }
}

SimilarityMatrix::SimilarityMatrix(Matrix values) : values_(std::move(values)) {
  require_square(values_, "similarity matrix");
  require_finite(values_, "similarity matrix");
  const Index n = values_.rows();
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      const double avg = 0.5 * (values_(i, j) + values_(j, i));
      values_(i, j) = avg;
      values_(j, i) = avg;
    }
  }
}

SimilarityMatrix::SimilarityMatrix(const AffinityMatrix& affinity)
    : values_(affinity.values()) {}

LabelVector::LabelVector(std::vector<int> ids, int num_classes)
    : ids_(std::move(ids)), num_classes_(num_classes) {
  const int max_label = ids_.empty() ? -1 : *std::max_element(ids_.begin(), ids_.end());
  if (num_classes_ < 0) num_classes_ = max_label + 1;
  for (int id : ids_) {
    if (id < 0 || id >= num_classes_) {
      throw Error(ErrorCode::invalid_input,
                  "label " + std::to_string(id) + " outside [0, " +
                      std::to_string(num_classes_) + ")");
    }
  }
}

}  // namespace sscnet
