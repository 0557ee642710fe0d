#include "sscnet/similarity.hpp"

#include <cmath>
#include <string>

#include "sscnet/error.hpp"
#include "sscnet/kernels.hpp"

namespace sscnet {

namespace {

namespace k = kernels::omp;

void require_min_size(Index n, const char* op) {
  if (n < 2) {
    throw Error(ErrorCode::invalid_input, std::string(op) + ": need N >= 2");
  }
}

void require_same_size(const SimilarityMatrix& a, const SimilarityMatrix& b, const char* op) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(op) + ": size mismatch " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
  }
  require_min_size(a.size(), op);
}

double hsic_centered(const Matrix& ca, const Matrix& cb) {
  // Both centered inputs are symmetric, so trace(A B) is the Frobenius inner product.
  const double nm1 = static_cast<double>(ca.rows() - 1);
  return k::frobenius_inner(ca, cb) / (nm1 * nm1);
}

}  // namespace

double degeneracy_threshold(Index n) {
  return 1e-12 * static_cast<double>(n) * static_cast<double>(n);
}

SimilarityMatrix center(const SimilarityMatrix& m) {
  require_min_size(m.size(), "center");
  return SimilarityMatrix(k::center(m.values()));
}

double hsic(const SimilarityMatrix& a, const SimilarityMatrix& b) {
  require_same_size(a, b, "hsic");
  return hsic_centered(k::center(a.values()), k::center(b.values()));
}

CkaScore cka(const SimilarityMatrix& a, const SimilarityMatrix& b) {
  require_same_size(a, b, "cka");
  const Matrix ca = k::center(a.values());
  const Matrix cb = k::center(b.values());
  const double eps = degeneracy_threshold(a.size());
  const double aa = hsic_centered(ca, ca);
  if (!(aa > eps)) {
    throw Error(ErrorCode::degenerate_kernel,
                "cka: first argument is degenerate (hsic=" + std::to_string(aa) + ")");
  }
  const double bb = hsic_centered(cb, cb);
  if (!(bb > eps)) {
    throw Error(ErrorCode::degenerate_kernel,
                "cka: second argument is degenerate (hsic=" + std::to_string(bb) + ")");
  }
  return CkaScore{hsic_centered(ca, cb) / std::sqrt(aa * bb)};
}

SimilarityMatrix linear_gram(const ActivationMatrix& x) {
  return SimilarityMatrix(k::gram(x.values()));
}

Matrix pairwise_cka(const std::vector<SimilarityMatrix>& mats) {
  const auto count = static_cast<Index>(mats.size());
  if (count == 0) return Matrix(0, 0);
  const Index n = mats.front().size();
  require_min_size(n, "pairwise_cka");

  std::vector<Matrix> centered;
  std::vector<double> self;
  centered.reserve(mats.size());
  self.reserve(mats.size());
  for (Index i = 0; i < count; ++i) {
    if (mats[i].size() != n) {
      throw Error(ErrorCode::dimension_mismatch,
                  "pairwise_cka: matrix " + std::to_string(i) + " has size " +
                      std::to_string(mats[i].size()) + ", expected " + std::to_string(n));
    }
    centered.push_back(k::center(mats[i].values()));
    self.push_back(hsic_centered(centered.back(), centered.back()));
    if (!(self.back() > degeneracy_threshold(n))) {
      throw Error(ErrorCode::degenerate_kernel,
                  "pairwise_cka: matrix " + std::to_string(i) + " is degenerate (hsic=" +
                      std::to_string(self.back()) + ")");
    }
  }

  // Same arithmetic as cka(): hsic(A,B) / sqrt(hsic(A,A) hsic(B,B)), once per
  // unordered pair.
  Matrix out(count, count);
  for (Index j = 0; j < count; ++j) {
    out(j, j) = hsic_centered(centered[j], centered[j]) / std::sqrt(self[j] * self[j]);
    for (Index i = 0; i < j; ++i) {
      const double v = hsic_centered(centered[i], centered[j]) / std::sqrt(self[i] * self[j]);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

}  // namespace sscnet
