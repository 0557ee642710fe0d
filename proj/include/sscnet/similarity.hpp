#pragma once

#include <vector>

#include "sscnet/types.hpp"

namespace sscnet {

/// A CKA value. Affinity graphs are not PSD kernels, so negative values are
/// possible and reported unclamped.
struct CkaScore {
  double value = 0.0;
};

/// H M H with H = I - 11^T / N. Requires N >= 2.
SimilarityMatrix center(const SimilarityMatrix& m);

/// trace(HAH HBH) / (N - 1)^2.
double hsic(const SimilarityMatrix& a, const SimilarityMatrix& b);

/// hsic(A, B) / sqrt(hsic(A, A) hsic(B, B)).
///
/// Throws degenerate_kernel when either self-HSIC is at most 1e-12 * N^2,
/// e.g. for constant matrices, rather than returning 0 or NaN.
CkaScore cka(const SimilarityMatrix& a, const SimilarityMatrix& b);

/// Sample Gram matrix X^T X (the linear-kernel baseline).
SimilarityMatrix linear_gram(const ActivationMatrix& x);

/// L x L matrix of cka(mats[i], mats[j]); symmetric with unit diagonal.
/// A degenerate input raises degenerate_kernel naming its list index.
Matrix pairwise_cka(const std::vector<SimilarityMatrix>& mats);

/// Degeneracy floor used by cka for an N x N input.
double degeneracy_threshold(Index n);

}  // namespace sscnet
