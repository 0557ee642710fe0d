#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sscnet/types.hpp"

namespace sscnet {

/// Weighted modularity of the partition given by labels:
/// Q = (1/2m) sum_ij (W_ij - k_i k_j / 2m) [c_i == c_j], with k_i the weighted
/// degree and 2m the total weight. Throws empty_graph when W is all zero.
double modularity(const AffinityMatrix& w, const LabelVector& labels);

/// Class-wise share of node i's affinity mass. An isolated node (zero row)
/// gets an all-zero profile with isolated = true.
struct ClassProfile {
  std::vector<double> weights;
  bool isolated = false;
};

ClassProfile class_affinity_profile(const AffinityMatrix& w, const LabelVector& labels,
                                    Index node);

struct SscLabeling {
  LabelVector labels;
  std::size_t isolated_nodes = 0;  // assigned class 0
};

/// Assigns each node the class with the largest aggregate affinity; ties go
/// to the lowest class id.
SscLabeling ssc_labels(const AffinityMatrix& w, const LabelVector& labels);

/// Fraction of positions where a and b agree.
double agreement(const LabelVector& a, const LabelVector& b);

enum class EmbeddingMode { affinity, normalized_laplacian };

struct Embedding {
  Matrix coordinates;  // N x k, unit-norm columns
  Vector eigenvalues;  // affinity: descending; laplacian: ascending
};

/// Top-k eigenvectors of W (affinity mode) or bottom-k eigenvectors of
/// I - D^{-1/2} W D^{-1/2} (laplacian mode). Each eigenvector is flipped so its
/// first non-negligible coordinate is positive.
Embedding spectral_embedding(const AffinityMatrix& w, Index k,
                             EmbeddingMode mode = EmbeddingMode::affinity);

/// Indices of the k largest entries of row i (excluding i), descending, ties
/// by lower index.
std::vector<Index> top_neighbors(const AffinityMatrix& w, Index node, Index k);

/// Copy of W with entries below threshold set to zero.
AffinityMatrix threshold_affinity(const AffinityMatrix& w, double threshold);

/// Normalized-Laplacian spectral clustering into k groups with a seeded
/// k-means++ on row-normalized embeddings. Used to score affinity graphs.
LabelVector spectral_clusters(const AffinityMatrix& w, int k, std::uint64_t seed = 0);

/// Minimum misassignment fraction over all relabelings of predicted.
/// Intended for small class counts (enumerates permutations).
double clustering_error(const LabelVector& truth, const LabelVector& predicted);

}  // namespace sscnet
