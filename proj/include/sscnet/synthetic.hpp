#pragma once

#include <cstdint>
#include <vector>

#include "sscnet/types.hpp"

namespace sscnet {

/// Union-of-subspaces generator parameters.
struct SyntheticConfig {
  int num_subspaces = 3;
  int ambient_dim = 50;
  int subspace_dim = 4;
  int points_per_subspace = 40;
  double noise = 0.0;  // std-dev of additive Gaussian noise
  std::uint64_t seed = 0;

  void validate() const;
};

struct SyntheticData {
  ActivationMatrix x;         // columns grouped by subspace
  LabelVector labels;         // subspace id per column
  std::vector<Matrix> bases;  // d x r orthonormal basis per subspace
};

/// Random r-dimensional subspaces from seeded Gaussian matrices (orthonormalized
/// by Householder QR) with unit-norm points in each, plus noise.
SyntheticData gen_synthetic(const SyntheticConfig& cfg);

}  // namespace sscnet
