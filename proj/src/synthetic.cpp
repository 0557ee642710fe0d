#include "sscnet/synthetic.hpp"

#include <cmath>
#include <string>

#include "sscnet/error.hpp"
#include "sscnet/random.hpp"

namespace sscnet {

void SyntheticConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::invalid_input, "synthetic: " + msg); };
  if (num_subspaces < 1) fail("need at least one subspace");
  if (subspace_dim < 1) fail("subspace dimension must be positive");
  if (subspace_dim >= ambient_dim) fail("subspace dimension must be below the ambient dimension");
  if (points_per_subspace < subspace_dim + 1) {
    fail("need at least subspace_dim + 1 points per subspace");
  }
  if (!(noise >= 0.0) || !std::isfinite(noise)) fail("noise must be finite and nonnegative");
}

SyntheticData gen_synthetic(const SyntheticConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const Index d = cfg.ambient_dim;
  const Index r = cfg.subspace_dim;
  const Index per = cfg.points_per_subspace;
  const Index n = per * cfg.num_subspaces;

  std::vector<Matrix> bases;
  bases.reserve(static_cast<std::size_t>(cfg.num_subspaces));
  for (int s = 0; s < cfg.num_subspaces; ++s) {
    Matrix g(d, r);
    for (Index j = 0; j < r; ++j) {
      for (Index i = 0; i < d; ++i) g(i, j) = rng.normal();
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    bases.push_back(qr.householderQ() * Matrix::Identity(d, r));
  }

  Matrix x(d, n);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int s = 0; s < cfg.num_subspaces; ++s) {
    for (Index p = 0; p < per; ++p) {
      Vector coeff(r);
      for (Index i = 0; i < r; ++i) coeff(i) = rng.normal();
      coeff.normalize();
      const Index col = s * per + p;
      x.col(col) = bases[s] * coeff;
      labels[col] = s;
    }
  }
  if (cfg.noise > 0.0) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < d; ++i) x(i, j) += cfg.noise * rng.normal();
    }
  }
  return SyntheticData{ActivationMatrix(std::move(x)), LabelVector(std::move(labels), cfg.num_subspaces),
                       std::move(bases)};
}

}  // namespace sscnet
