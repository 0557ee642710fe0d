#include "sscnet/graph_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sscnet/error.hpp"
#include "sscnet/kernels.hpp"
#include "sscnet/random.hpp"

namespace sscnet {

namespace {

namespace k = kernels::omp;

void require_matching(const AffinityMatrix& w, const LabelVector& labels, const char* op) {
  if (static_cast<Index>(labels.size()) != w.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(op) + ": " + std::to_string(labels.size()) + " labels for a " +
                    std::to_string(w.size()) + "-node graph");
  }
}

void require_node(const AffinityMatrix& w, Index node, const char* op) {
  if (node < 0 || node >= w.size()) {
    throw Error(ErrorCode::index_out_of_range,
                std::string(op) + ": node " + std::to_string(node) + " outside [0, " +
                    std::to_string(w.size()) + ")");
  }
}

// First coordinate above the noise floor is made positive.
void fix_sign(Eigen::Ref<Vector> v) {
  const double floor = 1e-10 * v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > floor) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

Matrix kmeans(const Matrix& points, int clusters, Rng& rng, std::vector<int>& assign,
              double& inertia) {
  const Index n = points.rows();
  Matrix centers(clusters, points.cols());
  // k-means++ seeding.
  centers.row(0) = points.row(static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))));
  Vector dist = Vector::Constant(n, std::numeric_limits<double>::infinity());
  for (int c = 1; c < clusters; ++c) {
    for (Index i = 0; i < n; ++i) {
      dist(i) = std::min(dist(i), (points.row(i) - centers.row(c - 1)).squaredNorm());
    }
    const double total = dist.sum();
    Index pick = n - 1;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      for (Index i = 0; i < n; ++i) {
        target -= dist(i);
        if (target < 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    }
    centers.row(c) = points.row(pick);
  }

  assign.assign(static_cast<std::size_t>(n), -1);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    inertia = 0.0;
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < clusters; ++c) {
        const double d = (points.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      inertia += best_d;
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
    }
    if (!changed) break;
    Matrix sums = Matrix::Zero(clusters, points.cols());
    std::vector<Index> counts(static_cast<std::size_t>(clusters), 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(assign[i]) += points.row(i);
      ++counts[assign[i]];
    }
    for (int c = 0; c < clusters; ++c) {
      if (counts[c] > 0) centers.row(c) = sums.row(c) / static_cast<double>(counts[c]);
    }
  }
  return centers;
}

}  // namespace

double modularity(const AffinityMatrix& w, const LabelVector& labels) {
  require_matching(w, labels, "modularity");
  const kernels::ModularitySums sums =
      k::modularity_sums(w.values(), labels.ids(), labels.num_classes());
  if (!(sums.total_weight > 0.0)) {
    throw Error(ErrorCode::empty_graph, "modularity: graph has no edges (all-zero affinity)");
  }
  double null_model = 0.0;
  for (double kc : sums.class_degree) {
    const double share = kc / sums.total_weight;
    null_model += share * share;
  }
  return sums.within_weight / sums.total_weight - null_model;
}

ClassProfile class_affinity_profile(const AffinityMatrix& w, const LabelVector& labels,
                                    Index node) {
  require_matching(w, labels, "class_affinity_profile");
  require_node(w, node, "class_affinity_profile");
  ClassProfile profile;
  profile.weights.assign(static_cast<std::size_t>(labels.num_classes()), 0.0);
  for (Index j = 0; j < w.size(); ++j) profile.weights[labels[j]] += w.values()(j, node);
  const double total = std::accumulate(profile.weights.begin(), profile.weights.end(), 0.0);
  if (!(total > 0.0)) {
    std::fill(profile.weights.begin(), profile.weights.end(), 0.0);
    profile.isolated = true;
    return profile;
  }
  for (double& v : profile.weights) v /= total;
  return profile;
}

SscLabeling ssc_labels(const AffinityMatrix& w, const LabelVector& labels) {
  require_matching(w, labels, "ssc_labels");
  const int classes = labels.num_classes();
  const Matrix mass = k::class_mass(w.values(), labels.ids(), classes);
  std::vector<int> predicted(static_cast<std::size_t>(w.size()), 0);
  std::size_t isolated = 0;
  for (Index i = 0; i < w.size(); ++i) {
    int best = 0;
    double best_mass = mass(0, i);
    double total = 0.0;
    for (int c = 0; c < classes; ++c) {
      total += mass(c, i);
      if (mass(c, i) > best_mass) {
        best_mass = mass(c, i);
        best = c;
      }
    }
    if (!(total > 0.0)) {
      ++isolated;
      best = 0;
    }
    predicted[i] = best;
  }
  return SscLabeling{LabelVector(std::move(predicted), std::max(classes, 1)), isolated};
}

double agreement(const LabelVector& a, const LabelVector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                "agreement: lengths " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()) + " differ");
  }
  if (a.size() == 0) return 1.0;
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i] ? 1 : 0;
  return static_cast<double>(same) / static_cast<double>(a.size());
}

Embedding spectral_embedding(const AffinityMatrix& w, Index dims, EmbeddingMode mode) {
  const Index n = w.size();
  if (dims < 1 || dims >= n) {
    throw Error(ErrorCode::invalid_input,
                "spectral_embedding: need 1 <= k < N (k=" + std::to_string(dims) +
                    ", N=" + std::to_string(n) + ")");
  }
  Matrix op;
  if (mode == EmbeddingMode::affinity) {
    op = w.values();
  } else {
    const Vector degree = w.values().colwise().sum().transpose();
    std::string isolated;
    for (Index i = 0; i < n; ++i) {
      if (!(degree(i) > 0.0)) isolated += (isolated.empty() ? "" : ",") + std::to_string(i);
    }
    if (!isolated.empty()) {
      throw Error(ErrorCode::degenerate_degree,
                  "spectral_embedding: zero-degree nodes [" + isolated + "]");
    }
    const Vector inv_sqrt = degree.cwiseSqrt().cwiseInverse();
    op = -(inv_sqrt.asDiagonal() * w.values() * inv_sqrt.asDiagonal());
    op.diagonal().array() += 1.0;
    op = (0.5 * (op + op.transpose())).eval();
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(op);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::internal, "spectral_embedding: eigendecomposition failed");
  }
  // Eigenvalues come back ascending.
  Embedding out;
  out.coordinates.resize(n, dims);
  out.eigenvalues.resize(dims);
  for (Index c = 0; c < dims; ++c) {
    const Index src = mode == EmbeddingMode::affinity ? n - 1 - c : c;
    out.eigenvalues(c) = solver.eigenvalues()(src);
    out.coordinates.col(c) = solver.eigenvectors().col(src).normalized();
    fix_sign(out.coordinates.col(c));
  }
  return out;
}

std::vector<Index> top_neighbors(const AffinityMatrix& w, Index node, Index count) {
  require_node(w, node, "top_neighbors");
  if (count < 0 || count > w.size() - 1) {
    throw Error(ErrorCode::invalid_input,
                "top_neighbors: k=" + std::to_string(count) + " outside [0, " +
                    std::to_string(w.size() - 1) + "]");
  }
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(w.size() - 1));
  for (Index j = 0; j < w.size(); ++j) {
    if (j != node) order.push_back(j);
  }
  const auto& row = w.values();
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return row(node, a) > row(node, b); });
  order.resize(static_cast<std::size_t>(count));
  return order;
}

AffinityMatrix threshold_affinity(const AffinityMatrix& w, double threshold) {
  Matrix out = w.values();
  if (threshold > 0.0) out = (out.array() < threshold).select(0.0, out);
  return AffinityMatrix(std::move(out));
}

LabelVector spectral_clusters(const AffinityMatrix& w, int clusters, std::uint64_t seed) {
  const Index n = w.size();
  if (clusters < 1 || clusters > n) {
    throw Error(ErrorCode::invalid_input, "spectral_clusters: need 1 <= k <= N");
  }
  // Top eigenvectors of D^{-1/2} W D^{-1/2} are the bottom ones of L_sym.
  // Isolated nodes get a zero row instead of an error here.
  const Vector degree = w.values().colwise().sum().transpose();
  Vector inv_sqrt(n);
  for (Index i = 0; i < n; ++i) inv_sqrt(i) = degree(i) > 0.0 ? 1.0 / std::sqrt(degree(i)) : 0.0;
  const Matrix op = inv_sqrt.asDiagonal() * w.values() * inv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (op + op.transpose()));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::internal, "spectral_clusters: eigendecomposition failed");
  }
  Matrix embed = solver.eigenvectors().rightCols(clusters);
  for (Index i = 0; i < n; ++i) {
    const double norm = embed.row(i).norm();
    if (norm > 0.0) embed.row(i) /= norm;
  }

  Rng rng(seed);
  std::vector<int> best_assign;
  double best_inertia = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < 10; ++restart) {
    std::vector<int> assign;
    double inertia = 0.0;
    kmeans(embed, clusters, rng, assign, inertia);
    if (inertia < best_inertia) {
      best_inertia = inertia;
      best_assign = std::move(assign);
    }
  }
  return LabelVector(std::move(best_assign), clusters);
}

double clustering_error(const LabelVector& truth, const LabelVector& predicted) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorCode::dimension_mismatch, "clustering_error: length mismatch");
  }
  if (truth.size() == 0) return 0.0;
  const int classes = std::max(truth.num_classes(), predicted.num_classes());
  if (classes > 9) {
    throw Error(ErrorCode::invalid_input, "clustering_error: more than 9 classes");
  }
  Eigen::MatrixXi confusion = Eigen::MatrixXi::Zero(classes, classes);
  for (std::size_t i = 0; i < truth.size(); ++i) ++confusion(predicted[i], truth[i]);

  std::vector<int> perm(static_cast<std::size_t>(classes));
  std::iota(perm.begin(), perm.end(), 0);
  long best = 0;
  do {
    long hits = 0;
    for (int c = 0; c < classes; ++c) hits += confusion(c, perm[c]);
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return 1.0 - static_cast<double>(best) / static_cast<double>(truth.size());
}

}  // namespace sscnet
