#pragma once

// Column-loop bodies shared by the serial and OpenMP drivers. Each driver
// instantiates these templates with its own Loop policy; the per-column
// arithmetic and the serial combination of partial sums are identical.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "sscnet/kernels.hpp"

namespace sscnet::kernels::detail {

template <class Loop>
Matrix gram(const Matrix& x) {
  const Index n = x.cols();
  Matrix g(n, n);
  Loop{}(n, [&](Index j) {
    for (Index i = 0; i <= j; ++i) g(i, j) = x.col(i).dot(x.col(j));
  });
  Loop{}(n, [&](Index j) {
    for (Index i = j + 1; i < n; ++i) g(i, j) = g(j, i);
  });
  return g;
}

template <class Loop>
Matrix center(const Matrix& m) {
  const Index n = m.rows();
  const double inv_n = 1.0 / static_cast<double>(n);
  Vector col_sum(n), row_sum(n);
  Loop{}(n, [&](Index j) { col_sum(j) = m.col(j).sum(); });
  Loop{}(n, [&](Index i) {
    double s = 0.0;
    for (Index j = 0; j < n; ++j) s += m(i, j);
    row_sum(i) = s;
  });
  double total = 0.0;
  for (Index j = 0; j < n; ++j) total += col_sum(j);
  const double grand_mean = total * inv_n * inv_n;

  Matrix out(n, n);
  Loop{}(n, [&](Index j) {
    const double col_mean = col_sum(j) * inv_n;
    for (Index i = 0; i < n; ++i) {
      out(i, j) = m(i, j) - row_sum(i) * inv_n - col_mean + grand_mean;
    }
  });
  return out;
}

template <class Loop>
double frobenius_inner(const Matrix& a, const Matrix& b) {
  const Index n = a.cols();
  std::vector<double> partial(static_cast<std::size_t>(n));
  Loop{}(n, [&](Index j) { partial[j] = a.col(j).dot(b.col(j)); });
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

inline double shrink_scalar(double v, double lambda) {
  const double mag = std::abs(v) - lambda;
  if (mag <= 0.0) return 0.0;
  return v > 0.0 ? mag : -mag;
}

template <class Loop>
Matrix soft_threshold(const Matrix& m, double lambda) {
  Matrix out(m.rows(), m.cols());
  Loop{}(m.cols(), [&](Index j) {
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = shrink_scalar(m(i, j), lambda);
  });
  return out;
}

template <class Loop>
Matrix abs_symmetrize(const Matrix& c) {
  const Index n = c.rows();
  Matrix w(n, n);
  Loop{}(n, [&](Index j) {
    for (Index i = 0; i <= j; ++i) w(i, j) = std::abs(c(i, j)) + std::abs(c(j, i));
  });
  Loop{}(n, [&](Index j) {
    for (Index i = j + 1; i < n; ++i) w(i, j) = w(j, i);
  });
  return w;
}

template <class Loop>
Matrix sym_multiply(const Matrix& s, const Matrix& r) {
  Matrix out(s.cols(), r.cols());
  Loop{}(r.cols(), [&](Index j) { out.col(j).noalias() = s.transpose() * r.col(j); });
  return out;
}

template <class Loop>
AdmmSweep admm_shrink_dual(const Matrix& z, Matrix& c, Matrix& lambda, double mu) {
  const Index n = z.cols();
  const double inv_mu = 1.0 / mu;
  struct Partial {
    double max_gap, gap_sq, change_sq, max_change;
  };
  std::vector<Partial> partial(static_cast<std::size_t>(n));
  Loop{}(n, [&](Index j) {
    Partial p{0.0, 0.0, 0.0, 0.0};
    for (Index i = 0; i < z.rows(); ++i) {
      const double old_c = c(i, j);
      const double new_c = (i == j) ? 0.0 : shrink_scalar(z(i, j) + lambda(i, j) * inv_mu, inv_mu);
      const double gap = z(i, j) - new_c;
      const double change = new_c - old_c;
      c(i, j) = new_c;
      lambda(i, j) += mu * gap;
      p.max_gap = std::max(p.max_gap, std::abs(gap));
      p.gap_sq += gap * gap;
      p.change_sq += change * change;
      p.max_change = std::max(p.max_change, std::abs(change));
    }
    partial[j] = p;
  });
  AdmmSweep out;
  double gap_sq = 0.0, change_sq = 0.0;
  for (const Partial& p : partial) {
    out.max_abs_gap = std::max(out.max_abs_gap, p.max_gap);
    out.max_abs_change = std::max(out.max_abs_change, p.max_change);
    gap_sq += p.gap_sq;
    change_sq += p.change_sq;
  }
  out.gap_frobenius = std::sqrt(gap_sq);
  out.change_frobenius = std::sqrt(change_sq);
  return out;
}

template <class Loop>
double l1_norm(const Matrix& m) {
  std::vector<double> partial(static_cast<std::size_t>(m.cols()));
  Loop{}(m.cols(), [&](Index j) { partial[j] = m.col(j).cwiseAbs().sum(); });
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

template <class Loop>
double reconstruction_error(const Matrix& x, const Matrix& c) {
  std::vector<double> partial(static_cast<std::size_t>(c.cols()));
  Loop{}(c.cols(), [&](Index j) {
    Vector r = x.col(j);
    r.noalias() -= x * c.col(j);
    partial[j] = r.squaredNorm();
  });
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

template <class Loop>
double gram_reconstruction_error(const Matrix& g, const Matrix& c) {
  std::vector<double> partial(static_cast<std::size_t>(c.cols()));
  Loop{}(c.cols(), [&](Index j) {
    Vector gc = g * c.col(j);
    const double v = g(j, j) - 2.0 * gc(j) + c.col(j).dot(gc);
    partial[j] = std::max(v, 0.0);
  });
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

template <class Loop>
Matrix class_mass(const Matrix& w, std::span<const int> labels, int num_classes) {
  const Index n = w.cols();
  Matrix mass = Matrix::Zero(num_classes, n);
  Loop{}(n, [&](Index i) {
    for (Index j = 0; j < n; ++j) mass(labels[j], i) += w(j, i);
  });
  return mass;
}

template <class Loop>
ModularitySums modularity_sums(const Matrix& w, std::span<const int> labels, int num_classes) {
  const Index n = w.cols();
  std::vector<double> degree(static_cast<std::size_t>(n));
  std::vector<double> within(static_cast<std::size_t>(n));
  Loop{}(n, [&](Index i) {
    double k = 0.0, in = 0.0;
    const int own = labels[i];
    for (Index j = 0; j < n; ++j) {
      const double v = w(j, i);
      k += v;
      if (labels[j] == own) in += v;
    }
    degree[i] = k;
    within[i] = in;
  });
  ModularitySums out;
  out.class_degree.assign(static_cast<std::size_t>(num_classes), 0.0);
  for (Index i = 0; i < n; ++i) {
    out.total_weight += degree[i];
    out.within_weight += within[i];
    out.class_degree[labels[i]] += degree[i];
  }
  return out;
}

}  // namespace sscnet::kernels::detail

// Expands the public entry points of one driver namespace onto the templates.
#define SSCNET_DEFINE_KERNELS(LoopPolicy)                                                 \
  Matrix gram(const Matrix& x) { return detail::gram<LoopPolicy>(x); }                    \
  Matrix center(const Matrix& m) { return detail::center<LoopPolicy>(m); }                \
  double frobenius_inner(const Matrix& a, const Matrix& b) {                              \
    return detail::frobenius_inner<LoopPolicy>(a, b);                                     \
  }                                                                                       \
  Matrix soft_threshold(const Matrix& m, double lambda) {                                 \
    return detail::soft_threshold<LoopPolicy>(m, lambda);                                 \
  }                                                                                       \
  Matrix abs_symmetrize(const Matrix& c) { return detail::abs_symmetrize<LoopPolicy>(c); } \
  Matrix sym_multiply(const Matrix& s, const Matrix& r) {                                 \
    return detail::sym_multiply<LoopPolicy>(s, r);                                        \
  }                                                                                       \
  AdmmSweep admm_shrink_dual(const Matrix& z, Matrix& c, Matrix& lambda, double mu) {     \
    return detail::admm_shrink_dual<LoopPolicy>(z, c, lambda, mu);                        \
  }                                                                                       \
  double l1_norm(const Matrix& m) { return detail::l1_norm<LoopPolicy>(m); }              \
  double reconstruction_error(const Matrix& x, const Matrix& c) {                         \
    return detail::reconstruction_error<LoopPolicy>(x, c);                                \
  }                                                                                       \
  double gram_reconstruction_error(const Matrix& g, const Matrix& c) {                    \
    return detail::gram_reconstruction_error<LoopPolicy>(g, c);                           \
  }                                                                                       \
  Matrix class_mass(const Matrix& w, std::span<const int> labels, int num_classes) {      \
    return detail::class_mass<LoopPolicy>(w, labels, num_classes);                        \
  }                                                                                       \
  ModularitySums modularity_sums(const Matrix& w, std::span<const int> labels,            \
                                 int num_classes) {                                       \
    return detail::modularity_sums<LoopPolicy>(w, labels, num_classes);                   \
  }
