#pragma once

// Dense data-parallel kernels behind the analysis operations.
//
// Two drivers expose the same functions: `serial` runs the column loops in
// order on one thread and is kept as the reference; `omp` distributes the
// same column loops over OpenMP threads. Every output column (and every
// partial sum feeding a reduction) is produced by exactly one thread with a
// fixed operation order, and partial sums are combined serially in column
// order. Results are therefore bit-identical between the two drivers and
// across thread counts.

#include <span>
#include <vector>

#include "sscnet/types.hpp"

namespace sscnet::kernels {

/// Residual statistics from one fused C-update / dual-update sweep.
struct AdmmSweep {
  double max_abs_gap = 0.0;       // max |Z - C|
  double gap_frobenius = 0.0;     // ||Z - C||_F
  double change_frobenius = 0.0;  // ||C_new - C_old||_F
  double max_abs_change = 0.0;    // max |C_new - C_old|
};

/// Sums needed for weighted modularity of a labelled graph.
struct ModularitySums {
  double total_weight = 0.0;           // sum_ij W_ij  (= 2m)
  double within_weight = 0.0;          // sum_ij W_ij [c_i == c_j]
  std::vector<double> class_degree;    // sum_{i in c} k_i
};

namespace serial {

// X^T X, each unordered pair computed once and mirrored.
Matrix gram(const Matrix& x);
// H M H via row, column and grand mean corrections.
Matrix center(const Matrix& m);
// sum_ij A_ij B_ij
double frobenius_inner(const Matrix& a, const Matrix& b);
Matrix soft_threshold(const Matrix& m, double lambda);
// |C| + |C^T|, each unordered pair computed once.
Matrix abs_symmetrize(const Matrix& c);
// S^T R column by column. Callers pass symmetric S, so this is S R.
Matrix sym_multiply(const Matrix& s, const Matrix& r);
// C <- shrink(Z + L/mu, 1/mu) with zeroed diagonal, then L <- L + mu (Z - C).
AdmmSweep admm_shrink_dual(const Matrix& z, Matrix& c, Matrix& lambda, double mu);
double l1_norm(const Matrix& m);
// ||X - X C||_F^2 from X directly.
double reconstruction_error(const Matrix& x, const Matrix& c);
// ||X - X C||_F^2 from G = X^T X; cost does not depend on d.
double gram_reconstruction_error(const Matrix& g, const Matrix& c);
// K x N: entry (k, i) = sum over j with label_j == k of W_ji.
Matrix class_mass(const Matrix& w, std::span<const int> labels, int num_classes);
ModularitySums modularity_sums(const Matrix& w, std::span<const int> labels, int num_classes);

}  // namespace serial

namespace omp {

// X^T X, each unordered pair computed once and mirrored.
Matrix gram(const Matrix& x);
// H M H via row, column and grand mean corrections.
Matrix center(const Matrix& m);
// sum_ij A_ij B_ij
double frobenius_inner(const Matrix& a, const Matrix& b);
Matrix soft_threshold(const Matrix& m, double lambda);
// |C| + |C^T|, each unordered pair computed once.
Matrix abs_symmetrize(const Matrix& c);
// S^T R column by column. Callers pass symmetric S, so this is S R.
Matrix sym_multiply(const Matrix& s, const Matrix& r);
// C <- shrink(Z + L/mu, 1/mu) with zeroed diagonal, then L <- L + mu (Z - C).
AdmmSweep admm_shrink_dual(const Matrix& z, Matrix& c, Matrix& lambda, double mu);
double l1_norm(const Matrix& m);
// ||X - X C||_F^2 from X directly.
double reconstruction_error(const Matrix& x, const Matrix& c);
// ||X - X C||_F^2 from G = X^T X; cost does not depend on d.
double gram_reconstruction_error(const Matrix& g, const Matrix& c);
// K x N: entry (k, i) = sum over j with label_j == k of W_ji.
Matrix class_mass(const Matrix& w, std::span<const int> labels, int num_classes);
ModularitySums modularity_sums(const Matrix& w, std::span<const int> labels, int num_classes);

}  // namespace omp

/// Threads the omp driver will use (honours SSCNET_NUM_THREADS when set).
int max_threads();

/// Reads SSCNET_NUM_THREADS and applies it to the OpenMP runtime. Returns the
/// resulting thread count.
int apply_thread_env();

}  // namespace sscnet::kernels
