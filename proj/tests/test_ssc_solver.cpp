#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "sscnet/ssc_solver.hpp"
#include "sscnet/synthetic.hpp"

using namespace sscnet;
using support::code_of;

namespace {

SscConfig raw_config() {
  SscConfig cfg;
  cfg.normalize_columns = false;
  return cfg;
}

SscConfig tight_config() {
  SscConfig cfg = raw_config();
  cfg.tol_abs = 1e-10;
  cfg.dual_tol = 1e-10;
  cfg.max_iters = 50000;
  return cfg;
}

}  // namespace

TEST_CASE("shrink follows the soft-threshold definition") {
  Matrix m(1, 3);
  m << 1.2, -0.3, -2.0;
  const Matrix out = shrink(m, 0.5);
  CHECK(out(0, 0) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(out(0, 1) == 0.0);
  CHECK(out(0, 2) == doctest::Approx(-1.5).epsilon(1e-15));

  std::mt19937_64 rng(3);
  const Matrix r = oracle::random_matrix(6, 7, rng);
  CHECK(support::bit_equal(shrink(r, 0.0), r));
}

TEST_CASE("shrink rejects bad input") {
  Matrix m = Matrix::Ones(2, 2);
  CHECK(code_of([&] { shrink(m, -1.0); }) == ErrorCode::invalid_input);
  m(1, 0) = std::nan("");
  CHECK(code_of([&] { shrink(m, 0.5); }) == ErrorCode::invalid_input);
}

TEST_CASE("two identical unit vectors represent each other with weight 1 - 1/tau") {
  Matrix x(2, 2);
  x << 1, 1, 0, 0;
  const SscSolution sol = solve_ssc(ActivationMatrix(x));
  CHECK(sol.report.converged);
  // Default tolerance stops within a few 1e-4 of the fixed point.
  CHECK(sol.coefficients.values()(0, 1) == doctest::Approx(0.9).epsilon(1e-3));
  CHECK(sol.coefficients.values()(1, 0) == doctest::Approx(0.9).epsilon(1e-3));

  const SscSolution tight = solve_ssc(ActivationMatrix(x), tight_config());
  CHECK(std::abs(tight.coefficients.values()(0, 1) - 0.9) < 1e-8);
  CHECK(std::abs(tight.coefficients.values()(1, 0) - 0.9) < 1e-8);
}

TEST_CASE("points on two orthogonal lines never represent across lines") {
  Matrix x(2, 5);
  x << 1, 2, -0.5, 0, 0,
       0, 0, 0, 1, 3;
  const SscConfig cfg = raw_config();
  const SscSolution sol = solve_ssc(ActivationMatrix(x), cfg);
  REQUIRE(sol.report.converged);
  const Matrix& c = sol.coefficients.values();
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 3; j < 5; ++j) {
      CHECK(std::abs(c(i, j)) <= cfg.tol_abs);
      CHECK(std::abs(c(j, i)) <= cfg.tol_abs);
    }
  }
  for (Index col = 0; col < 5; ++col) {
    const Vector ref = oracle::lasso_coordinate_descent(x, col, cfg.tau);
    CHECK(oracle::column_objective(x, c.col(col), col, cfg.tau) ==
          doctest::Approx(oracle::column_objective(x, ref, col, cfg.tau)).epsilon(1e-3));
  }
}

TEST_CASE("max_iters = 1 runs exactly one sweep") {
  std::mt19937_64 rng(5);
  SscConfig cfg;
  cfg.max_iters = 1;
  const SscSolution sol = solve_ssc(ActivationMatrix(oracle::random_matrix(4, 6, rng)), cfg);
  CHECK(sol.report.iterations == 1);
  CHECK_FALSE(sol.report.converged);
  CHECK(sol.report.primal_residuals.size() == 1);
  CHECK(sol.report.objective_values.size() == 1);
}

TEST_CASE("ssc_objective examples") {
  std::mt19937_64 rng(8);
  const Matrix x = oracle::random_matrix(3, 4, rng);
  CHECK(ssc_objective(ActivationMatrix(x), CoefficientMatrix(Matrix::Zero(4, 4)), 10.0) ==
        doctest::Approx(5.0 * x.squaredNorm()).epsilon(1e-14));

  Matrix e(2, 2);
  e << 1, 1, 0, 0;
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(ssc_objective(ActivationMatrix(e), CoefficientMatrix(swap), 10.0) == 2.0);

  const Matrix x5 = oracle::random_matrix(5, 5, rng);
  Matrix c5 = oracle::random_matrix(5, 5, rng);
  c5.diagonal().setZero();
  CHECK(ssc_objective(ActivationMatrix(x5), CoefficientMatrix(c5), 3.5) ==
        doctest::Approx(oracle::ssc_objective_loops(x5, c5, 3.5)).epsilon(1e-12));

  CHECK(code_of([&] {
          ssc_objective(ActivationMatrix(x5), CoefficientMatrix(Matrix::Zero(4, 4)), 1.0);
        }) == ErrorCode::dimension_mismatch);
}

TEST_CASE("objective history matches the elementwise objective on both evaluation routes") {
  std::mt19937_64 rng(13);
  for (Index d : {3, 40}) {  // d < N uses X, d > N uses the Gram matrix
    const Matrix x = oracle::random_matrix(d, 12, rng);
    SscConfig cfg = raw_config();
    cfg.max_iters = 7;
    const SscSolution sol = solve_ssc(ActivationMatrix(x), cfg);
    CHECK(sol.report.objective_values.back() ==
          doctest::Approx(oracle::ssc_objective_loops(x, sol.coefficients.values(), cfg.tau))
              .epsilon(1e-10));
  }
}

TEST_CASE("build_affinity examples") {
  Matrix c(2, 2);
  c << 0, -1, 2, 0;
  Matrix expected(2, 2);
  expected << 0, 3, 3, 0;
  CHECK(build_affinity(CoefficientMatrix(c)).values() == expected);
  CHECK(build_affinity(CoefficientMatrix(Matrix::Zero(3, 3))).values() == Matrix::Zero(3, 3));

  std::mt19937_64 rng(2);
  Matrix s = oracle::random_graph(6, rng, 0.7);
  CHECK(build_affinity(CoefficientMatrix(s)).values() == 2.0 * s);
}

TEST_CASE("solver invariants on random problems") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 6; ++t) {
    const Matrix x = oracle::random_matrix(3 + t, 15, rng);
    const SscConfig cfg;
    const SscSolution sol = solve_ssc(ActivationMatrix(x), cfg);
    const Matrix& c = sol.coefficients.values();
    CHECK(c.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(sol.report.iterations <= cfg.max_iters);
    CHECK(sol.report.primal_residuals.size() == static_cast<std::size_t>(sol.report.iterations));
    CHECK(sol.report.objective_values.size() == static_cast<std::size_t>(sol.report.iterations));
    if (sol.report.converged) CHECK((sol.z - c).cwiseAbs().maxCoeff() < cfg.tol_abs);
  }
}

TEST_CASE("solve is bit-deterministic across repeats and thread counts") {
  SyntheticConfig sc;
  sc.points_per_subspace = 20;
  sc.seed = 4;
  const SyntheticData data = gen_synthetic(sc);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const SscSolution ref = solve_ssc(data.x);
  for (int threads : {1, 2, 5}) {
    omp_set_num_threads(threads);
    const SscSolution again = solve_ssc(data.x);
    CHECK(support::bit_equal(again.coefficients.values(), ref.coefficients.values()));
    CHECK(support::bit_equal(again.z, ref.z));
    CHECK(again.report.iterations == ref.report.iterations);
    CHECK(again.report.primal_residuals == ref.report.primal_residuals);
    CHECK(again.report.objective_values == ref.report.objective_values);
    CHECK(again.report.final_mu == ref.report.final_mu);
  }
  omp_set_num_threads(saved);
}

TEST_CASE("returned objective is within 1% of a ten times longer reference run") {
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    SyntheticConfig sc;
    sc.seed = seed;
    sc.noise = 0.05;
    const SyntheticData data = gen_synthetic(sc);
    const SscConfig cfg;
    SscConfig longer = cfg;
    longer.max_iters = 10 * cfg.max_iters;
    longer.tol_abs = cfg.tol_abs / 10.0;
    const Matrix xn = normalize_columns(data.x.values());
    const double got = ssc_objective(ActivationMatrix(xn), solve_ssc(data.x, cfg).coefficients, cfg.tau);
    const double ref =
        ssc_objective(ActivationMatrix(xn), solve_ssc(data.x, longer).coefficients, cfg.tau);
    CHECK(got <= ref * 1.01);
  }
}

TEST_CASE("noiseless union of subspaces gives subspace-preserving coefficients") {
  const SyntheticData data = gen_synthetic(SyntheticConfig{});
  const SscSolution sol = solve_ssc(data.x);
  CHECK(sol.report.converged);
  const std::vector<double> ratios = subspace_preserving_ratios(sol.coefficients, data.labels);
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  CHECK(mean >= 0.95);
}

TEST_CASE("converged per-column objective agrees with coordinate-descent LASSO") {
  std::mt19937_64 rng(31);
  SscConfig cfg = raw_config();
  cfg.tol_abs = 1e-7;
  cfg.dual_tol = 1e-7;
  cfg.max_iters = 50000;
  for (int t = 0; t < 8; ++t) {
    const Index n = 3 + t % 4;
    const Matrix x = oracle::random_matrix(2 + t % 5, n, rng);
    const SscSolution sol = solve_ssc(ActivationMatrix(x), cfg);
    REQUIRE(sol.report.converged);
    for (Index i = 0; i < n; ++i) {
      const double got = oracle::column_objective(x, sol.coefficients.values().col(i), i, 10.0);
      const double ref =
          oracle::column_objective(x, oracle::lasso_coordinate_descent(x, i, 10.0), i, 10.0);
      CHECK(got == doctest::Approx(ref).epsilon(1e-5));
    }
  }
}

TEST_CASE("dual check keeps iterating while C drifts on rank-deficient data") {
  // d < N: the primal gap can reach zero long before C stops moving.
  Matrix x(2, 4);
  x << -0.837929, -0.222461, -0.985137, 2.10446,
       0.187841, -0.331353, 1.35106, -0.0392776;
  SscConfig primal_only = raw_config();
  primal_only.adapt_iters = 0;
  primal_only.tol_abs = 1e-8;
  primal_only.max_iters = 100000;
  SscConfig with_dual = primal_only;
  with_dual.dual_tol = 1e-8;

  const Index col = 2;
  const double ref =
      oracle::column_objective(x, oracle::lasso_coordinate_descent(x, col, 10.0), col, 10.0);
  const SscSolution early = solve_ssc(ActivationMatrix(x), primal_only);
  const SscSolution late = solve_ssc(ActivationMatrix(x), with_dual);
  REQUIRE(late.report.converged);
  CHECK(late.report.iterations > early.report.iterations);
  const double got_late = oracle::column_objective(x, late.coefficients.values().col(col), col, 10.0);
  CHECK(std::abs(got_late - ref) / ref < 1e-6);
}

TEST_CASE("adaptive penalty respects its window") {
  std::mt19937_64 rng(9);
  const ActivationMatrix x(oracle::random_matrix(5, 20, rng));
  SscConfig fixed;
  fixed.adaptive_mu = false;
  const SscSolution a = solve_ssc(x, fixed);
  CHECK(a.report.mu_updates == 0);
  CHECK(a.report.final_mu == fixed.mu_init);

  SscConfig frozen;
  frozen.adapt_iters = 0;
  const SscSolution b = solve_ssc(x, frozen);
  CHECK(b.report.mu_updates == 0);
  CHECK(support::bit_equal(a.coefficients.values(), b.coefficients.values()));

  SscConfig adaptive;
  adaptive.adapt_iters = 5;
  CHECK(solve_ssc(x, adaptive).report.mu_updates <= 4);
}

TEST_CASE("zero columns are left alone and reported") {
  Matrix x(3, 4);
  x << 1, 0, 2, 0.5,
       0, 0, 1, 0.1,
       1, 0, 0, 0.3;
  const SscSolution sol = solve_ssc(ActivationMatrix(x));
  REQUIRE(sol.report.zero_columns.size() == 1);
  CHECK(sol.report.zero_columns[0] == 1);
  CHECK(sol.coefficients.values().row(1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("invalid configuration and data are rejected") {
  const ActivationMatrix x(Matrix::Identity(3, 3));
  auto with = [&](auto mutate) {
    SscConfig cfg;
    mutate(cfg);
    return code_of([&] { solve_ssc(x, cfg); });
  };
  CHECK(with([](SscConfig& c) { c.tau = 0.0; }) == ErrorCode::invalid_input);
  CHECK(with([](SscConfig& c) { c.mu_init = -1.0; }) == ErrorCode::invalid_input);
  CHECK(with([](SscConfig& c) { c.rho = 1.0; }) == ErrorCode::invalid_input);
  CHECK(with([](SscConfig& c) { c.max_iters = 0; }) == ErrorCode::invalid_input);
  CHECK(with([](SscConfig& c) { c.tol_abs = 0.0; }) == ErrorCode::invalid_input);
  CHECK(with([](SscConfig& c) { c.dual_tol = -1.0; }) == ErrorCode::invalid_input);
  CHECK(with([](SscConfig& c) { c.adapt_iters = -1; }) == ErrorCode::invalid_input);
  CHECK(code_of([] { ActivationMatrix(Matrix::Ones(3, 1)); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { ActivationMatrix(Matrix::Ones(0, 3)); }) == ErrorCode::invalid_input);
}
