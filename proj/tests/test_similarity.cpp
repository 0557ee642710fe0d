#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "oracles.hpp"
#include "support.hpp"
#include "sscnet/similarity.hpp"

using namespace sscnet;
using support::code_of;

namespace {

SimilarityMatrix swap2() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return SimilarityMatrix(m);
}

}  // namespace

TEST_CASE("center examples") {
  const Matrix c = center(SimilarityMatrix(Matrix::Constant(5, 5, 3.7))).values();
  CHECK(c.cwiseAbs().maxCoeff() < 1e-14);

  Matrix expected(2, 2);
  expected << -0.5, 0.5, 0.5, -0.5;
  CHECK((center(swap2()).values() - expected).cwiseAbs().maxCoeff() < 1e-15);

  std::mt19937_64 rng(1);
  const Matrix once = center(SimilarityMatrix(oracle::random_symmetric(9, rng))).values();
  const Matrix twice = center(SimilarityMatrix(once)).values();
  CHECK((once - twice).cwiseAbs().maxCoeff() < 1e-12);

  const Matrix m = oracle::random_symmetric(9, rng);
  const Matrix h = oracle::centering_matrix(9);
  CHECK((center(SimilarityMatrix(m)).values() - h * m * h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("hsic examples") {
  CHECK(hsic(swap2(), swap2()) == doctest::Approx(1.0).epsilon(1e-15));

  std::mt19937_64 rng(2);
  const SimilarityMatrix b(oracle::random_symmetric(6, rng));
  CHECK(std::abs(hsic(SimilarityMatrix(Matrix::Constant(6, 6, 2.0)), b)) < 1e-14);

  for (int t = 0; t < 10; ++t) {
    const Matrix x = oracle::random_symmetric(10, rng);
    const Matrix y = oracle::random_symmetric(10, rng);
    CHECK(std::abs(hsic(SimilarityMatrix(x), SimilarityMatrix(y)) - oracle::hsic_explicit(x, y)) <
          1e-8);
    CHECK(hsic(SimilarityMatrix(x), SimilarityMatrix(x)) >= 0.0);
  }
}

TEST_CASE("cka properties") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = oracle::random_symmetric(12, rng);
    const Matrix b = oracle::random_symmetric(12, rng);
    const SimilarityMatrix sa(a), sb(b);
    const double ab = cka(sa, sb).value;
    CHECK(cka(sa, sa).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ab == cka(sb, sa).value);
    CHECK(std::abs(ab) <= 1.0 + 1e-10);
    CHECK(ab == doctest::Approx(oracle::cka_explicit(a, b)).epsilon(1e-9));
    for (double alpha : {1e-3, 1.0, 1e3}) {
      for (double beta : {1e-3, 1.0, 1e3}) {
        const double scaled = cka(SimilarityMatrix(alpha * a), SimilarityMatrix(beta * b)).value;
        CHECK(std::abs(scaled - ab) < 1e-10);
      }
    }
    const Matrix shifted = a + Matrix::Constant(12, 12, 4.2);
    CHECK(std::abs(cka(SimilarityMatrix(shifted), sb).value - ab) < 1e-10);
  }
}

TEST_CASE("linear cka is invariant to orthogonal transforms of the features") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    const Matrix x = oracle::random_matrix(7, 15, rng);
    const Matrix q = oracle::random_orthogonal(7, rng);
    const double v = cka(linear_gram(ActivationMatrix(q * x)), linear_gram(ActivationMatrix(x))).value;
    CHECK(std::abs(v - 1.0) < 1e-8);
  }
}

TEST_CASE("cka rejects degenerate and mismatched input") {
  std::mt19937_64 rng(5);
  const SimilarityMatrix b(oracle::random_symmetric(5, rng));
  CHECK(code_of([&] { cka(SimilarityMatrix(Matrix::Constant(5, 5, 1.0)), b); }) ==
        ErrorCode::degenerate_kernel);
  CHECK(code_of([&] { cka(b, SimilarityMatrix(Matrix::Zero(5, 5))); }) ==
        ErrorCode::degenerate_kernel);
  CHECK(code_of([&] { cka(b, SimilarityMatrix(Matrix::Identity(4, 4))); }) ==
        ErrorCode::dimension_mismatch);
  CHECK(code_of([&] { hsic(SimilarityMatrix(Matrix::Ones(1, 1)), SimilarityMatrix(Matrix::Ones(1, 1))); }) ==
        ErrorCode::invalid_input);
  CHECK(degeneracy_threshold(10) == doctest::Approx(1e-10));
}

TEST_CASE("linear_gram examples") {
  const Matrix id = linear_gram(ActivationMatrix(Matrix::Identity(4, 4))).values();
  CHECK(id == Matrix::Identity(4, 4));

  Matrix e(2, 2);
  e << 1, 1, 0, 0;
  CHECK(linear_gram(ActivationMatrix(e)).values() == Matrix::Ones(2, 2));

  std::mt19937_64 rng(6);
  const Matrix x = oracle::random_matrix(6, 11, rng);
  CHECK((linear_gram(ActivationMatrix(x)).values() - oracle::gram_loops(x)).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("pairwise_cka examples") {
  std::mt19937_64 rng(7);
  const SimilarityMatrix a(oracle::random_symmetric(8, rng));
  CHECK(pairwise_cka({a}) == Matrix::Ones(1, 1));

  const Matrix twin = pairwise_cka({a, a});
  CHECK((twin - Matrix::Ones(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  std::vector<SimilarityMatrix> mats;
  for (int i = 0; i < 3; ++i) mats.emplace_back(oracle::random_symmetric(8, rng));
  const Matrix p = pairwise_cka(mats);
  for (Index i = 0; i < 3; ++i) {
    CHECK(std::abs(p(i, i) - 1.0) < 1e-10);
    for (Index j = 0; j < 3; ++j) {
      CHECK(p(i, j) == p(j, i));
      CHECK(std::abs(p(i, j) - cka(mats[i], mats[j]).value) < 1e-12);
    }
  }
}

TEST_CASE("pairwise_cka names the degenerate entry") {
  std::mt19937_64 rng(8);
  std::vector<SimilarityMatrix> mats{SimilarityMatrix(oracle::random_symmetric(5, rng)),
                                     SimilarityMatrix(Matrix::Constant(5, 5, 2.0))};
  try {
    pairwise_cka(mats);
    FAIL("expected degenerate_kernel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_kernel);
    CHECK(std::string(e.what()).find("matrix 1") != std::string::npos);
  }
}
