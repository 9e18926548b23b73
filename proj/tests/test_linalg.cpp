#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "meshfree/errors.hpp"
#include "meshfree/linalg.hpp"
#include "meshfree/random.hpp"

using namespace meshfree;
using namespace meshfree::linalg;

namespace {

DenseMatrix random_matrix(std::size_t n, std::uint64_t seed, double diag_boost = 0.0) {
  Rng rng(seed);
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0) + (i == j ? diag_boost : 0.0);
  return a;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::int64_t binom(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("identity factors trivially") {
  const DenseMatrix id = DenseMatrix::identity(5);
  const LuFactors f = lu_factor(id);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(f.permutation()[i] == i);
    for (std::size_t j = 0; j < 5; ++j) CHECK(f.packed()(i, j) == (i == j ? 1.0 : 0.0));
  }
  CHECK(!f.near_singular());
  CHECK(condition_estimate(f, id) == doctest::Approx(1.0));
}

TEST_CASE("2x2 permutation matrix pivots and solves") {
  DenseMatrix a(2, 2);
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  const LuFactors f = lu_factor(a);
  CHECK(f.permutation()[0] == 1);
  const std::vector<double> b{1.0, 2.0};
  const auto x = f.solve(b);
  CHECK(x[0] == 2.0);
  CHECK(x[1] == 1.0);
}

TEST_CASE("random 50x50 solve has relative residual below 1e-10") {
  const DenseMatrix a = random_matrix(50, 42);
  const auto b = random_vector(50, 43);
  const auto x = lu_factor(a).solve(b);
  const auto ax = a.multiply(x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    num += (ax[i] - b[i]) * (ax[i] - b[i]);
    den += b[i] * b[i];
  }
  CHECK(std::sqrt(num / den) <= 1e-10);
}

TEST_CASE("backward residual bound holds up to 500x500") {
  for (std::size_t n : {10u, 100u, 250u, 500u}) {
    const DenseMatrix a = random_matrix(n, 100 + n, 2.0);
    const auto b = random_vector(n, 200 + n);
    const auto x = lu_factor(a).solve(b);
    const auto ax = a.multiply(x);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(ax[i] - b[i]));
    CHECK(r <= 1e-9 * (a.norm_inf() * inf_norm(x) + inf_norm(b)));
  }
}

TEST_CASE("reconstruction P A = L U") {
  const DenseMatrix a = random_matrix(20, 7);
  const LuFactors f = lu_factor(a);
  const DenseMatrix& lu = f.packed();
  double worst = 0.0;
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < 20; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) s += (k == i ? 1.0 : lu(i, k)) * lu(k, j);
      worst = std::max(worst, std::abs(s - a(f.permutation()[i], j)));
    }
  }
  CHECK(worst <= 1e-12 * a.norm_inf());
}

TEST_CASE("zero right-hand side gives zero and columns of A give unit vectors") {
  const DenseMatrix a = random_matrix(12, 9, 1.0);
  const LuFactors f = lu_factor(a);
  for (double v : f.solve(std::vector<double>(12, 0.0))) CHECK(v == 0.0);
  for (std::size_t j = 0; j < 12; ++j) {
    std::vector<double> col(12);
    for (std::size_t i = 0; i < 12; ++i) col[i] = a(i, j);
    const auto x = f.solve(col);
    for (std::size_t i = 0; i < 12; ++i) CHECK(std::abs(x[i] - (i == j ? 1.0 : 0.0)) <= 1e-10);
  }
}

TEST_CASE("multiple right-hand sides reuse one factorization") {
  const DenseMatrix a = random_matrix(8, 3, 1.0);
  const long before = lu_factor_call_count();
  const LuFactors f = lu_factor(a);
  DenseMatrix b(8, 4);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 4; ++j) b(i, j) = static_cast<double>(i + 2 * j);
  const DenseMatrix x = lu_solve(f, b);
  for (int k = 0; k < 3; ++k) f.solve(random_vector(8, static_cast<std::uint64_t>(k)));
  CHECK(lu_factor_call_count() - before == 1);
  for (std::size_t j = 0; j < 4; ++j) {
    std::vector<double> xj(8);
    for (std::size_t i = 0; i < 8; ++i) xj[i] = x(i, j);
    const auto ax = a.multiply(xj);
    for (std::size_t i = 0; i < 8; ++i) CHECK(ax[i] == doctest::Approx(b(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("transposed solve") {
  const DenseMatrix a = random_matrix(15, 21, 1.0);
  const auto b = random_vector(15, 22);
  const auto x = lu_factor(a).solve_transposed(b);
  const auto atx = a.transposed().multiply(x);
  for (std::size_t i = 0; i < 15; ++i) CHECK(atx[i] == doctest::Approx(b[i]).epsilon(1e-11));
}

TEST_CASE("diag(1, 1e-8) has condition 1e8") {
  DenseMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1e-8;
  CHECK(condition_estimate(lu_factor(a), a) == doctest::Approx(1e8).epsilon(1e-12));
}

TEST_CASE("Hilbert 8x8 condition estimate is within 10x of the exact value") {
  const int n = 8;
  DenseMatrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = 1.0 / (i + j + 1);
  // Closed-form integer inverse, 1-based indices.
  double inv_norm = 0.0;
  for (int j = 1; j <= n; ++j) {
    double col = 0.0;
    for (int i = 1; i <= n; ++i) {
      const std::int64_t c = binom(i + j - 2, i - 1);
      const double v = static_cast<double>(i + j - 1) * static_cast<double>(binom(n + i - 1, n - j)) *
                       static_cast<double>(binom(n + j - 1, n - i)) * static_cast<double>(c * c);
      col += v;
    }
    inv_norm = std::max(inv_norm, col);
  }
  const double exact = h.norm_one() * inv_norm;
  CHECK(exact == doctest::Approx(3.387e10).epsilon(1e-3));
  const double est = condition_estimate(lu_factor(h), h);
  CHECK(est <= 10.0 * exact);
  CHECK(est >= exact / 10.0);
}

TEST_CASE("exact singularity raises with the pivot index") {
  DenseMatrix a(3, 3);
  a(0, 0) = 1.0;
  a(1, 0) = 2.0;
  a(2, 2) = 1.0;
  try {
    lu_factor(a);
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.pivot_index() == 1);
  }
}

TEST_CASE("tiny pivots are flagged, not hidden") {
  DenseMatrix a = DenseMatrix::identity(3);
  a(2, 2) = 1e-20;
  const LuFactors f = lu_factor(a);
  CHECK(f.near_singular());
  CHECK(f.first_small_pivot() == 2u);
  LuOptions opts;
  opts.truncate_small_pivots = true;
  CHECK(lu_factor(a, opts).smallest_pivot() == doctest::Approx(1e-14));
}

TEST_CASE("factorization leaves a symmetric input untouched") {
  DenseMatrix a = random_matrix(10, 5);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
  const DenseMatrix copy = a;
  lu_factor(a);
  CHECK(asymmetry_inf(a) == 0.0);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) CHECK(a(i, j) == copy(i, j));
}

TEST_CASE("extended-precision solve agrees with the double solve on a benign system") {
  const DenseMatrix a = random_matrix(30, 77, 1.0);
  const auto b = random_vector(30, 78);
  const auto x = solve_extended(a, b);
  const auto y = lu_factor(a).solve(b);
  for (std::size_t i = 0; i < 30; ++i) CHECK(x[i] == doctest::Approx(y[i]).epsilon(1e-12));
  DenseMatrix z(2, 2);
  CHECK_THROWS_AS(solve_extended(z, std::vector<double>{1.0, 1.0}), SingularMatrixError);
}

TEST_CASE("dimension mismatches are rejected") {
  const LuFactors f = lu_factor(DenseMatrix::identity(3));
  CHECK_THROWS_AS(f.solve(std::vector<double>(2)), std::invalid_argument);
  CHECK_THROWS_AS(lu_factor(DenseMatrix(2, 3)), std::invalid_argument);
}
