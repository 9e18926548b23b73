#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace meshfree::linalg {

/// Dense row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  std::span<const double> data() const { return a_; }

  std::vector<double> multiply(std::span<const double> x) const;
  DenseMatrix transposed() const;

  double norm_inf() const;
  double norm_one() const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

/// max |A - A^T| over all entries. Requires a square matrix.
double asymmetry_inf(const DenseMatrix& a);

struct LuOptions {
  /// Pivots below relative_pivot_floor * ||A||_inf are flagged as near-singular.
  double relative_pivot_floor = 1e-14;
  /// When set, flagged pivots are replaced by +-floor instead of being used as-is.
  bool truncate_small_pivots = false;
};

/// P A = L U with unit lower-triangular L, packed into one matrix.
class LuFactors {
 public:
  std::size_t size() const { return lu_.rows(); }
  const DenseMatrix& packed() const { return lu_; }
  /// Row of A that ended up in row i of P A.
  const std::vector<std::size_t>& permutation() const { return perm_; }

  /// max |U| / max |A|.
  double growth_factor() const { return growth_; }
  bool near_singular() const { return first_small_pivot_.has_value(); }
  std::optional<std::size_t> first_small_pivot() const { return first_small_pivot_; }
  double smallest_pivot() const { return smallest_pivot_; }

  /// Solves A x = b.
  std::vector<double> solve(std::span<const double> b) const;
  /// Solves A^T x = b.
  std::vector<double> solve_transposed(std::span<const double> b) const;

 private:
  friend LuFactors lu_factor(const DenseMatrix& a, const LuOptions& opts);

  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  double growth_ = 1.0;
  double smallest_pivot_ = 0.0;
  std::optional<std::size_t> first_small_pivot_;
};

/// Partial-pivoted LU. Throws SingularMatrixError on an exactly zero pivot.
/// Leaves `a` untouched.
LuFactors lu_factor(const DenseMatrix& a, const LuOptions& opts = {});

std::vector<double> lu_solve(const LuFactors& f, std::span<const double> b);

/// Multiple right-hand sides given as columns of `b`.
DenseMatrix lu_solve(const LuFactors& f, const DenseMatrix& b);

/// Solves A x = b by partial-pivoted LU carried out in long double, rounding
/// x back to double. Throws SingularMatrixError on an exactly zero pivot.
std::vector<double> solve_extended(const DenseMatrix& a, std::span<const double> b);

/// Hager/Higham estimate of kappa_1(A) = ||A||_1 ||A^{-1}||_1.
double condition_estimate(const LuFactors& f, const DenseMatrix& a);

/// Number of lu_factor calls made by this process so far (thread-safe).
long lu_factor_call_count();

}  // namespace meshfree::linalg
