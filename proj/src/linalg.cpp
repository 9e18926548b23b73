#include "meshfree/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "meshfree/errors.hpp"

namespace meshfree::linalg {
namespace {

std::atomic<long> g_factor_calls{0};

void require_length(std::size_t expected, std::size_t got, const char* where) {
  if (expected != got) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (expected " + std::to_string(expected) +
                                ", got " + std::to_string(got) + ")");
  }
}

double norm_one(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  require_length(cols_, x.size(), "DenseMatrix::multiply");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    const double* r = a_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) best = std::max(best, linalg::norm_one(row(i)));
  return best;
}

double DenseMatrix::norm_one() const {
  std::vector<double> col(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) col[j] += std::abs((*this)(i, j));
  return col.empty() ? 0.0 : *std::max_element(col.begin(), col.end());
}

bool DenseMatrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

double asymmetry_inf(const DenseMatrix& a) {
  if (!a.square()) throw std::invalid_argument("asymmetry_inf: matrix must be square");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  return worst;
}

LuFactors lu_factor(const DenseMatrix& a, const LuOptions& opts) {
  g_factor_calls.fetch_add(1, std::memory_order_relaxed);
  if (!a.square()) throw std::invalid_argument("lu_factor: matrix must be square");
  if (!a.all_finite()) throw std::invalid_argument("lu_factor: matrix has non-finite entries");

  const std::size_t n = a.rows();
  LuFactors f;
  f.lu_ = a;
  f.perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.perm_[i] = i;

  double max_a = 0.0;
  for (double v : a.data()) max_a = std::max(max_a, std::abs(v));
  const double floor = opts.relative_pivot_floor * a.norm_inf();
  double max_u = max_a;
  f.smallest_pivot_ = std::numeric_limits<double>::infinity();

  DenseMatrix& lu = f.lu_;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        p = i;
      }
    }
    if (best == 0.0) {
      throw SingularMatrixError(k, std::numeric_limits<double>::infinity(),
                                "lu_factor: exactly singular matrix, zero pivot at index " + std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      std::swap(f.perm_[k], f.perm_[p]);
    }
    if (best < floor) {
      if (!f.first_small_pivot_) f.first_small_pivot_ = k;
      if (opts.truncate_small_pivots) lu(k, k) = std::copysign(floor, lu(k, k));
    }
    f.smallest_pivot_ = std::min(f.smallest_pivot_, std::abs(lu(k, k)));

    const double pivot = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = lu(i, k) / pivot;
      lu(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) {
        lu(i, j) -= l * lu(k, j);
        max_u = std::max(max_u, std::abs(lu(i, j)));
      }
    }
  }
  if (n == 0) f.smallest_pivot_ = 0.0;
  f.growth_ = max_a > 0.0 ? max_u / max_a : 1.0;
  return f;
}

std::vector<double> LuFactors::solve(std::span<const double> b) const {
  const std::size_t n = size();
  require_length(n, b.size(), "lu_solve");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
    x[i] = s / lu_(i, i);
  }
  return x;
}

std::vector<double> LuFactors::solve_transposed(std::span<const double> b) const {
  // A^T = U^T L^T P, so solve U^T w = b, L^T t = w, x = P^T t.
  const std::size_t n = size();
  require_length(n, b.size(), "lu_solve_transposed");
  std::vector<double> w(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    double s = w[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * w[j];
    w[i] = s / lu_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = w[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(j, i) * w[j];
    w[i] = s;
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = w[i];
  return x;
}

std::vector<double> lu_solve(const LuFactors& f, std::span<const double> b) { return f.solve(b); }

DenseMatrix lu_solve(const LuFactors& f, const DenseMatrix& b) {
  require_length(f.size(), b.rows(), "lu_solve");
  DenseMatrix x(b.rows(), b.cols());
  std::vector<double> col(b.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    const std::vector<double> sol = f.solve(col);
    for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = sol[i];
  }
  return x;
}

std::vector<double> solve_extended(const DenseMatrix& a, std::span<const double> b) {
  if (!a.square()) throw std::invalid_argument("solve_extended: matrix must be square");
  const std::size_t n = a.rows();
  require_length(n, b.size(), "solve_extended");
  std::vector<long double> lu(a.data().begin(), a.data().end());
  std::vector<long double> x(b.begin(), b.end());
  auto at = [&](std::size_t i, std::size_t j) -> long double& { return lu[i * n + j]; };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
    if (at(p, k) == 0.0L) {
      throw SingularMatrixError(k, std::numeric_limits<double>::infinity(),
                                "solve_extended: exactly singular matrix, zero pivot at index " + std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      std::swap(x[k], x[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const long double l = at(i, k) / at(k, k);
      if (l == 0.0L) continue;
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= l * at(k, j);
      x[i] -= l * x[k];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    long double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= at(i, j) * x[j];
    x[i] = s / at(i, i);
  }
  return std::vector<double>(x.begin(), x.end());
}

double condition_estimate(const LuFactors& f, const DenseMatrix& a) {
  const std::size_t n = f.size();
  require_length(n, a.rows(), "condition_estimate");
  if (n == 0) return 0.0;

  // Hager's iteration for ||A^{-1}||_1 (as in LAPACK xLACON).
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  std::size_t last_j = n;
  for (int iter = 0; iter < 5; ++iter) {
    const std::vector<double> y = f.solve(x);
    estimate = std::max(estimate, norm_one(y));
    std::vector<double> xi(n);
    for (std::size_t i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    const std::vector<double> z = f.solve_transposed(xi);
    std::size_t j = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(z[i]) > std::abs(z[j])) j = i;
    double ztx = 0.0;
    for (std::size_t i = 0; i < n; ++i) ztx += z[i] * x[i];
    if (std::abs(z[j]) <= ztx || j == last_j) break;
    std::fill(x.begin(), x.end(), 0.0);
    x[j] = 1.0;
    last_j = j;
  }

  // Higham's alternating-sign test vector guards against Hager underestimates.
  std::vector<double> alt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    alt[i] = sign * (1.0 + static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(n - 1, 1)));
  }
  const double alt_est = 2.0 * norm_one(f.solve(alt)) / (3.0 * static_cast<double>(n));
  estimate = std::max(estimate, alt_est);

  return a.norm_one() * estimate;
}

long lu_factor_call_count() { return g_factor_calls.load(std::memory_order_relaxed); }

}  // namespace meshfree::linalg
