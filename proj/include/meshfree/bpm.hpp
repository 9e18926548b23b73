#pragma once

#include <vector>

#include "meshfree/bkm.hpp"
#include "meshfree/geometry.hpp"
#include "meshfree/linalg.hpp"
#include "meshfree/problems.hpp"

namespace meshfree::bpm {

using bkm::Scheme;

inline constexpr int kMaxTruncationOrder = 8;

/// Order counting: the order-n boundary problem carries n-1 applications of
/// the operator to f (order 1 uses f itself, order 2 uses R{f}, ...). Order 0
/// carries the physical boundary data.

/// The matrix shared by every order, identical to the homogeneous BKM matrix
/// of the same scheme. Reads only the boundary knots.
linalg::DenseMatrix assemble_Q(const geometry::NodeSet& nodes, const OperatorSpec& op, Scheme scheme = Scheme::Unsymmetric);

/// Right-hand side b^n given higher = {beta^{n+1}, ..., beta^M}.
///   n >= 1: R^{n-1}{f} (values / normal derivatives) - sum_{m>n} B_{m-n} beta^m
///   n == 0: boundary data R / N                     - sum_{m>0} B_m beta^m
/// where B_p is the collocation matrix at kernel order p. Throws ConfigError
/// when the case has no closed form for the needed iterated forcing.
std::vector<double> rhs_for_order(int n, const bkm::TrialSpace& trial, const problems::AnalyticCase& problem,
                                  const std::vector<std::vector<double>>& higher);

struct BpmOptions {
  int truncation_order = 2;
  Scheme scheme = Scheme::Unsymmetric;
  linalg::LuOptions lu;
};

class BpmSolution {
 public:
  BpmSolution(bkm::TrialSpace trial, std::vector<std::vector<double>> betas, double condition, bool near_singular);

  int truncation_order() const { return static_cast<int>(betas_.size()) - 1; }
  Scheme scheme() const { return trial_.scheme(); }
  const OperatorSpec& op() const { return trial_.op(); }
  const bkm::TrialSpace& trial() const { return trial_; }
  /// betas()[n] = beta^n, n = 0..M.
  const std::vector<std::vector<double>>& betas() const { return betas_; }
  double condition() const { return condition_; }
  bool near_singular() const { return near_singular_; }

  /// u_h^n(x) = sum_k beta^n_k psi_k^{(n)}(x).
  double order_term(int n, const Point& x) const;
  double evaluate(const Point& x) const;
  Vector gradient(const Point& x) const;

 private:
  bkm::TrialSpace trial_;
  std::vector<std::vector<double>> betas_;
  double condition_;
  bool near_singular_;
};

/// One LU factorization of Q, then beta^M, beta^{M-1}, ..., beta^0 by back
/// substitution against it. Interior knots are ignored.
BpmSolution solve(const geometry::NodeSet& nodes, const problems::AnalyticCase& problem, const BpmOptions& options = {});

double evaluate(const BpmSolution& solution, const Point& x);

}  // namespace meshfree::bpm
