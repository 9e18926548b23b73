#include "meshfree/bpm.hpp"

#include <limits>
#include <string>

#include "meshfree/errors.hpp"

namespace meshfree::bpm {

namespace {

geometry::NodeSet boundary_only(const geometry::NodeSet& nodes) {
  geometry::NodeSet b;
  b.dim = nodes.dim;
  b.boundary = nodes.boundary;
  return b;
}

}  // namespace

linalg::DenseMatrix assemble_Q(const geometry::NodeSet& nodes, const OperatorSpec& op, Scheme scheme) {
  return bkm::collocation_matrix(bkm::TrialSpace(boundary_only(nodes), op, scheme), 0);
}

std::vector<double> rhs_for_order(int n, const bkm::TrialSpace& trial, const problems::AnalyticCase& problem,
                                  const std::vector<std::vector<double>>& higher) {
  if (n < 0) throw ConfigError("rhs_for_order: negative order");
  const int top = n + static_cast<int>(higher.size());
  if (top > trial.kernel().max_order()) {
    throw ConfigError("rhs_for_order: truncation order " + std::to_string(top) + " exceeds the kernel order limit");
  }
  if (n >= 1 && !problem.homogeneous && !problem.has_forcing_order(n - 1)) {
    throw ConfigError("BPM order " + std::to_string(n) + " needs R^" + std::to_string(n - 1) + "{f} (" +
                      std::to_string(n - 1) + " operator applications to f), which case '" + problem.id +
                      "' does not provide");
  }

  const auto& knots = trial.knots();
  std::vector<double> b(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const auto& row = knots[i];
    const bool dirichlet = row.bc == geometry::BcKind::Dirichlet;
    double v;
    if (n == 0) {
      v = dirichlet ? problem.dirichlet(row.point) : problem.neumann(row.point, row.normal);
    } else if (problem.homogeneous) {
      v = 0.0;
    } else {
      v = dirichlet ? problem.iterated_forcing(n - 1, row.point)
                    : dot(problem.iterated_forcing_gradient(n - 1, row.point), row.normal);
    }
    for (std::size_t j = 0; j < higher.size(); ++j) {
      const int lowered = static_cast<int>(j) + 1;  // (n + 1 + j) - n
      const auto& beta = higher[j];
      for (std::size_t k = 0; k < beta.size(); ++k) {
        if (beta[k] == 0.0) continue;
        v -= beta[k] * (dirichlet ? trial.value(lowered, k, row.point)
                                  : trial.normal_derivative(lowered, k, row.point, row.normal));
      }
    }
    b[i] = v;
  }
  return b;
}

BpmSolution::BpmSolution(bkm::TrialSpace trial, std::vector<std::vector<double>> betas, double condition,
                         bool near_singular)
    : trial_(std::move(trial)), betas_(std::move(betas)), condition_(condition), near_singular_(near_singular) {}

double BpmSolution::order_term(int n, const Point& x) const {
  const auto& beta = betas_.at(static_cast<std::size_t>(n));
  double s = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (beta[k] != 0.0) s += beta[k] * trial_.value(n, k, x);
  }
  return s;
}

double BpmSolution::evaluate(const Point& x) const {
  double s = 0.0;
  for (int n = truncation_order(); n >= 0; --n) s += order_term(n, x);
  return s;
}

Vector BpmSolution::gradient(const Point& x) const {
  Vector g = Vector::zero(x.dim());
  for (int n = 0; n <= truncation_order(); ++n) {
    const auto& beta = betas_[static_cast<std::size_t>(n)];
    for (std::size_t k = 0; k < beta.size(); ++k) {
      if (beta[k] != 0.0) g += beta[k] * trial_.gradient(n, k, x);
    }
  }
  return g;
}

BpmSolution solve(const geometry::NodeSet& nodes, const problems::AnalyticCase& problem, const BpmOptions& options) {
  const int m = options.truncation_order;
  if (m < 0 || m > kMaxTruncationOrder) {
    throw ConfigError("BPM truncation order must lie in [0, " + std::to_string(kMaxTruncationOrder) + "], got " +
                      std::to_string(m));
  }
  bkm::TrialSpace trial(boundary_only(nodes), problem.op, options.scheme);
  const linalg::DenseMatrix q = bkm::collocation_matrix(trial, 0);

  linalg::LuFactors lu;
  try {
    lu = linalg::lu_factor(q, options.lu);
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(e.pivot_index(), std::numeric_limits<double>::infinity(),
                              std::string("BPM matrix Q: ") + e.what());
  }
  const double condition = linalg::condition_estimate(lu, q);

  // betas[n] filled from n = M down to 0; higher holds beta^{n+1}..beta^M.
  std::vector<std::vector<double>> betas(static_cast<std::size_t>(m) + 1);
  for (int n = m; n >= 0; --n) {
    const std::vector<std::vector<double>> higher(betas.begin() + n + 1, betas.end());
    betas[static_cast<std::size_t>(n)] = lu.solve(rhs_for_order(n, trial, problem, higher));
  }
  return BpmSolution(std::move(trial), std::move(betas), condition, lu.near_singular());
}

double evaluate(const BpmSolution& solution, const Point& x) { return solution.evaluate(x); }

}  // namespace meshfree::bpm
