#include "meshfree/bkm.hpp"

#include <limits>

#include "meshfree/errors.hpp"

namespace meshfree::bkm {

std::string to_string(Scheme scheme) { return scheme == Scheme::Symmetric ? "symmetric" : "unsymmetric"; }

TrialSpace::TrialSpace(const geometry::NodeSet& nodes, const OperatorSpec& op, Scheme scheme)
    : kernel_(op), scheme_(scheme), knots_(nodes.boundary) {
  if (nodes.dim != op.dim()) throw ConfigError("TrialSpace: node set and operator differ in dimension");
  if (knots_.empty()) throw ConfigError("TrialSpace: at least one boundary knot is required");
  if (scheme == Scheme::Symmetric && !op.self_adjoint()) {
    throw UnsupportedOperatorError("symmetric scheme requires a self-adjoint operator, got " + to_string(op.kind()));
  }
}

double TrialSpace::value(int m, std::size_t k, const Point& x) const {
  const auto& knot = knots_[k];
  if (source_differentiated(k)) return -dot(knot.normal, kernel_.gradient(m, x, knot.point));
  return kernel_.value(m, x, knot.point);
}

Vector TrialSpace::gradient(int m, std::size_t k, const Point& x) const {
  const auto& knot = knots_[k];
  if (source_differentiated(k)) return -kernel_.hessian_times(m, x, knot.point, knot.normal);
  return kernel_.gradient(m, x, knot.point);
}

double TrialSpace::normal_derivative(int m, std::size_t k, const Point& x, const Vector& n) const {
  const auto& knot = knots_[k];
  if (source_differentiated(k)) return kernel_.mixed_second(m, x, n, knot.point, knot.normal);
  return dot(n, kernel_.gradient(m, x, knot.point));
}

linalg::DenseMatrix collocation_matrix(const TrialSpace& trial, int order) {
  const auto& knots = trial.knots();
  const std::size_t n = knots.size();
  linalg::DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = knots[i];
    for (std::size_t k = 0; k < n; ++k) {
      a(i, k) = row.bc == geometry::BcKind::Dirichlet ? trial.value(order, k, row.point)
                                                      : trial.normal_derivative(order, k, row.point, row.normal);
    }
  }
  return a;
}

std::vector<double> adjusted_boundary_data(const geometry::NodeSet& nodes, const problems::AnalyticCase& problem,
                                           const drm::DrmFit* fit) {
  std::vector<double> rhs(nodes.boundary_count());
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    const auto& b = nodes.boundary[i];
    if (b.bc == geometry::BcKind::Dirichlet) {
      rhs[i] = problem.dirichlet(b.point) - (fit ? drm::particular_solution(*fit, b.point) : 0.0);
    } else {
      rhs[i] = problem.neumann(b.point, b.normal) -
               (fit ? drm::particular_solution_normal_derivative(*fit, b.point, b.normal) : 0.0);
    }
  }
  return rhs;
}

namespace {

CollocationSystem assemble(const geometry::NodeSet& nodes, const problems::AnalyticCase& problem,
                           const drm::DrmFit* fit, Scheme scheme) {
  const TrialSpace trial(nodes, problem.op, scheme);
  return {collocation_matrix(trial), adjusted_boundary_data(nodes, problem, fit)};
}

}  // namespace

CollocationSystem assemble_unsymmetric(const geometry::NodeSet& nodes, const problems::AnalyticCase& problem,
                                       const drm::DrmFit* fit) {
  return assemble(nodes, problem, fit, Scheme::Unsymmetric);
}

CollocationSystem assemble_symmetric(const geometry::NodeSet& nodes, const problems::AnalyticCase& problem,
                                     const drm::DrmFit* fit) {
  return assemble(nodes, problem, fit, Scheme::Symmetric);
}

BkmSolution::BkmSolution(TrialSpace trial, std::vector<double> alpha, std::optional<drm::DrmFit> fit,
                         std::vector<Point> interior, double condition, bool near_singular)
    : trial_(std::move(trial)),
      alpha_(std::move(alpha)),
      fit_(std::move(fit)),
      interior_(std::move(interior)),
      condition_(condition),
      near_singular_(near_singular) {}

double BkmSolution::homogeneous_part(const Point& x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < alpha_.size(); ++k) {
    if (alpha_[k] != 0.0) s += alpha_[k] * trial_.value(0, k, x);
  }
  return s;
}

double BkmSolution::particular_part(const Point& x) const { return fit_ ? drm::particular_solution(*fit_, x) : 0.0; }

double BkmSolution::evaluate(const Point& x) const { return homogeneous_part(x) + particular_part(x); }

Vector BkmSolution::gradient(const Point& x) const {
  Vector g = fit_ ? drm::particular_solution_gradient(*fit_, x) : Vector::zero(x.dim());
  for (std::size_t k = 0; k < alpha_.size(); ++k) {
    if (alpha_[k] != 0.0) g += alpha_[k] * trial_.gradient(0, k, x);
  }
  return g;
}

std::vector<double> BkmSolution::interior_values() const {
  std::vector<double> u;
  u.reserve(interior_.size());
  for (const auto& p : interior_) u.push_back(evaluate(p));
  return u;
}

BkmSolution solve(const geometry::NodeSet& nodes, const problems::AnalyticCase& problem, const BkmOptions& options) {
  std::optional<drm::DrmFit> fit;
  if (!problem.homogeneous) {
    const ScalarField f = [&problem](const Point& x) { return problem.forcing(x); };
    fit = drm::fit_forcing(nodes, f, problem.op, options.drm_order);
  }

  TrialSpace trial(nodes, problem.op, options.scheme);
  const linalg::DenseMatrix a = collocation_matrix(trial);
  const std::vector<double> rhs = adjusted_boundary_data(nodes, problem, fit ? &*fit : nullptr);

  linalg::LuFactors lu;
  try {
    lu = linalg::lu_factor(a, options.lu);
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(e.pivot_index(), std::numeric_limits<double>::infinity(),
                              std::string("BKM collocation matrix: ") + e.what());
  }
  const double condition = linalg::condition_estimate(lu, a);
  std::vector<double> alpha = lu.solve(rhs);
  return BkmSolution(std::move(trial), std::move(alpha), std::move(fit), nodes.interior, condition,
                     lu.near_singular());
}

double evaluate(const BkmSolution& solution, const Point& x) { return solution.evaluate(x); }

}  // namespace meshfree::bkm
