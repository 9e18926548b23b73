#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meshfree/drm.hpp"
#include "meshfree/geometry.hpp"
#include "meshfree/kernels.hpp"
#include "meshfree/linalg.hpp"
#include "meshfree/problems.hpp"

namespace meshfree::bkm {

enum class Scheme { Unsymmetric, Symmetric };

std::string to_string(Scheme scheme);

/// Trial functions attached to the boundary knots, one per knot and kernel
/// order m.
///
/// Unsymmetric scheme: psi_k = u_m^#(x - x_k) for every knot.
/// Symmetric scheme: Dirichlet knots as above; Neumann knots carry
/// psi_k = -n_k . grad u_m^#(x - x_k), i.e. the kernel differentiated along the
/// source normal. For self-adjoint operators this makes every collocation
/// matrix exactly symmetric.
class TrialSpace {
 public:
  TrialSpace(const geometry::NodeSet& nodes, const OperatorSpec& op, Scheme scheme);

  std::size_t size() const { return knots_.size(); }
  Scheme scheme() const { return scheme_; }
  const OperatorSpec& op() const { return kernel_.op(); }
  const kernels::GeneralSolution& kernel() const { return kernel_; }
  const std::vector<geometry::BoundaryNode>& knots() const { return knots_; }

  double value(int m, std::size_t k, const Point& x) const;
  Vector gradient(int m, std::size_t k, const Point& x) const;
  double normal_derivative(int m, std::size_t k, const Point& x, const Vector& n) const;

 private:
  bool source_differentiated(std::size_t k) const {
    return scheme_ == Scheme::Symmetric && knots_[k].bc == geometry::BcKind::Neumann;
  }

  kernels::GeneralSolution kernel_;
  Scheme scheme_;
  std::vector<geometry::BoundaryNode> knots_;
};

/// Rows: Dirichlet knots collocate trial values, Neumann knots collocate
/// normal derivatives, all at kernel order `order`.
linalg::DenseMatrix collocation_matrix(const TrialSpace& trial, int order = 0);

struct CollocationSystem {
  linalg::DenseMatrix matrix;
  std::vector<double> rhs;
};

/// Boundary data minus the particular solution: R - u_p on Dirichlet rows,
/// N - du_p/dn on Neumann rows. `fit` may be null for homogeneous problems.
std::vector<double> adjusted_boundary_data(const geometry::NodeSet& nodes, const problems::AnalyticCase& problem,
                                           const drm::DrmFit* fit);

CollocationSystem assemble_unsymmetric(const geometry::NodeSet& nodes, const problems::AnalyticCase& problem,
                                       const drm::DrmFit* fit = nullptr);

/// Throws UnsupportedOperatorError for non-self-adjoint operators.
CollocationSystem assemble_symmetric(const geometry::NodeSet& nodes, const problems::AnalyticCase& problem,
                                     const drm::DrmFit* fit = nullptr);

struct BkmOptions {
  Scheme scheme = Scheme::Unsymmetric;
  /// Order of the general solution interpolating f; u_p uses one order higher.
  int drm_order = 1;
  linalg::LuOptions lu;
};

class BkmSolution {
 public:
  BkmSolution(TrialSpace trial, std::vector<double> alpha, std::optional<drm::DrmFit> fit,
              std::vector<Point> interior, double condition, bool near_singular);

  Scheme scheme() const { return trial_.scheme(); }
  const OperatorSpec& op() const { return trial_.op(); }
  const std::vector<double>& alpha() const { return alpha_; }
  const std::optional<drm::DrmFit>& drm_fit() const { return fit_; }
  const TrialSpace& trial() const { return trial_; }
  double condition() const { return condition_; }
  bool near_singular() const { return near_singular_; }

  double homogeneous_part(const Point& x) const;
  double particular_part(const Point& x) const;
  /// u = u_h + u_p.
  double evaluate(const Point& x) const;
  Vector gradient(const Point& x) const;

  /// Solution values u_l at the interior knots.
  std::vector<double> interior_values() const;

 private:
  TrialSpace trial_;
  std::vector<double> alpha_;
  std::optional<drm::DrmFit> fit_;
  std::vector<Point> interior_;
  double condition_;
  bool near_singular_;
};

/// Builds the DRM fit for inhomogeneous problems, assembles the L x L system
/// of the chosen scheme and solves it by LU.
BkmSolution solve(const geometry::NodeSet& nodes, const problems::AnalyticCase& problem, const BkmOptions& options = {});

double evaluate(const BkmSolution& solution, const Point& x);

}  // namespace meshfree::bkm
