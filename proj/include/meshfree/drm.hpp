#pragma once

#include <vector>

#include "meshfree/geometry.hpp"
#include "meshfree/kernels.hpp"
#include "meshfree/operator.hpp"

namespace meshfree::drm {

/// Dual-reciprocity interpolant of the forcing. f is interpolated with
/// phi = u_{m_f}^# over the boundary and interior knots; the particular
/// solution is built from u_{m_f+1}^#, so R{u_p} reproduces the interpolant
/// exactly through the lowering identity.
class DrmFit {
 public:
  DrmFit(const OperatorSpec& op, int pairing_order, std::vector<Point> centers, std::vector<double> lambda,
         double condition, double interpolation_residual);

  const OperatorSpec& op() const { return kernel_.op(); }
  int pairing_order() const { return pairing_order_; }
  const std::vector<Point>& centers() const { return centers_; }
  const std::vector<double>& lambda() const { return lambda_; }
  double condition() const { return condition_; }

  /// max_i |A_phi lambda - f|_i / max |f| over the centers (0 when f == 0).
  double interpolation_residual() const { return residual_; }

  /// Set when no interior knots took part in the fit.
  bool boundary_only() const { return boundary_only_; }
  void set_boundary_only(bool v) { boundary_only_ = v; }

  /// sum_j lambda_j u_{m_f}^#(x - x_j): the interpolant of f.
  double interpolant(const Point& x) const;

  const kernels::GeneralSolution& kernel() const { return kernel_; }

 private:
  kernels::GeneralSolution kernel_;
  int pairing_order_;
  std::vector<Point> centers_;
  std::vector<double> lambda_;
  double condition_;
  double residual_;
  bool boundary_only_ = false;
};

/// Boundary knots followed by interior knots.
std::vector<Point> drm_centers(const geometry::NodeSet& nodes);

DrmFit fit_forcing(const geometry::NodeSet& nodes, const ScalarField& forcing, const OperatorSpec& op,
                   int pairing_order = 1);

/// Fit over an explicit center list.
DrmFit fit_forcing(const std::vector<Point>& centers, const ScalarField& forcing, const OperatorSpec& op,
                   int pairing_order = 1);

double particular_solution(const DrmFit& fit, const Point& x);
Vector particular_solution_gradient(const DrmFit& fit, const Point& x);
double particular_solution_normal_derivative(const DrmFit& fit, const Point& x, const Vector& n);

}  // namespace meshfree::drm
