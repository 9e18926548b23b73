#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "meshfree/operator.hpp"
#include "meshfree/point.hpp"

namespace meshfree::problems {

using VectorField = std::function<Vector(const Point&)>;
/// (k, x) -> R^k{f}(x): k applications of the operator to the forcing.
using IteratedField = std::function<double(int, const Point&)>;
using IteratedGradient = std::function<Vector(int, const Point&)>;

/// Closed-form test problem R{u} = f with boundary data induced by u.
/// Any user-defined problem supplies the same members.
struct AnalyticCase {
  std::string id;
  OperatorSpec op;
  ScalarField exact_u;
  VectorField exact_grad_u;
  IteratedField iterated_forcing;
  IteratedGradient iterated_forcing_gradient;
  /// Highest k with a closed form for R^k{f}; empty when every order is known.
  std::optional<int> max_forcing_order;
  /// f vanishes identically.
  bool homogeneous = false;

  double forcing(const Point& x) const { return iterated_forcing(0, x); }
  double dirichlet(const Point& x) const { return exact_u(x); }
  double neumann(const Point& x, const Vector& n) const { return dot(exact_grad_u(x), n); }
  bool has_forcing_order(int k) const { return !max_forcing_order || k <= *max_forcing_order; }
};

/// 2D (lap + 2) u = f with u = x^2 sin x cos y;
/// f = (2 sin x + 4x cos x) cos y, R{f} = -8 sin x cos y, R^2{f} = 0.
AnalyticCase helmholtz2d_inhomogeneous();

/// 3D (lap + 3) u = 0 with u = sin x cos y cos z.
AnalyticCase helmholtz3d_homogeneous();

/// 3D lap(u) - v.grad(u) = 0 with v = (-sigma, -sigma, -sigma) and
/// u = e^{-sigma x} + e^{-sigma y} + e^{-sigma z}.
AnalyticCase convdiff3d(double sigma);

/// 2D (lap + 2) u = 0 with u = sin x cos y (disk validation problem).
AnalyticCase disk_helmholtz_homogeneous();

/// u = sum_k w_k u_0^#(x - c_k) for an arbitrary operator; homogeneous.
/// Centred on boundary knots this field lies exactly in the BKM trial space.
AnalyticCase kernel_span_case(const OperatorSpec& op, std::vector<Point> centers, std::vector<double> weights);

/// Looks up a shipped case: helmholtz2d, helmholtz3d, convdiff3d, disk_helmholtz.
AnalyticCase case_by_id(const std::string& id, double sigma = 1.0);

/// |R_FD{u}(x) - f(x)| / max(1, |f(x)|).
double consistency_residual(const AnalyticCase& c, const Point& x, const FdOptions& opts = {});

}  // namespace meshfree::problems
