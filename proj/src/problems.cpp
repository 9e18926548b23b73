#include "meshfree/problems.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "meshfree/errors.hpp"
#include "meshfree/kernels.hpp"

namespace meshfree::problems {
namespace {

IteratedField zero_forcing() {
  return [](int, const Point&) { return 0.0; };
}

IteratedGradient zero_forcing_gradient() {
  return [](int, const Point& x) { return Vector::zero(x.dim()); };
}

AnalyticCase make_case(std::string id, const OperatorSpec& op) {
  return AnalyticCase{std::move(id), op, {}, {}, {}, {}, std::nullopt, false};
}

}  // namespace

AnalyticCase helmholtz2d_inhomogeneous() {
  AnalyticCase c = make_case("helmholtz2d", OperatorSpec::helmholtz(2, std::numbers::sqrt2));
  c.exact_u = [](const Point& p) { return p.x() * p.x() * std::sin(p.x()) * std::cos(p.y()); };
  c.exact_grad_u = [](const Point& p) {
    const double x = p.x();
    const double y = p.y();
    return Vector((2.0 * x * std::sin(x) + x * x * std::cos(x)) * std::cos(y), -x * x * std::sin(x) * std::sin(y));
  };
  c.iterated_forcing = [](int k, const Point& p) {
    const double x = p.x();
    const double y = p.y();
    switch (k) {
      case 0: return (2.0 * std::sin(x) + 4.0 * x * std::cos(x)) * std::cos(y);
      case 1: return -8.0 * std::sin(x) * std::cos(y);
      default: return 0.0;
    }
  };
  c.iterated_forcing_gradient = [](int k, const Point& p) {
    const double x = p.x();
    const double y = p.y();
    switch (k) {
      case 0:
        return Vector((6.0 * std::cos(x) - 4.0 * x * std::sin(x)) * std::cos(y),
                      -(2.0 * std::sin(x) + 4.0 * x * std::cos(x)) * std::sin(y));
      case 1: return Vector(-8.0 * std::cos(x) * std::cos(y), 8.0 * std::sin(x) * std::sin(y));
      default: return Vector(0.0, 0.0);
    }
  };
  return c;
}

AnalyticCase helmholtz3d_homogeneous() {
  AnalyticCase c = make_case("helmholtz3d", OperatorSpec::helmholtz(3, std::sqrt(3.0)));
  c.exact_u = [](const Point& p) { return std::sin(p.x()) * std::cos(p.y()) * std::cos(p.z()); };
  c.exact_grad_u = [](const Point& p) {
    const double sx = std::sin(p.x()), cx = std::cos(p.x());
    const double sy = std::sin(p.y()), cy = std::cos(p.y());
    const double sz = std::sin(p.z()), cz = std::cos(p.z());
    return Vector(cx * cy * cz, -sx * sy * cz, -sx * cy * sz);
  };
  c.iterated_forcing = zero_forcing();
  c.iterated_forcing_gradient = zero_forcing_gradient();
  c.homogeneous = true;
  return c;
}

AnalyticCase convdiff3d(double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("convdiff3d: sigma must be positive");
  AnalyticCase c =
      make_case("convdiff3d", OperatorSpec::convection_diffusion(3, 1.0, Vector(-sigma, -sigma, -sigma), 0.0));
  c.exact_u = [sigma](const Point& p) {
    return std::exp(-sigma * p.x()) + std::exp(-sigma * p.y()) + std::exp(-sigma * p.z());
  };
  c.exact_grad_u = [sigma](const Point& p) {
    return Vector(-sigma * std::exp(-sigma * p.x()), -sigma * std::exp(-sigma * p.y()),
                  -sigma * std::exp(-sigma * p.z()));
  };
  c.iterated_forcing = zero_forcing();
  c.iterated_forcing_gradient = zero_forcing_gradient();
  c.homogeneous = true;
  return c;
}

AnalyticCase disk_helmholtz_homogeneous() {
  AnalyticCase c = make_case("disk_helmholtz", OperatorSpec::helmholtz(2, std::numbers::sqrt2));
  c.exact_u = [](const Point& p) { return std::sin(p.x()) * std::cos(p.y()); };
  c.exact_grad_u = [](const Point& p) {
    return Vector(std::cos(p.x()) * std::cos(p.y()), -std::sin(p.x()) * std::sin(p.y()));
  };
  c.iterated_forcing = zero_forcing();
  c.iterated_forcing_gradient = zero_forcing_gradient();
  c.homogeneous = true;
  return c;
}

AnalyticCase kernel_span_case(const OperatorSpec& op, std::vector<Point> centers, std::vector<double> weights) {
  if (centers.size() != weights.size()) throw ConfigError("kernel_span_case: centers and weights differ in length");
  auto kernel = std::make_shared<const kernels::GeneralSolution>(op);
  auto cs = std::make_shared<const std::vector<Point>>(std::move(centers));
  auto ws = std::make_shared<const std::vector<double>>(std::move(weights));
  AnalyticCase c = make_case("kernel_span", op);
  c.exact_u = [kernel, cs, ws](const Point& x) {
    double s = 0.0;
    for (std::size_t k = 0; k < cs->size(); ++k) s += (*ws)[k] * kernel->value(0, x, (*cs)[k]);
    return s;
  };
  c.exact_grad_u = [kernel, cs, ws](const Point& x) {
    Vector g = Vector::zero(x.dim());
    for (std::size_t k = 0; k < cs->size(); ++k) g += (*ws)[k] * kernel->gradient(0, x, (*cs)[k]);
    return g;
  };
  c.iterated_forcing = zero_forcing();
  c.iterated_forcing_gradient = zero_forcing_gradient();
  c.homogeneous = true;
  return c;
}

AnalyticCase case_by_id(const std::string& id, double sigma) {
  if (id == "helmholtz2d") return helmholtz2d_inhomogeneous();
  if (id == "helmholtz3d") return helmholtz3d_homogeneous();
  if (id == "convdiff3d") return convdiff3d(sigma);
  if (id == "disk_helmholtz") return disk_helmholtz_homogeneous();
  throw ConfigError("unknown problem '" + id + "'");
}

double consistency_residual(const AnalyticCase& c, const Point& x, const FdOptions& opts) {
  const double applied = apply_operator_fd(c.op, c.exact_u, x, opts);
  const double f = c.forcing(x);
  return std::abs(applied - f) / std::max(1.0, std::abs(f));
}

}  // namespace meshfree::problems
