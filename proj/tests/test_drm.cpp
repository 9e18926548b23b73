#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "meshfree/drm.hpp"
#include "meshfree/errors.hpp"
#include "meshfree/geometry.hpp"
#include "meshfree/problems.hpp"
#include "meshfree/random.hpp"

using namespace meshfree;
using namespace meshfree::drm;

namespace {

geometry::NodeSet small_disk(int boundary, int interior) {
  geometry::GeometryConfig g = geometry::GeometryConfig::disk_defaults();
  g.boundary_count = boundary;
  g.interior_count = interior;
  return geometry::generate(g);
}

geometry::NodeSet notched_square(int boundary) {
  geometry::GeometryConfig g = geometry::GeometryConfig::square_with_notch_defaults();
  g.boundary_count = boundary;
  return geometry::generate(g);
}

// max_i |A lambda - f|_i / max |f|, A rebuilt here from the kernel and summed
// in long double.
double direct_residual(const DrmFit& fit, const ScalarField& f) {
  const auto& c = fit.centers();
  double worst = 0.0, fmax = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    long double s = 0.0L;
    for (std::size_t j = 0; j < c.size(); ++j)
      s += static_cast<long double>(kernels::general_solution(fit.op(), fit.pairing_order(), c[i], c[j])) *
           fit.lambda()[j];
    worst = std::max(worst, static_cast<double>(std::abs(s - f(c[i]))));
    fmax = std::max(fmax, std::abs(f(c[i])));
  }
  return worst / fmax;
}

}  // namespace

TEST_CASE("zero forcing gives lambda = 0 exactly") {
  const auto op = OperatorSpec::helmholtz(2, std::sqrt(2.0));
  const DrmFit fit = fit_forcing(small_disk(10, 3), [](const Point&) { return 0.0; }, op);
  for (double l : fit.lambda()) CHECK(l == 0.0);
  CHECK(particular_solution(fit, Point(0.1, 0.2)) == 0.0);
  CHECK(particular_solution_normal_derivative(fit, Point(0.1, 0.2), Vector(1.0, 0.0)) == 0.0);
}

TEST_CASE("forcing equal to the kernel at the first center gives lambda = e_1") {
  const auto op = OperatorSpec::helmholtz(2, std::sqrt(2.0));
  const auto nodes = small_disk(10, 3);
  const Point c1 = nodes.boundary[0].point;
  const DrmFit fit =
      fit_forcing(nodes, [&](const Point& x) { return kernels::general_solution(op, 1, x, c1); }, op, 1);
  REQUIRE(fit.lambda().size() == 13);
  for (std::size_t j = 0; j < 13; ++j) CHECK(std::abs(fit.lambda()[j] - (j == 0 ? 1.0 : 0.0)) <= 1e-9);
}

TEST_CASE("2D Helmholtz forcing is interpolated at all 35 + 9 centers to 1e-8 max|f|") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  const ScalarField f = [&](const Point& x) { return pc.forcing(x); };
  const DrmFit fit = fit_forcing(notched_square(35), f, pc.op);
  CHECK(fit.centers().size() == 44);
  CHECK(!fit.boundary_only());
  CHECK(fit.interpolation_residual() <= 1e-8);
  CHECK(direct_residual(fit, f) <= 1e-8);
  CHECK(fit.condition() > 1.0);
}

TEST_CASE("R applied to u_p reproduces the interpolant through the lowering identity") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  const DrmFit fit = fit_forcing(notched_square(26), [&](const Point& x) { return pc.forcing(x); }, pc.op);
  // Analytic R{u_p} is the phi-interpolant, which equals f at the centers.
  // Summing it in double adds eps * sum |lambda phi| on top of the solve residual.
  double fmax = 0.0;
  for (const Point& c : fit.centers()) fmax = std::max(fmax, std::abs(pc.forcing(c)));
  for (const Point& c : fit.centers()) CHECK(std::abs(fit.interpolant(c) - pc.forcing(c)) <= 1e-7 * fmax);
}

TEST_CASE("single-center fit: R_FD{u_p} equals phi next to the center") {
  const auto op = OperatorSpec::helmholtz(2, std::sqrt(2.0));
  // u_m vanishes at r = 0 for m >= 1 in 2D, so a lone center needs phi = u_0.
  const std::vector<Point> centers{Point(0.5, 0.5)};
  const DrmFit fit = fit_forcing(centers, [](const Point&) { return 1.0; }, op, 0);
  CHECK(fit.lambda()[0] == 1.0);
  const Point near(0.52, 0.49);
  const double fd = apply_operator_fd(op, [&](const Point& x) { return particular_solution(fit, x); }, near);
  CHECK(std::abs(fd - fit.interpolant(near)) <= 1e-5);
}

TEST_CASE("2D Helmholtz particular solution satisfies R{u_p} = f to 5e-3 max|f| inside the domain") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  geometry::GeometryConfig g = geometry::GeometryConfig::square_with_notch_defaults();
  const auto nodes = geometry::generate(g);
  const DrmFit fit = fit_forcing(nodes, [&](const Point& x) { return pc.forcing(x); }, pc.op);
  double fmax = 0.0;
  for (const Point& c : fit.centers()) fmax = std::max(fmax, std::abs(pc.forcing(c)));
  // lambda is O(1e8) here, so the FD stencil needs h = 1e-2 to keep
  // cancellation noise (eps |lambda| / h^2) below the quantity being measured.
  double worst = 0.0, worst_interp = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    const Point& x = nodes.eval_points[i];
    const double fd = apply_operator_fd(pc.op, [&](const Point& p) { return particular_solution(fit, p); }, x,
                                        {1e-2, true});
    worst = std::max(worst, std::abs(fd - pc.forcing(x)));
    worst_interp = std::max(worst_interp, std::abs(fit.interpolant(x) - pc.forcing(x)));
  }
  CHECK(worst / fmax <= 5e-3);
  CHECK(worst_interp / fmax <= 5e-3);
}

TEST_CASE("normal derivative of u_p agrees with FD and is odd in n") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  const DrmFit fit = fit_forcing(small_disk(12, 4), [&](const Point& x) { return pc.forcing(x); }, pc.op);
  Rng rng(4);
  for (int s = 0; s < 20; ++s) {
    const Point x(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6));
    const double a = rng.uniform(0.0, 6.283185307179586);
    const Vector n(std::cos(a), std::sin(a));
    const double dn = particular_solution_normal_derivative(fit, x, n);
    const double h = 1e-5;
    const double fd = (particular_solution(fit, x + h * n) - particular_solution(fit, x - h * n)) / (2 * h);
    CHECK(std::abs(dn - fd) <= 1e-6 * std::max(1.0, std::abs(dn)));
    CHECK(particular_solution_normal_derivative(fit, x, -n) == -dn);
  }
}

TEST_CASE("lambda = 0 gives a zero particular solution") {
  const auto op = OperatorSpec::helmholtz(2, 1.0);
  const DrmFit fit(op, 1, {Point(0.0, 0.0), Point(1.0, 0.0)}, {0.0, 0.0}, 1.0, 0.0);
  CHECK(particular_solution(fit, Point(0.3, 0.3)) == 0.0);
  CHECK(norm(particular_solution_gradient(fit, Point(0.3, 0.3))) == 0.0);
}

TEST_CASE("adding a center where f is already interpolated leaves u_p unchanged at the centers") {
  const auto op = OperatorSpec::helmholtz(2, std::sqrt(2.0));
  const std::vector<Point> base{Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0), Point(1.0, 1.0)};
  const ScalarField f = [&](const Point& x) {
    return 0.7 * kernels::general_solution(op, 1, x, base[0]) - 1.3 * kernels::general_solution(op, 1, x, base[3]);
  };
  const DrmFit fit = fit_forcing(base, f, op);
  std::vector<Point> more = base;
  more.push_back(Point(0.5, 0.4));
  const DrmFit fit2 = fit_forcing(more, f, op);
  CHECK(std::abs(fit2.lambda().back()) <= 1e-8);
  for (const Point& c : more) {
    CHECK(particular_solution(fit2, c) == doctest::Approx(particular_solution(fit, c)).epsilon(1e-8));
  }
}

TEST_CASE("duplicate centers are a config error and boundary-only fits are flagged") {
  const auto op = OperatorSpec::helmholtz(2, 1.0);
  const std::vector<Point> dup{Point(0.0, 0.0), Point(0.0, 0.0)};
  CHECK_THROWS_AS(fit_forcing(dup, [](const Point&) { return 1.0; }, op), ConfigError);
  CHECK_THROWS_AS(fit_forcing(std::vector<Point>{}, [](const Point&) { return 1.0; }, op), ConfigError);
  const DrmFit fit = fit_forcing(small_disk(8, 0), [](const Point&) { return 1.0; }, op);
  CHECK(fit.boundary_only());
}
