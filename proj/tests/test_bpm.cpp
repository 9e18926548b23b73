#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "meshfree/bkm.hpp"
#include "meshfree/bpm.hpp"
#include "meshfree/errors.hpp"
#include "meshfree/geometry.hpp"
#include "meshfree/harness.hpp"
#include "meshfree/problems.hpp"

using namespace meshfree;
using namespace meshfree::bpm;
using geometry::BcKind;
using geometry::GeometryConfig;
using geometry::NodeSet;

namespace {

NodeSet square(int boundary, int interior = 9) {
  GeometryConfig g = GeometryConfig::square_with_notch_defaults();
  g.boundary_count = boundary;
  g.interior_count = interior;
  return geometry::generate(g);
}

double rms_error(const NodeSet& nodes, const problems::AnalyticCase& pc, const BpmSolution& sol) {
  std::vector<double> num, ex;
  for (const auto& p : nodes.eval_points) {
    num.push_back(sol.evaluate(p));
    ex.push_back(pc.exact_u(p));
  }
  return harness::error_metric(num, ex);
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double data_scale(const NodeSet& nodes, const problems::AnalyticCase& pc) {
  double scale = 0.0;
  for (const auto& b : nodes.boundary)
    scale = std::max(scale, b.bc == BcKind::Dirichlet ? std::abs(pc.dirichlet(b.point))
                                                      : std::abs(pc.neumann(b.point, b.normal)));
  return scale;
}

}  // namespace

TEST_CASE("Q equals the BKM collocation matrix for both schemes") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  const NodeSet nodes = square(26);
  for (Scheme scheme : {Scheme::Unsymmetric, Scheme::Symmetric}) {
    const auto q = assemble_Q(nodes, pc.op, scheme);
    const auto a = scheme == Scheme::Symmetric ? bkm::assemble_symmetric(nodes, pc).matrix
                                               : bkm::assemble_unsymmetric(nodes, pc).matrix;
    REQUIRE(q.rows() == 26);
    for (std::size_t i = 0; i < 26; ++i)
      for (std::size_t j = 0; j < 26; ++j) CHECK(q(i, j) == a(i, j));
    if (scheme == Scheme::Symmetric) CHECK(linalg::asymmetry_inf(q) <= 1e-12 * q.norm_inf());
  }
}

TEST_CASE("Q for a single Dirichlet knot is [[1]]") {
  NodeSet s;
  s.dim = 2;
  s.boundary.push_back({Point(0.3, 0.1), Vector(0.0, 1.0), BcKind::Dirichlet});
  const auto q = assemble_Q(s, OperatorSpec::helmholtz(2, std::sqrt(2.0)));
  CHECK(q(0, 0) == 1.0);
}

TEST_CASE("top-order rhs for M = 2 is R{f} = -8 sin x cos y at Dirichlet knots") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  const NodeSet nodes = square(26);
  const bkm::TrialSpace trial(nodes, pc.op, Scheme::Unsymmetric);
  const auto b2 = rhs_for_order(2, trial, pc, {});
  for (std::size_t i = 0; i < nodes.boundary_count(); ++i) {
    const auto& k = nodes.boundary[i];
    if (k.bc == BcKind::Dirichlet) {
      CHECK(b2[i] == doctest::Approx(-8 * std::sin(k.point.x()) * std::cos(k.point.y())).epsilon(1e-14));
    } else {
      // d/dn of -8 sin x cos y
      const Vector g(-8 * std::cos(k.point.x()) * std::cos(k.point.y()), 8 * std::sin(k.point.x()) * std::sin(k.point.y()));
      CHECK(b2[i] == doctest::Approx(dot(g, k.normal)).epsilon(1e-12));
    }
  }
}

TEST_CASE("order-0 and order-1 rhs match direct re-summation over the higher orders") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  const NodeSet nodes = square(20);
  const auto sol = solve(nodes, pc, {.truncation_order = 3});
  const auto& betas = sol.betas();
  const bkm::TrialSpace& trial = sol.trial();
  for (int n : {0, 1}) {
    const std::vector<std::vector<double>> higher(betas.begin() + n + 1, betas.end());
    const auto bn = rhs_for_order(n, trial, pc, higher);
    for (std::size_t i = 0; i < nodes.boundary_count(); ++i) {
      const auto& row = nodes.boundary[i];
      const bool dir = row.bc == BcKind::Dirichlet;
      double v = n == 0 ? (dir ? pc.dirichlet(row.point) : pc.neumann(row.point, row.normal))
                        : (dir ? pc.forcing(row.point) : dot(pc.iterated_forcing_gradient(0, row.point), row.normal));
      double mass = std::abs(v);
      for (int m = 3; m > n; --m) {
        for (std::size_t k = 0; k < nodes.boundary_count(); ++k) {
          const Point& c = nodes.boundary[k].point;
          const double basis = dir ? kernels::general_solution(pc.op, m - n, row.point, c)
                                   : dot(kernels::kernel_gradient(pc.op, m - n, row.point, c), row.normal);
          v -= betas[m][k] * basis;
          mass += std::abs(betas[m][k] * basis);
        }
      }
      CHECK(std::abs(bn[i] - v) <= 1e-13 * std::max(1.0, mass));
    }
  }
}

TEST_CASE("homogeneous problems give beta^n = 0 for n >= 1 and reproduce BKM exactly") {
  GeometryConfig g = GeometryConfig::sphere_defaults();
  g.boundary_count = 50;
  g.neumann_surfaces = {"left"};
  const NodeSet sphere = geometry::generate(g);
  GeometryConfig d = GeometryConfig::disk_defaults();
  d.interior_count = 5;
  const NodeSet disk = geometry::generate(d);
  const std::vector<std::pair<NodeSet, problems::AnalyticCase>> cases{
      {sphere, problems::helmholtz3d_homogeneous()},
      {sphere, problems::convdiff3d(1.0)},
      {disk, problems::disk_helmholtz_homogeneous()},
  };
  for (const auto& [nodes, pc] : cases) {
    NodeSet bare = nodes;
    bare.interior.clear();
    const auto bkm_sol = bkm::solve(bare, pc);
    for (int m : {0, 1, 3}) {
      const auto sol = solve(nodes, pc, {.truncation_order = m});
      REQUIRE(sol.betas().size() == static_cast<std::size_t>(m) + 1);
      for (int n = 1; n <= m; ++n)
        for (double b : sol.betas()[n]) CHECK(b == 0.0);
      for (const auto& p : nodes.eval_points) {
        const double u = bkm_sol.evaluate(p);
        CHECK(std::abs(sol.evaluate(p) - u) <= 1e-12 * std::max(1.0, std::abs(u)));
      }
    }
  }
}

TEST_CASE("truncation: M = 2 and M = 3 errors agree within 1%, orders above 2 vanish") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  const NodeSet nodes = square(26);
  const auto s2 = solve(nodes, pc, {.truncation_order = 2});
  const auto s3 = solve(nodes, pc, {.truncation_order = 3});
  const double e2 = rms_error(nodes, pc, s2);
  const double e3 = rms_error(nodes, pc, s3);
  CHECK(std::abs(e2 - e3) <= 0.01 * e2);
  const auto s4 = solve(nodes, pc, {.truncation_order = 4});
  const double b0 = norm2(s4.betas()[0]);
  CHECK(norm2(s3.betas()[3]) <= 1e-10 * norm2(s3.betas()[0]));
  CHECK(norm2(s4.betas()[3]) <= 1e-10 * b0);
  CHECK(norm2(s4.betas()[4]) <= 1e-10 * b0);
}

TEST_CASE("one LU factorization regardless of M") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  const NodeSet nodes = square(20);
  for (int m = 0; m <= 4; ++m) {
    const long before = linalg::lu_factor_call_count();
    solve(nodes, pc, {.truncation_order = m});
    CHECK(linalg::lu_factor_call_count() - before == 1);
  }
}

TEST_CASE("missing iterated forcing is a config error naming the operator power") {
  auto pc = problems::helmholtz2d_inhomogeneous();
  pc.max_forcing_order = 0;
  const NodeSet nodes = square(12);
  CHECK_NOTHROW(solve(nodes, pc, {.truncation_order = 1}));
  try {
    solve(nodes, pc, {.truncation_order = 2});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("R^1{f}") != std::string::npos);
  }
}

TEST_CASE("interior knots are never read") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  const NodeSet with = square(26, 9);
  NodeSet without = with;
  without.interior.clear();
  NodeSet scrambled = with;
  for (auto& p : scrambled.interior) p = Point(1e6, -1e6);
  const auto a = solve(with, pc);
  const auto b = solve(without, pc);
  const auto c = solve(scrambled, pc);
  for (const auto& p : with.eval_points) {
    CHECK(a.evaluate(p) == b.evaluate(p));
    CHECK(a.evaluate(p) == c.evaluate(p));
  }
}

TEST_CASE("order-0 collocation is exact at Dirichlet knots") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  for (int L : {8, 12}) {
    const NodeSet nodes = square(L);
    const double scale = data_scale(nodes, pc);
    for (Scheme scheme : {Scheme::Unsymmetric, Scheme::Symmetric}) {
      const auto sol = solve(nodes, pc, {.truncation_order = 2, .scheme = scheme});
      for (const auto& k : nodes.boundary) {
        if (k.bc == BcKind::Dirichlet) CHECK(std::abs(sol.evaluate(k.point) - pc.dirichlet(k.point)) <= 1e-8 * scale);
      }
    }
  }
}

TEST_CASE("at production sizes the Dirichlet residual stays within the rounding bound of its sums") {
  // cond(Q) ~ 1e17 at L = 26, so |beta| grows to ~1e9 and exactness is limited
  // by eps times the mass of the cancelling sums.
  const auto pc = problems::helmholtz2d_inhomogeneous();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int L : {20, 26}) {
    const NodeSet nodes = square(L);
    const double scale = data_scale(nodes, pc);
    const auto sol = solve(nodes, pc);
    for (const auto& k : nodes.boundary) {
      if (k.bc != BcKind::Dirichlet) continue;
      double mass = 0.0;
      for (int n = 0; n <= 2; ++n)
        for (std::size_t j = 0; j < nodes.boundary_count(); ++j)
          mass += std::abs(sol.betas()[n][j] * kernels::general_solution(pc.op, n, k.point, nodes.boundary[j].point));
      CHECK(std::abs(sol.evaluate(k.point) - pc.dirichlet(k.point)) <= 1e-8 * scale + 8.0 * L * eps * mass);
    }
  }
}

TEST_CASE("evaluate matches term-by-term summation and zero betas give zero") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  const NodeSet nodes = square(16);
  const auto sol = solve(nodes, pc, {.truncation_order = 3});
  for (std::size_t i = 0; i < 40; ++i) {
    const Point& x = nodes.eval_points[i];
    double s = 0.0, mass = 0.0;
    for (int n = 0; n <= 3; ++n) {
      for (std::size_t k = 0; k < nodes.boundary_count(); ++k) {
        const double t = sol.betas()[n][k] * kernels::general_solution(pc.op, n, x, nodes.boundary[k].point);
        s += t;
        mass += std::abs(t);
      }
    }
    CHECK(std::abs(sol.evaluate(x) - s) <= 1e-12 * std::max(1.0, mass));
    double by_order = 0.0;
    for (int n = 0; n <= 3; ++n) by_order += sol.order_term(n, x);
    CHECK(std::abs(sol.evaluate(x) - by_order) <= 1e-12 * std::max(1.0, mass));
  }
  const BpmSolution zero(sol.trial(), std::vector<std::vector<double>>(3, std::vector<double>(16, 0.0)), 1.0, false);
  CHECK(zero.evaluate(Point(1.0, 1.0)) == 0.0);
  CHECK(norm(zero.gradient(Point(1.0, 1.0))) == 0.0);
}

TEST_CASE("gradient is consistent with central differences") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  const NodeSet nodes = square(10);
  const auto sol = solve(nodes, pc);
  for (std::size_t i = 0; i < 20; ++i) {
    const Point& x = nodes.eval_points[i];
    const Vector g = sol.gradient(x);
    const Vector fd = gradient_fd([&](const Point& p) { return sol.evaluate(p); }, x, 1e-4);
    CHECK(norm(g - fd) <= 1e-6 * std::max(1.0, norm(g)));
  }
}

TEST_CASE("truncation order outside [0, 8] is rejected") {
  const auto pc = problems::helmholtz2d_inhomogeneous();
  const NodeSet nodes = square(8);
  CHECK_THROWS_AS(solve(nodes, pc, {.truncation_order = -1}), ConfigError);
  CHECK_THROWS_AS(solve(nodes, pc, {.truncation_order = 9}), ConfigError);
  CHECK_NOTHROW(solve(nodes, pc, {.truncation_order = 8}));
}
