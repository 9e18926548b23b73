#include "meshfree/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "meshfree/bessel.hpp"
#include "meshfree/errors.hpp"
#include "meshfree/random.hpp"

namespace meshfree::kernels {
namespace {

bool uses_j(const OperatorSpec& op) { return op.kind() == OperatorKind::Helmholtz; }

// c * z^p, with the convention that a vanishing coefficient contributes zero
// even when p < 0 (those terms only appear for low orders with c == 0).
double scaled_power(double c, double z, int p) {
  if (c == 0.0) return 0.0;
  return c * std::pow(z, p);
}

}  // namespace

AmCoefficients::AmCoefficients(const OperatorSpec& op, int max_order) {
  if (max_order < 0 || max_order > kMaxKernelOrder) {
    throw std::domain_error("AmCoefficients: order must lie in [0, " + std::to_string(kMaxKernelOrder) + "]");
  }
  const double k = op.wavenumber();
  const double d = op.kind() == OperatorKind::ConvectionDiffusion ? op.diffusivity() : 1.0;
  values_.resize(static_cast<std::size_t>(max_order) + 1);
  values_[0] = 1.0;
  for (int m = 1; m <= max_order; ++m) {
    values_[static_cast<std::size_t>(m)] = values_[static_cast<std::size_t>(m) - 1] / (2.0 * m * k * k * d);
  }
}

GeneralSolution::GeneralSolution(const OperatorSpec& op, int max_order)
    : op_(op), coeffs_(op, max_order), drift_(Vector::zero(op.dim())) {
  if (op.kind() == OperatorKind::ConvectionDiffusion) drift_ = (0.5 / op.diffusivity()) * op.velocity();
}

void GeneralSolution::check(int m, const Point& x, const Point& src) const {
  if (x.dim() != op_.dim() || src.dim() != op_.dim()) throw std::domain_error("general solution: dimension mismatch");
  if (m < 0 || m > coeffs_.max_order()) {
    throw std::domain_error("general solution: order " + std::to_string(m) + " outside [0, " +
                            std::to_string(coeffs_.max_order()) + "]");
  }
}

GeneralSolution::Radial GeneralSolution::radial(int m, double r, bool with_second) const {
  const double k = op_.wavenumber();
  const double z = k * r;
  const double nu = 0.5 * op_.dim() - 1.0 + m;
  const bool j = uses_j(op_);
  const double s = j ? -1.0 : 1.0;
  auto reduced = [&](double order) { return j ? bessel_j_reduced(order, z) : bessel_i_reduced_scaled(order, z); };

  const double a = coeffs_[m];
  const double l0 = reduced(nu);
  const double l1 = reduced(nu + 1.0);

  Radial out;
  out.log_scale = j ? 0.0 : z;
  out.f = a * scaled_power(1.0, z, 2 * m) * l0;
  out.g1 = k * k * a * (scaled_power(2.0 * m, z, 2 * m - 2) * l0 + s * scaled_power(1.0, z, 2 * m) * l1);
  if (with_second) {
    const double l2 = reduced(nu + 2.0);
    out.g2 = k * k * k * k * a *
             (scaled_power(2.0 * m * (2.0 * m - 2.0), z, 2 * m - 4) * l0 +
              s * scaled_power(4.0 * m, z, 2 * m - 2) * l1 + scaled_power(1.0, z, 2 * m) * l2);
  }
  return out;
}

double GeneralSolution::value(int m, const Point& x, const Point& src) const {
  check(m, x, src);
  const Vector d = x - src;
  const Radial rad = radial(m, norm(d), false);
  if (op_.kind() == OperatorKind::ConvectionDiffusion) return std::exp(dot(drift_, d) + rad.log_scale) * rad.f;
  return rad.log_scale == 0.0 ? rad.f : std::exp(rad.log_scale) * rad.f;
}

Vector GeneralSolution::gradient(int m, const Point& x, const Point& src) const {
  check(m, x, src);
  const Vector d = x - src;
  const Radial rad = radial(m, norm(d), false);
  if (op_.kind() == OperatorKind::ConvectionDiffusion) {
    return std::exp(dot(drift_, d) + rad.log_scale) * (rad.f * drift_ + rad.g1 * d);
  }
  return (std::exp(rad.log_scale) * rad.g1) * d;
}

Vector GeneralSolution::hessian_times(int m, const Point& x, const Point& src, const Vector& w) const {
  if (!op_.self_adjoint()) {
    throw UnsupportedOperatorError("kernel Hessian requires a self-adjoint operator, got " + to_string(op_.kind()));
  }
  check(m, x, src);
  const Vector d = x - src;
  const Radial rad = radial(m, norm(d), true);
  return std::exp(rad.log_scale) * (rad.g1 * w + (rad.g2 * dot(d, w)) * d);
}

double GeneralSolution::mixed_second(int m, const Point& x, const Vector& n_field, const Point& src,
                                     const Vector& n_src) const {
  if (!op_.self_adjoint()) {
    throw UnsupportedOperatorError("mixed second derivative requires a self-adjoint operator, got " +
                                   to_string(op_.kind()));
  }
  return -dot(n_field, hessian_times(m, x, src, n_src));
}

double general_solution(const OperatorSpec& op, int m, const Point& x, const Point& src) {
  return GeneralSolution(op).value(m, x, src);
}

Vector kernel_gradient(const OperatorSpec& op, int m, const Point& x, const Point& src) {
  return GeneralSolution(op).gradient(m, x, src);
}

double kernel_mixed_second(const OperatorSpec& op, int m, const Point& x, const Vector& n_field, const Point& src,
                           const Vector& n_src) {
  return GeneralSolution(op).mixed_second(m, x, n_field, src, n_src);
}

namespace {

struct LoweringTerms {
  double residual;
  double scale;
};

LoweringTerms lowering_terms(const OperatorSpec& op, int m, const Point& x, const Point& src, const FdOptions& opts) {
  if (m < 1) throw std::invalid_argument("operator_lowering_check: requires m >= 1");
  const GeneralSolution kernel(op);
  const ScalarField field = [&](const Point& p) { return kernel.value(m, p, src); };
  const FdApplication applied = apply_operator_fd_terms(op, field, x, opts);
  const double lower = kernel.value(m - 1, x, src);
  return {std::abs(applied.value - lower), std::max(std::abs(lower), applied.scale)};
}

}  // namespace

double operator_lowering_check(const OperatorSpec& op, int m, const Point& x, const Point& src,
                               const FdOptions& opts) {
  return lowering_terms(op, m, x, src, opts).residual;
}

double relative_lowering_residual(const OperatorSpec& op, int m, const Point& x, const Point& src,
                                  const FdOptions& opts) {
  const LoweringTerms t = lowering_terms(op, m, x, src, opts);
  return t.scale > 0.0 ? t.residual / t.scale : t.residual;
}

double relative_homogeneity_residual(const OperatorSpec& op, const Point& x, const Point& src,
                                     const FdOptions& opts) {
  const GeneralSolution kernel(op);
  const ScalarField field = [&](const Point& p) { return kernel.value(0, p, src); };
  const FdApplication applied = apply_operator_fd_terms(op, field, x, opts);
  return applied.scale > 0.0 ? std::abs(applied.value) / applied.scale : std::abs(applied.value);
}

double KernelAudit::worst() const {
  double w = 0.0;
  for (const auto& e : entries) w = std::max(w, e.max_relative_residual);
  return w;
}

KernelAudit audit_kernels(std::uint64_t seed, int samples, int max_order) {
  struct Family {
    std::string name;
    OperatorSpec op;
  };
  std::vector<Family> families;
  for (int dim : {2, 3}) {
    const Vector v_bench = dim == 2 ? Vector(-1.0, -1.0) : Vector(-1.0, -1.0, -1.0);
    const Vector v_general = dim == 2 ? Vector(-0.6, 0.4) : Vector(-0.6, 0.4, 0.3);
    families.push_back({"helmholtz", OperatorSpec::helmholtz(dim, dim == 2 ? std::sqrt(2.0) : std::sqrt(3.0))});
    families.push_back({"diffusion-reaction", OperatorSpec::diffusion_reaction(dim, 1.5)});
    families.push_back({"convection-diffusion", OperatorSpec::convection_diffusion(dim, 1.0, v_bench, 0.0)});
    families.push_back(
        {"convection-diffusion(D=0.8,kappa=0.5)", OperatorSpec::convection_diffusion(dim, 0.8, v_general, 0.5)});
  }

  // h = 1e-3 keeps the fourth-order Richardson stencil well clear of roundoff.
  const FdOptions opts{1e-3, true};
  KernelAudit audit;
  Rng rng(seed);
  for (const auto& fam : families) {
    const int dim = fam.op.dim();
    std::vector<std::pair<Point, Point>> pairs;
    for (int i = 0; i < samples; ++i) {
      Point x = Point::zero(dim);
      Point s = Point::zero(dim);
      for (int c = 0; c < dim; ++c) {
        x[c] = rng.uniform(-1.5, 1.5);
        s[c] = rng.uniform(-1.5, 1.5);
      }
      pairs.emplace_back(x, s);
    }
    for (int m = 0; m <= max_order; ++m) {
      KernelAuditEntry entry{fam.name, dim, m, samples, 0.0};
      for (const auto& [x, s] : pairs) {
        const double res = m == 0 ? relative_homogeneity_residual(fam.op, x, s, opts)
                                  : relative_lowering_residual(fam.op, m, x, s, opts);
        entry.max_relative_residual = std::max(entry.max_relative_residual, res);
      }
      audit.entries.push_back(entry);
    }
  }
  return audit;
}

}  // namespace meshfree::kernels
