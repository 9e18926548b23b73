#include "meshfree/operator.hpp"

#include <cmath>
#include <stdexcept>

namespace meshfree {
namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 3) throw std::domain_error("OperatorSpec: dimension must be 2 or 3");
}

struct Stencil {
  double value = 0.0;
  Vector gradient;
  double laplacian = 0.0;
};

Stencil central_stencil(const ScalarField& u, const Point& x, double h) {
  Stencil s;
  s.value = u(x);
  s.gradient = Vector::zero(x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    Point plus = x;
    Point minus = x;
    plus[i] += h;
    minus[i] -= h;
    const double up = u(plus);
    const double um = u(minus);
    s.gradient[i] = (up - um) / (2.0 * h);
    s.laplacian += (up - 2.0 * s.value + um) / (h * h);
  }
  return s;
}

}  // namespace

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Helmholtz: return "helmholtz";
    case OperatorKind::DiffusionReaction: return "diffusion-reaction";
    case OperatorKind::ConvectionDiffusion: return "convection-diffusion";
  }
  return "unknown";
}

OperatorSpec OperatorSpec::helmholtz(int dim, double gamma) {
  check_dim(dim);
  if (!(gamma > 0.0)) throw std::domain_error("Helmholtz operator requires gamma > 0");
  OperatorSpec op;
  op.kind_ = OperatorKind::Helmholtz;
  op.dim_ = dim;
  op.gamma_ = gamma;
  op.velocity_ = Vector::zero(dim);
  return op;
}

OperatorSpec OperatorSpec::diffusion_reaction(int dim, double tau) {
  check_dim(dim);
  if (!(tau > 0.0)) throw std::domain_error("diffusion-reaction operator requires tau > 0");
  OperatorSpec op;
  op.kind_ = OperatorKind::DiffusionReaction;
  op.dim_ = dim;
  op.tau_ = tau;
  op.velocity_ = Vector::zero(dim);
  return op;
}

OperatorSpec OperatorSpec::convection_diffusion(int dim, double diffusivity, const Vector& velocity, double kappa) {
  check_dim(dim);
  if (velocity.dim() != dim) throw std::domain_error("convection-diffusion: velocity dimension mismatch");
  if (!(diffusivity > 0.0)) throw std::domain_error("convection-diffusion operator requires D > 0");
  OperatorSpec op;
  op.kind_ = OperatorKind::ConvectionDiffusion;
  op.dim_ = dim;
  op.diffusivity_ = diffusivity;
  op.velocity_ = velocity;
  op.kappa_ = kappa;
  if (!(op.mu() > 0.0)) throw std::domain_error("convection-diffusion operator requires mu > 0");
  return op;
}

double OperatorSpec::mu() const {
  if (kind_ != OperatorKind::ConvectionDiffusion) return kind_ == OperatorKind::DiffusionReaction ? tau_ : 0.0;
  const double drift = norm(velocity_) / (2.0 * diffusivity_);
  return std::sqrt(drift * drift + kappa_ / diffusivity_);
}

double OperatorSpec::wavenumber() const {
  switch (kind_) {
    case OperatorKind::Helmholtz: return gamma_;
    case OperatorKind::DiffusionReaction: return tau_;
    case OperatorKind::ConvectionDiffusion: return mu();
  }
  return 0.0;
}

double OperatorSpec::apply(double value, const Vector& gradient, double laplacian) const {
  switch (kind_) {
    case OperatorKind::Helmholtz: return laplacian + gamma_ * gamma_ * value;
    case OperatorKind::DiffusionReaction: return laplacian - tau_ * tau_ * value;
    case OperatorKind::ConvectionDiffusion:
      return diffusivity_ * laplacian - dot(velocity_, gradient) - kappa_ * value;
  }
  return 0.0;
}

namespace {

FdApplication fd_once(const OperatorSpec& op, const ScalarField& u, const Point& x, double h) {
  const Stencil s = central_stencil(u, x, h);
  FdApplication out;
  out.value = op.apply(s.value, s.gradient, s.laplacian);
  switch (op.kind()) {
    case OperatorKind::Helmholtz:
      out.scale = std::abs(s.laplacian) + op.gamma() * op.gamma() * std::abs(s.value);
      break;
    case OperatorKind::DiffusionReaction:
      out.scale = std::abs(s.laplacian) + op.tau() * op.tau() * std::abs(s.value);
      break;
    case OperatorKind::ConvectionDiffusion:
      out.scale = op.diffusivity() * std::abs(s.laplacian) + std::abs(dot(op.velocity(), s.gradient)) +
                  std::abs(op.kappa() * s.value);
      break;
  }
  return out;
}

}  // namespace

FdApplication apply_operator_fd_terms(const OperatorSpec& op, const ScalarField& u, const Point& x,
                                      const FdOptions& opts) {
  if (x.dim() != op.dim()) throw std::domain_error("apply_operator_fd: dimension mismatch");
  const FdApplication coarse = fd_once(op, u, x, opts.step);
  if (!opts.richardson) return coarse;
  const FdApplication fine = fd_once(op, u, x, 0.5 * opts.step);
  return {(4.0 * fine.value - coarse.value) / 3.0, fine.scale};
}

double apply_operator_fd(const OperatorSpec& op, const ScalarField& u, const Point& x, const FdOptions& opts) {
  return apply_operator_fd_terms(op, u, x, opts).value;
}

Vector gradient_fd(const ScalarField& u, const Point& x, double step) {
  Vector g = Vector::zero(x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    Point plus = x;
    Point minus = x;
    plus[i] += step;
    minus[i] -= step;
    g[i] = (u(plus) - u(minus)) / (2.0 * step);
  }
  return g;
}

}  // namespace meshfree
