#pragma once

#include <functional>
#include <string>

#include "meshfree/point.hpp"

namespace meshfree {

enum class OperatorKind { Helmholtz, DiffusionReaction, ConvectionDiffusion };

std::string to_string(OperatorKind kind);

/// Linear constant-coefficient operator R{u}:
///   Helmholtz            lap(u) + gamma^2 u
///   DiffusionReaction    lap(u) - tau^2 u
///   ConvectionDiffusion  D lap(u) - v . grad(u) - kappa u
class OperatorSpec {
 public:
  static OperatorSpec helmholtz(int dim, double gamma);
  static OperatorSpec diffusion_reaction(int dim, double tau);
  static OperatorSpec convection_diffusion(int dim, double diffusivity, const Vector& velocity, double kappa);

  OperatorKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double gamma() const { return gamma_; }
  double tau() const { return tau_; }
  double diffusivity() const { return diffusivity_; }
  const Vector& velocity() const { return velocity_; }
  double kappa() const { return kappa_; }

  /// sqrt((|v| / 2D)^2 + kappa / D), recomputed on every call.
  double mu() const;

  /// Scale inside the Bessel argument: gamma, tau or mu.
  double wavenumber() const;

  bool self_adjoint() const { return kind_ != OperatorKind::ConvectionDiffusion; }

  /// R applied to a field given its value, gradient and Laplacian at a point.
  double apply(double value, const Vector& gradient, double laplacian) const;

 private:
  OperatorSpec() = default;

  OperatorKind kind_ = OperatorKind::Helmholtz;
  int dim_ = 2;
  double gamma_ = 0.0;
  double tau_ = 0.0;
  double diffusivity_ = 1.0;
  Vector velocity_ = Vector::zero(2);
  double kappa_ = 0.0;
};

using ScalarField = std::function<double(const Point&)>;

struct FdOptions {
  double step = 1e-4;
  bool richardson = true;
};

/// Value of R{u}(x) and the sum of the magnitudes of its individual terms,
/// the latter being the natural scale for judging cancellation.
struct FdApplication {
  double value = 0.0;
  double scale = 0.0;
};

/// Central-difference application of `op` to an arbitrary scalar field.
/// With Richardson enabled the stencil is evaluated at h and h/2 and combined
/// to fourth order.
FdApplication apply_operator_fd_terms(const OperatorSpec& op, const ScalarField& u, const Point& x,
                                      const FdOptions& opts = {});

double apply_operator_fd(const OperatorSpec& op, const ScalarField& u, const Point& x, const FdOptions& opts = {});

/// Central-difference gradient.
Vector gradient_fd(const ScalarField& u, const Point& x, double step = 1e-5);

}  // namespace meshfree
