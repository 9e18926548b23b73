#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meshfree/operator.hpp"
#include "meshfree/point.hpp"

namespace meshfree::kernels {

inline constexpr int kMaxKernelOrder = 8;

/// Normalization factors A_0..A_M with A_0 = 1 and A_m = A_{m-1} / (2 m k^2 D),
/// k being the operator wavenumber (gamma, tau or mu) and D the diffusivity
/// (1 for Helmholtz and diffusion-reaction). With this choice R{u_m} = u_{m-1}
/// holds exactly for every family.
class AmCoefficients {
 public:
  AmCoefficients(const OperatorSpec& op, int max_order);

  double operator[](int m) const { return values_.at(static_cast<std::size_t>(m)); }
  int max_order() const { return static_cast<int>(values_.size()) - 1; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Nonsingular general solutions of order m,
///   Helmholtz            A_m (g r)^{1-n/2+m} J_{n/2-1+m}(g r)
///   DiffusionReaction    A_m (t r)^{1-n/2+m} I_{n/2-1+m}(t r)
///   ConvectionDiffusion  A_m (u r)^{1-n/2+m} exp(v.(x-s)/2D) I_{n/2-1+m}(u r)
/// and their derivatives with respect to the field point x. All quantities are
/// evaluated from the reduced Bessel functions z^{-nu} J_nu(z), so nothing
/// divides by r and r = 0 needs no special handling.
class GeneralSolution {
 public:
  explicit GeneralSolution(const OperatorSpec& op, int max_order = kMaxKernelOrder);

  const OperatorSpec& op() const { return op_; }
  const AmCoefficients& coefficients() const { return coeffs_; }
  int max_order() const { return coeffs_.max_order(); }

  double value(int m, const Point& x, const Point& src) const;
  Vector gradient(int m, const Point& x, const Point& src) const;

  /// H(x - src) w, H the Hessian of u_m. Self-adjoint operators only.
  Vector hessian_times(int m, const Point& x, const Point& src, const Vector& w) const;

  /// d/dn_field d/dn_src u_m(x - src) = -n_field^T H(x - src) n_src.
  /// Self-adjoint operators only.
  double mixed_second(int m, const Point& x, const Vector& n_field, const Point& src, const Vector& n_src) const;

 private:
  // u_m(d) = exp(log_scale) * f,  grad = exp(log_scale) * g1 * d,
  // Hessian = exp(log_scale) * (g1 I + g2 d d^T)   (radially symmetric part)
  struct Radial {
    double f = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    double log_scale = 0.0;
  };

  Radial radial(int m, double r, bool with_second) const;
  void check(int m, const Point& x, const Point& src) const;

  OperatorSpec op_;
  AmCoefficients coeffs_;
  Vector drift_;  // v / 2D for convection-diffusion, zero otherwise
};

double general_solution(const OperatorSpec& op, int m, const Point& x, const Point& src);
Vector kernel_gradient(const OperatorSpec& op, int m, const Point& x, const Point& src);
double kernel_mixed_second(const OperatorSpec& op, int m, const Point& x, const Vector& n_field, const Point& src,
                           const Vector& n_src);

/// |R_FD{u_m}(x) - u_{m-1}(x; src)|, R applied by central differences. m >= 1.
double operator_lowering_check(const OperatorSpec& op, int m, const Point& x, const Point& src,
                               const FdOptions& opts = {});

/// lowering residual divided by max(|u_{m-1}|, magnitude of the FD terms).
double relative_lowering_residual(const OperatorSpec& op, int m, const Point& x, const Point& src,
                                  const FdOptions& opts = {});

/// |R_FD{u_0}| relative to the magnitude of the FD terms.
double relative_homogeneity_residual(const OperatorSpec& op, const Point& x, const Point& src,
                                     const FdOptions& opts = {});

struct KernelAuditEntry {
  std::string family;
  int dim = 0;
  int order = 0;  // 0: homogeneity, m >= 1: lowering u_m -> u_{m-1}
  int samples = 0;
  double max_relative_residual = 0.0;
};

struct KernelAudit {
  std::vector<KernelAuditEntry> entries;
  double worst() const;
  bool passed(double tolerance) const { return worst() <= tolerance; }
};

/// Homogeneity and lowering (m = 1..max_order) residuals for all operator
/// families in 2D and 3D at `samples` seeded random point pairs.
KernelAudit audit_kernels(std::uint64_t seed, int samples = 100, int max_order = 3);

}  // namespace meshfree::kernels
