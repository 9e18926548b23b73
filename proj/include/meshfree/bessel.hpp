#pragma once

// Bessel functions of the first kind, J_nu and I_nu, for integer and
// half-integer orders nu >= 0 and real arguments z >= 0.
//
// Evaluation strategy:
//   z <= 12            ascending power series (J and I)
//   12 < z <= 40       J: Miller backward recurrence (integer nu) or the
//                      closed trigonometric form (half-integer nu);
//                      I: ascending series (all terms positive)
//   z > 40             Hankel asymptotic expansion (terminates, hence exact,
//                      for half-integer nu)
//
// Unsupported orders (negative, not a multiple of 1/2, or above
// kMaxBesselOrder) and negative arguments raise std::domain_error.

namespace meshfree::kernels {

inline constexpr double kMaxBesselOrder = 30.0;

/// J_nu(z).
double bessel_j(double nu, double z);

/// e^{-z} I_nu(z). The unscaled value is e^{z} * bessel_i_scaled(nu, z).
double bessel_i_scaled(double nu, double z);

/// z^{-nu} J_nu(z). Entire in z; equals 1 / (2^nu Gamma(nu + 1)) at z = 0.
double bessel_j_reduced(double nu, double z);

/// e^{-z} z^{-nu} I_nu(z).
double bessel_i_reduced_scaled(double nu, double z);

}  // namespace meshfree::kernels
