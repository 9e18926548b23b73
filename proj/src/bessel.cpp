#include "meshfree/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace meshfree::kernels {
namespace {

constexpr double kSeriesLimit = 12.0;
constexpr double kAsymptoticLimit = 40.0;

// Returns 2*nu after validating that nu is a supported integer or half-integer.
int validated_twice_order(double nu, double z) {
  if (!(nu >= 0.0) || nu > kMaxBesselOrder) {
    throw std::domain_error("bessel: unsupported order " + std::to_string(nu));
  }
  const double twice = 2.0 * nu;
  if (twice != std::floor(twice)) {
    throw std::domain_error("bessel: order must be an integer or half-integer, got " + std::to_string(nu));
  }
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw std::domain_error("bessel: argument must be finite and non-negative");
  }
  return static_cast<int>(twice);
}

// sum_k s^k (z^2/4)^k / (2^nu k! Gamma(nu + k + 1)), s = -1 for J and +1 for I.
double reduced_series(double nu, double z, double sign) {
  const double q = 0.25 * z * z;
  double term = 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
  double sum = term;
  double largest = std::abs(term);
  for (int k = 1; k < 1000; ++k) {
    term *= sign * q / (k * (nu + k));
    sum += term;
    const double mag = std::abs(term);
    largest = std::max(largest, mag);
    if (k * k > q && (mag <= 1e-17 * std::abs(sum) || mag <= 1e-19 * largest)) break;
  }
  return sum;
}

struct HankelSums {
  double p = 1.0;    // sum_j (-1)^j a_{2j} / z^{2j}
  double q = 0.0;    // sum_j (-1)^j a_{2j+1} / z^{2j+1}
  double alt = 1.0;  // sum_k (-1)^k a_k / z^k
};

// a_k(nu) = prod_{i=1..k} (4 nu^2 - (2i - 1)^2) / (k! 8^k). The product vanishes
// for half-integer nu, so the sums are exact there; for integer nu the series
// is truncated before the terms start to grow.
HankelSums hankel_sums(double nu, double z) {
  const double mu4 = 4.0 * nu * nu;
  HankelSums s;
  double t = 1.0;
  double prev = 1.0;
  for (int k = 1; k <= 500; ++k) {
    const double odd = 2.0 * k - 1.0;
    t *= (mu4 - odd * odd) / (8.0 * k * z);
    if (t == 0.0) break;
    const double mag = std::abs(t);
    if (odd * odd > mu4 && mag > prev) break;
    switch (k % 4) {
      case 1: s.q += t; break;
      case 2: s.p -= t; break;
      case 3: s.q -= t; break;
      default: s.p += t; break;
    }
    s.alt += (k % 2 == 1) ? -t : t;
    if (mag < 1e-18) break;
    prev = mag;
  }
  return s;
}

double j_asymptotic(double nu, double z) {
  const HankelSums s = hankel_sums(nu, z);
  const double omega = z - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * z)) * (s.p * std::cos(omega) - s.q * std::sin(omega));
}

double i_scaled_asymptotic(double nu, double z) {
  // The e^{-2z} companion term is below 1e-34 relative for z > 40.
  return hankel_sums(nu, z).alt / std::sqrt(2.0 * std::numbers::pi * z);
}

// Miller backward recurrence for integer order, normalized with
// J_0 + 2 sum_{k>=1} J_{2k} = 1.
double j_miller(int n, double z) {
  const int top = std::max(n, static_cast<int>(z));
  int start = top + 30 + static_cast<int>(std::sqrt(40.0 * top));
  start += start % 2;
  double above = 0.0;
  double here = 1.0;
  double even_sum = 0.0;
  double wanted = 0.0;
  for (int k = start; k > 0; --k) {
    const double below = (2.0 * k / z) * here - above;  // J_{k-1}
    above = here;
    here = below;
    const int order = k - 1;
    if (order == n) wanted = here;
    if (order > 0 && order % 2 == 0) even_sum += here;
    if (std::abs(here) > 1e200) {
      here *= 1e-200;
      above *= 1e-200;
      even_sum *= 1e-200;
      wanted *= 1e-200;
    }
  }
  return wanted / (2.0 * even_sum + here);
}

}  // namespace

double bessel_j(double nu, double z) {
  const int twice = validated_twice_order(nu, z);
  if (z <= kSeriesLimit) return std::pow(z, nu) * reduced_series(nu, z, -1.0);
  if (twice % 2 == 1 || z > kAsymptoticLimit) return j_asymptotic(nu, z);
  return j_miller(twice / 2, z);
}

double bessel_i_scaled(double nu, double z) {
  validated_twice_order(nu, z);
  if (z <= kAsymptoticLimit) return std::exp(-z) * std::pow(z, nu) * reduced_series(nu, z, 1.0);
  return i_scaled_asymptotic(nu, z);
}

double bessel_j_reduced(double nu, double z) {
  validated_twice_order(nu, z);
  if (z <= kSeriesLimit) return reduced_series(nu, z, -1.0);
  return bessel_j(nu, z) / std::pow(z, nu);
}

double bessel_i_reduced_scaled(double nu, double z) {
  validated_twice_order(nu, z);
  if (z <= kAsymptoticLimit) return std::exp(-z) * reduced_series(nu, z, 1.0);
  return i_scaled_asymptotic(nu, z) / std::pow(z, nu);
}

}  // namespace meshfree::kernels
