#include "meshfree/drm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "meshfree/errors.hpp"
#include "meshfree/linalg.hpp"

namespace meshfree::drm {

DrmFit::DrmFit(const OperatorSpec& op, int pairing_order, std::vector<Point> centers, std::vector<double> lambda,
               double condition, double interpolation_residual)
    : kernel_(op),
      pairing_order_(pairing_order),
      centers_(std::move(centers)),
      lambda_(std::move(lambda)),
      condition_(condition),
      residual_(interpolation_residual) {}

double DrmFit::interpolant(const Point& x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < centers_.size(); ++j) s += lambda_[j] * kernel_.value(pairing_order_, x, centers_[j]);
  return s;
}

std::vector<Point> drm_centers(const geometry::NodeSet& nodes) {
  std::vector<Point> centers;
  centers.reserve(nodes.boundary_count() + nodes.interior_count());
  for (const auto& b : nodes.boundary) centers.push_back(b.point);
  centers.insert(centers.end(), nodes.interior.begin(), nodes.interior.end());
  return centers;
}

DrmFit fit_forcing(const geometry::NodeSet& nodes, const ScalarField& forcing, const OperatorSpec& op,
                   int pairing_order) {
  DrmFit fit = fit_forcing(drm_centers(nodes), forcing, op, pairing_order);
  fit.set_boundary_only(nodes.interior_count() == 0);
  return fit;
}

DrmFit fit_forcing(const std::vector<Point>& centers, const ScalarField& forcing, const OperatorSpec& op,
                   int pairing_order) {
  if (centers.empty()) throw ConfigError("fit_forcing: no centers");
  if (pairing_order < 0 || pairing_order + 1 > kernels::kMaxKernelOrder) {
    throw ConfigError("fit_forcing: pairing order must lie in [0, " + std::to_string(kernels::kMaxKernelOrder - 1) +
                      "]");
  }
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      if (distance(centers[i], centers[j]) <= 1e-8) {
        throw ConfigError("fit_forcing: duplicate centers " + std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }

  const kernels::GeneralSolution kernel(op);
  const std::size_t n = centers.size();
  linalg::DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = kernel.value(pairing_order, centers[i], centers[j]);

  std::vector<double> f(n);
  double fmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = forcing(centers[i]);
    fmax = std::max(fmax, std::abs(f[i]));
  }

  linalg::LuFactors lu;
  try {
    lu = linalg::lu_factor(a);
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(e.pivot_index(), std::numeric_limits<double>::infinity(),
                              std::string("DRM interpolation matrix: ") + e.what());
  }
  const double condition = linalg::condition_estimate(lu, a);
  std::vector<double> lambda = fmax == 0.0 ? std::vector<double>(n, 0.0) : linalg::solve_extended(a, f);

  // Accumulated in long double so the measurement does not add its own
  // cancellation error on top of the residual of the stored lambda.
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    long double s = -static_cast<long double>(f[i]);
    for (std::size_t j = 0; j < n; ++j) s += static_cast<long double>(a(i, j)) * lambda[j];
    worst = std::max(worst, static_cast<double>(std::abs(s)));
  }
  const double residual = fmax > 0.0 ? worst / fmax : worst;

  return DrmFit(op, pairing_order, centers, std::move(lambda), condition, residual);
}

double particular_solution(const DrmFit& fit, const Point& x) {
  const int order = fit.pairing_order() + 1;
  double s = 0.0;
  for (std::size_t j = 0; j < fit.centers().size(); ++j) {
    if (fit.lambda()[j] != 0.0) s += fit.lambda()[j] * fit.kernel().value(order, x, fit.centers()[j]);
  }
  return s;
}

Vector particular_solution_gradient(const DrmFit& fit, const Point& x) {
  const int order = fit.pairing_order() + 1;
  Vector g = Vector::zero(x.dim());
  for (std::size_t j = 0; j < fit.centers().size(); ++j) {
    if (fit.lambda()[j] != 0.0) g += fit.lambda()[j] * fit.kernel().gradient(order, x, fit.centers()[j]);
  }
  return g;
}

double particular_solution_normal_derivative(const DrmFit& fit, const Point& x, const Vector& n) {
  return dot(particular_solution_gradient(fit, x), n);
}

}  // namespace meshfree::drm
