#include "adastep/curvature.hpp"

#include <cmath>

#include "adastep/errors.hpp"
#include "adastep/rng.hpp"

namespace adastep {

CurvatureEstimate local_curvature(const GradSample& prev,
                                  const GradSample& curr, double guard_tol) {
  CurvatureEstimate estimate;
  estimate.numer = 0.5 * (curr.grad - prev.grad).squaredNorm();
  const double cross = curr.grad.dot(prev.x - curr.x);
  estimate.denom = curr.value - prev.value + cross;

  // Convexity makes denom <= 0; a near-zero denominator means the secant
  // carries no usable signal, so classify by the numerator instead.
  const double scale = std::abs(prev.value) + std::abs(curr.value) +
                       curr.grad.norm() * (prev.x - curr.x).norm() + 1.0;
  if (estimate.denom >= -guard_tol * scale) {
    if (estimate.numer <= guard_tol * curr.grad.squaredNorm() * scale) {
      estimate.value = 0.0;
    } else {
      estimate.value = std::numeric_limits<double>::infinity();
    }
    return estimate;
  }
  estimate.value = -estimate.numer / estimate.denom;
  return estimate;
}

Point perturb_point(const Point& x0, std::uint64_t seed) {
  Rng rng(seed);
  Point perturbed(x0.size());
  for (Eigen::Index i = 0; i < x0.size(); ++i) {
    perturbed[i] = x0[i] + rng.uniform();
  }
  return perturbed;
}

double initial_curvature(const Objective& objective, const Point& x0,
                         const Point& x_tilde) {
  const double dist = (x_tilde - x0).norm();
  if (dist == 0.0) {
    throw UsageError("initial_curvature: probe point equals x0");
  }
  const GradSample at_x0 = objective.evaluate(x0);
  const GradSample at_probe = objective.evaluate(x_tilde);
  const double grad_dist = (at_probe.grad - at_x0.grad).norm();
  if (grad_dist == 0.0) {
    throw InitError(
        "initial_curvature: gradients coincide along the probe direction; "
        "pass an explicit initial step size");
  }
  return grad_dist / dist;
}

double initial_curvature(const Objective& objective, const Point& x0,
                         std::uint64_t seed) {
  constexpr int kMaxAttempts = 8;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::uint64_t probe_seed =
        attempt == 0 ? seed : Rng::mix(seed, static_cast<std::uint64_t>(attempt));
    try {
      return initial_curvature(objective, x0,
                               perturb_point(x0, probe_seed));
    } catch (const InitError&) {
      // flat probe; retry with a fresh perturbation
    }
  }
  throw InitError(
      "initial_curvature: gradients coincided for 8 random perturbations; "
      "the objective looks flat near x0, pass an explicit initial step size");
}

double update_running_min(double current, double curvature) {
  const double inverse = 1.0 / curvature;  // 1/0 = +inf, 1/inf = 0
  return std::min(current, inverse);
}

}  // namespace adastep
