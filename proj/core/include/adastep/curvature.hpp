#pragma once

#include <cstdint>
#include <limits>

#include "adastep/objective.hpp"
#include "adastep/types.hpp"

namespace adastep {

// Relative guard below which the secant denominator counts as zero.
inline constexpr double kCurvatureGuardTol =
    4.0 * std::numeric_limits<double>::epsilon();

// Secant curvature between two oracle samples. `value` is 0 when the pair
// carries no curvature signal, +infinity when the denominator degenerates
// while the gradients still differ, and -numer/denom otherwise.
struct CurvatureEstimate {
  double value = 0.0;
  double numer = 0.0;
  double denom = 0.0;

  bool is_infinite() const {
    return value == std::numeric_limits<double>::infinity();
  }
};

CurvatureEstimate local_curvature(const GradSample& prev,
                                  const GradSample& curr,
                                  double guard_tol = kCurvatureGuardTol);

// x0 + u with u ~ U[0,1) per coordinate; deterministic in (size, seed).
Point perturb_point(const Point& x0, std::uint64_t seed);

// ||g(x_tilde) - g(x0)|| / ||x_tilde - x0||. Throws when the two gradients
// coincide (no curvature signal in that direction).
double initial_curvature(const Objective& objective, const Point& x0,
                         const Point& x_tilde);

// Same, drawing the perturbation from `seed` and retrying with fresh
// perturbations up to 8 times before giving up.
double initial_curvature(const Objective& objective, const Point& x0,
                         std::uint64_t seed);

// min(current, 1/curvature) with 1/0 = +infinity and 1/infinity = 0.
double update_running_min(double current, double curvature);

// Running minimum of inverse curvatures; nonincreasing by construction.
class RunningMinInvL {
 public:
  RunningMinInvL() = default;
  explicit RunningMinInvL(double curvature) { update(curvature); }

  void update(double curvature) {
    value_ = update_running_min(value_, curvature);
  }
  double value() const { return value_; }

 private:
  double value_ = std::numeric_limits<double>::infinity();
};

}  // namespace adastep
