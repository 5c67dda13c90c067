#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "adastep/curvature.hpp"
#include "adastep/objective.hpp"
#include "adastep/schedules.hpp"
#include "adastep/trace.hpp"
#include "adastep/types.hpp"

namespace adastep {

// One first-order method mid-run. `step_size` is the coefficient the next
// advance() applies to the current gradient; `anchor` is the point whose
// distance to the minimizer enters the Lyapunov function (the momentum
// iterate z, or the plain iterate when there is no momentum).
class Solver {
 public:
  virtual ~Solver() = default;

  virtual const std::string& name() const = 0;
  virtual long iteration() const = 0;
  virtual const GradSample& current() const = 0;
  virtual double step_size() const = 0;
  virtual double curvature() const = 0;
  virtual const Point& anchor() const = 0;
  virtual long anomalies() const = 0;

  virtual void advance(const Objective& objective) = 0;
};

struct AdaNagOptions {
  std::optional<double> s0;
  std::uint64_t seed = 1;
  // Step-rule relaxation on the curvature branch, active from
  // epsilon_start on; 0 disables it. Must stay below epsilon_bar(N).
  double epsilon = 0.0;
  long epsilon_start = 3;
};

std::unique_ptr<Solver> make_adanag(const Objective& objective,
                                    const Point& x0,
                                    const AdaNagOptions& options = {});

// Rational-theta variant with the published closed-form coefficients.
std::unique_ptr<Solver> make_simple_adanag(const Objective& objective,
                                           const Point& x0,
                                           const AdaNagOptions& options = {});

struct GrowthOptions {
  std::optional<double> s0;
  std::uint64_t seed = 1;
};

std::unique_ptr<Solver> make_adanag_g(const Objective& objective,
                                      const Point& x0, GScheduleSpec schedule,
                                      const GrowthOptions& options = {});

std::unique_ptr<Solver> make_adagd(const Objective& objective, const Point& x0,
                                   GdScheduleSpec schedule,
                                   const GrowthOptions& options = {});

struct FixedStepOptions {
  // Defaults to the objective's known smoothness bound; required somewhere.
  std::optional<double> smoothness;
};

std::unique_ptr<Solver> make_nag(const Objective& objective, const Point& x0,
                                 const FixedStepOptions& options = {});

std::unique_ptr<Solver> make_gd(const Objective& objective, const Point& x0,
                                const FixedStepOptions& options = {});

struct AcfgmOptions {
  std::optional<double> eta1;  // default 2/(5 L_0)
  double beta = 0.18350341907227397;  // 1 - sqrt(6)/3, the tightest choice
  double alpha = 0.0;  // extrapolation offset in tau_k = (k + alpha)/2
  std::uint64_t seed = 1;
};

std::unique_ptr<Solver> make_acfgm(const Objective& objective, const Point& x0,
                                   const AcfgmOptions& options = {});

struct RunOptions {
  long max_iters = 1000;
  // Stop once ||grad||^2 <= grad_tol; 0 disables the check.
  double grad_tol = 0.0;
  // Declared diverged when f exceeds divergence_factor * (1 + |f(x_0)|).
  double divergence_factor = 1e12;
  bool measure_time = false;
  std::function<void(const TraceRecord&)> on_record;
};

// Drives a solver for up to max_iters transitions, emitting one record per
// visited iterate. A diverged run returns with the partial trace and the
// flag set rather than throwing.
Trace run(Solver& solver, const Objective& objective,
          const RunOptions& options);

}  // namespace adastep
