#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace adastep {

inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

// One iteration of a solver run. `step_size` is the coefficient the solver
// applies to this iterate's gradient; the fields after it are filled in by
// the transition to the next iterate and stay NaN on the final record.
struct TraceRecord {
  long k = 0;
  double f = 0.0;
  double grad_norm_sq = 0.0;
  double step_size = 0.0;
  double curvature = 0.0;       // local estimate; initial estimate at k = 0
  double next_step = kUnset;    // step chosen by the k -> k+1 transition
  double dist_sq = kUnset;      // ||x_k - x*||^2 when the minimizer is known
  double anchor_dist_sq = kUnset;  // ||z_{k+1} - x*||^2 (x_{k+1} without momentum)
  double grad_dot_prev = kUnset;   // <g_k, g_{k-1}>
  double lyapunov = kUnset;        // V_k once certified
  double elapsed_s = 0.0;
};

struct Trace {
  std::string solver;
  std::vector<TraceRecord> records;
  long anomalies = 0;    // +infinity curvature fallbacks or non-decreasing
                         // fixed steps, per the solver's counter
  bool diverged = false;
  std::optional<double> f_star;  // reference optimum behind the dist fields

  const TraceRecord& back() const { return records.back(); }
  std::size_t size() const { return records.size(); }
};

}  // namespace adastep
