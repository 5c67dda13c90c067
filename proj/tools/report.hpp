#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adastep/trace.hpp"

namespace adastep::tools {

// Trace CSV with the fixed column set
//   k,f,f_minus_fstar,grad_norm_sq,step_size,L_k[,V_k],elapsed_s
// The V_k column appears only when requested; unknown values print as nan.
// Numbers use shortest round-trip formatting, so output is byte-stable.
std::string trace_csv(const Trace& trace,
                      std::optional<double> f_star = std::nullopt,
                      bool include_lyapunov = false);

// Lowest objective value seen across all iterations of all traces; the
// reporting surrogate for f* on problems without a known optimum.
double pool_fstar(const std::vector<Trace>& traces);

struct SummaryRow {
  std::string solver;
  std::uint64_t seed = 0;
  long k = 0;                   // last recorded iteration
  double f_minus_fstar = 0.0;   // lowest objective achieved minus f*
  double min_grad_sq = 0.0;
  double seconds = 0.0;
};

SummaryRow summarize(const Trace& trace, double f_star, std::uint64_t seed);
std::string summary_csv(const std::vector<SummaryRow>& rows);

// One plot line; x is the iteration index or elapsed seconds.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  int width = 960;
  int height = 600;
  std::string title;
  std::string x_label = "iteration";
  std::string y_label = "f - f*";
};

// Self-contained SVG with a log-scale y axis, one polyline per series and
// a legend. Nonpositive y values are clipped to the smallest positive
// observed value and a warning annotation is embedded. Byte-deterministic
// for fixed input.
std::string emit_plot(const std::vector<PlotSeries>& series,
                      const PlotOptions& options = {});

PlotSeries series_from_trace(const Trace& trace, double f_star,
                             bool time_axis = false);
// Rebuilds a series from a trace CSV (as written by trace_csv).
PlotSeries series_from_csv(const std::string& csv_text,
                           const std::string& label, bool time_axis = false);

// Flat key=value configuration text: '#' lines are comments, blank lines
// are skipped, later keys win. A line without '=' is a usage error.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config(const std::string& path);

}  // namespace adastep::tools
