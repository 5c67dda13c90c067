#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "adastep/detail/format.hpp"
#include "adastep/errors.hpp"
#include "adastep/gzio.hpp"

namespace adastep::tools {

namespace {

using detail::append_double;
using detail::format_double;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_cell(std::string_view cell) {
  double value = kNan;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw ParseError("expected a number, got '" + std::string(cell) + "'", 0,
                     0);
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Fixed two-decimal SVG coordinates; enough for a pixel grid and stable.
void append_coord(std::string& out, double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::fixed, 2);
  out.append(buffer, result.ptr);
}

std::string escape_xml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

}  // namespace

std::string trace_csv(const Trace& trace, std::optional<double> f_star,
                      bool include_lyapunov) {
  const double reference =
      f_star ? *f_star : (trace.f_star ? *trace.f_star : kNan);
  std::string out;
  out.reserve(64 * (trace.records.size() + 1));
  out += include_lyapunov
             ? "k,f,f_minus_fstar,grad_norm_sq,step_size,L_k,V_k,elapsed_s\n"
             : "k,f,f_minus_fstar,grad_norm_sq,step_size,L_k,elapsed_s\n";
  for (const TraceRecord& record : trace.records) {
    out += std::to_string(record.k);
    out += ',';
    append_double(out, record.f);
    out += ',';
    append_double(out, record.f - reference);
    out += ',';
    append_double(out, record.grad_norm_sq);
    out += ',';
    append_double(out, record.step_size);
    out += ',';
    append_double(out, record.curvature);
    out += ',';
    if (include_lyapunov) {
      append_double(out, record.lyapunov);
      out += ',';
    }
    append_double(out, record.elapsed_s);
    out += '\n';
  }
  return out;
}

double pool_fstar(const std::vector<Trace>& traces) {
  double best = std::numeric_limits<double>::infinity();
  bool seen = false;
  for (const Trace& trace : traces) {
    for (const TraceRecord& record : trace.records) {
      best = std::min(best, record.f);
      seen = true;
    }
  }
  if (!seen) throw UsageError("pool_fstar: need at least one nonempty trace");
  return best;
}

SummaryRow summarize(const Trace& trace, double f_star, std::uint64_t seed) {
  if (trace.records.empty()) throw UsageError("summarize: empty trace");
  SummaryRow row;
  row.solver = trace.solver;
  row.seed = seed;
  row.k = trace.back().k;
  double best_f = trace.records.front().f;
  double best_g = trace.records.front().grad_norm_sq;
  for (const TraceRecord& record : trace.records) {
    best_f = std::min(best_f, record.f);
    best_g = std::min(best_g, record.grad_norm_sq);
  }
  row.f_minus_fstar = best_f - f_star;
  row.min_grad_sq = best_g;
  row.seconds = trace.back().elapsed_s;
  return row;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "solver,seed,k,f_minus_fstar,min_grad_sq,seconds\n";
  for (const SummaryRow& row : rows) {
    out += row.solver;
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += std::to_string(row.k);
    out += ',';
    append_double(out, row.f_minus_fstar);
    out += ',';
    append_double(out, row.min_grad_sq);
    out += ',';
    append_double(out, row.seconds);
    out += '\n';
  }
  return out;
}

PlotSeries series_from_trace(const Trace& trace, double f_star,
                             bool time_axis) {
  PlotSeries series;
  series.label = trace.solver;
  series.x.reserve(trace.records.size());
  series.y.reserve(trace.records.size());
  for (const TraceRecord& record : trace.records) {
    series.x.push_back(time_axis ? record.elapsed_s
                                 : static_cast<double>(record.k));
    series.y.push_back(record.f - f_star);
  }
  return series;
}

PlotSeries series_from_csv(const std::string& csv_text,
                           const std::string& label, bool time_axis) {
  PlotSeries series;
  series.label = label;
  std::istringstream input(csv_text);
  std::string line;
  if (!std::getline(input, line)) {
    throw ParseError("empty trace CSV", 1, 1);
  }
  const auto header = split(trim(line), ',');
  const std::string x_name = time_axis ? "elapsed_s" : "k";
  int x_col = -1;
  int y_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == x_name) x_col = static_cast<int>(i);
    if (trim(header[i]) == "f_minus_fstar") y_col = static_cast<int>(i);
  }
  if (x_col < 0 || y_col < 0) {
    throw ParseError("trace CSV lacks '" + x_name + "' or 'f_minus_fstar'", 1,
                     1);
  }
  int line_no = 1;
  while (std::getline(input, line)) {
    ++line_no;
    const auto row = trim(line);
    if (row.empty()) continue;
    const auto cells = split(row, ',');
    if (cells.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) +
                           " columns, got " + std::to_string(cells.size()),
                       line_no, 1);
    }
    const double x = parse_cell(trim(cells[x_col]));
    const double y = parse_cell(trim(cells[y_col]));
    if (std::isnan(x) || std::isnan(y)) continue;  // unknown reference
    series.x.push_back(x);
    series.y.push_back(y);
  }
  return series;
}

std::string emit_plot(const std::vector<PlotSeries>& series,
                      const PlotOptions& options) {
  if (series.empty()) throw UsageError("emit_plot: no series");
  const double width = options.width;
  const double height = options.height;
  const double left = 70.0;
  const double right = width - 170.0;
  const double top = 40.0;
  const double bottom = height - 50.0;
  if (right <= left + 10 || bottom <= top + 10) {
    throw UsageError("emit_plot: canvas too small");
  }

  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_max = -std::numeric_limits<double>::infinity();
  double y_min_pos = std::numeric_limits<double>::infinity();
  long clipped = 0;
  for (const PlotSeries& s : series) {
    if (s.x.size() != s.y.size()) {
      throw UsageError("emit_plot: series '" + s.label +
                       "' has mismatched x/y lengths");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      if (s.y[i] > 0) {
        y_min_pos = std::min(y_min_pos, s.y[i]);
        y_max = std::max(y_max, s.y[i]);
      } else {
        ++clipped;
      }
    }
  }
  if (!std::isfinite(x_min)) throw UsageError("emit_plot: no finite points");
  if (!std::isfinite(y_min_pos)) {
    throw DataError("emit_plot: no positive values to place the log scale");
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  double log_lo = std::log10(y_min_pos);
  double log_hi = std::log10(y_max);
  if (log_hi - log_lo < 1e-9) {
    log_lo -= 0.5;
    log_hi += 0.5;
  }

  const auto x_pos = [&](double x) {
    return left + (x - x_min) / (x_max - x_min) * (right - left);
  };
  const auto y_pos = [&](double y) {
    const double t = (std::log10(y) - log_lo) / (log_hi - log_lo);
    return bottom - t * (bottom - top);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
  svg += std::to_string(options.width);
  svg += "\" height=\"";
  svg += std::to_string(options.height);
  svg += "\" viewBox=\"0 0 " + std::to_string(options.width) + " " +
         std::to_string(options.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<g font-family=\"monospace\" font-size=\"12\">\n";

  if (!options.title.empty()) {
    svg += "<text x=\"";
    append_coord(svg, (left + right) / 2);
    svg += "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">";
    svg += escape_xml(options.title);
    svg += "</text>\n";
  }

  // Decade grid lines and labels on the log axis.
  {
    const int e_lo = static_cast<int>(std::ceil(log_lo - 1e-9));
    const int e_hi = static_cast<int>(std::floor(log_hi + 1e-9));
    int stride = 1;
    while ((e_hi - e_lo) / stride > 10) ++stride;
    for (int e = e_lo; e <= e_hi; e += stride) {
      const double y = y_pos(std::pow(10.0, e));
      svg += "<line x1=\"";
      append_coord(svg, left);
      svg += "\" y1=\"";
      append_coord(svg, y);
      svg += "\" x2=\"";
      append_coord(svg, right);
      svg += "\" y2=\"";
      append_coord(svg, y);
      svg += "\" stroke=\"#dddddd\"/>\n";
      svg += "<text x=\"";
      append_coord(svg, left - 6);
      svg += "\" y=\"";
      append_coord(svg, y + 4);
      svg += "\" text-anchor=\"end\">1e" + std::to_string(e) + "</text>\n";
    }
  }

  // Five evenly spaced x ticks; labels use shortest round-trip form.
  for (int i = 0; i <= 4; ++i) {
    const double x = x_min + (x_max - x_min) * i / 4.0;
    const double px = x_pos(x);
    svg += "<line x1=\"";
    append_coord(svg, px);
    svg += "\" y1=\"";
    append_coord(svg, bottom);
    svg += "\" x2=\"";
    append_coord(svg, px);
    svg += "\" y2=\"";
    append_coord(svg, bottom + 5);
    svg += "\" stroke=\"black\"/>\n";
    svg += "<text x=\"";
    append_coord(svg, px);
    svg += "\" y=\"";
    append_coord(svg, bottom + 18);
    svg += "\" text-anchor=\"middle\">";
    svg += format_double(x);
    svg += "</text>\n";
  }

  svg += "<rect x=\"";
  append_coord(svg, left);
  svg += "\" y=\"";
  append_coord(svg, top);
  svg += "\" width=\"";
  append_coord(svg, right - left);
  svg += "\" height=\"";
  append_coord(svg, bottom - top);
  svg += "\" fill=\"none\" stroke=\"black\"/>\n";

  // Axis labels.
  svg += "<text x=\"";
  append_coord(svg, (left + right) / 2);
  svg += "\" y=\"";
  append_coord(svg, bottom + 36);
  svg += "\" text-anchor=\"middle\">";
  svg += escape_xml(options.x_label);
  svg += "</text>\n";
  svg += "<text x=\"16\" y=\"";
  append_coord(svg, (top + bottom) / 2);
  svg += "\" text-anchor=\"middle\" transform=\"rotate(-90 16 ";
  append_coord(svg, (top + bottom) / 2);
  svg += ")\">";
  svg += escape_xml(options.y_label);
  svg += "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      const double x = series[s].x[i];
      double y = series[s].y[i];
      if (std::isnan(x) || std::isnan(y)) continue;
      if (y <= 0) y = y_min_pos;
      if (!first) svg += ' ';
      first = false;
      append_coord(svg, x_pos(x));
      svg += ',';
      append_coord(svg, y_pos(y));
    }
    svg += "\"/>\n";

    const double ly = top + 16.0 * static_cast<double>(s);
    svg += "<line x1=\"";
    append_coord(svg, right + 10);
    svg += "\" y1=\"";
    append_coord(svg, ly);
    svg += "\" x2=\"";
    append_coord(svg, right + 30);
    svg += "\" y2=\"";
    append_coord(svg, ly);
    svg += "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"";
    append_coord(svg, right + 34);
    svg += "\" y=\"";
    append_coord(svg, ly + 4);
    svg += "\">";
    svg += escape_xml(series[s].label);
    svg += "</text>\n";
  }

  if (clipped > 0) {
    svg += "<text x=\"";
    append_coord(svg, left);
    svg += "\" y=\"";
    append_coord(svg, height - 8);
    svg += "\" fill=\"#b00000\">warning: ";
    svg += std::to_string(clipped);
    svg += " nonpositive value";
    svg += clipped == 1 ? "" : "s";
    svg += " clipped to ";
    svg += format_double(y_min_pos);
    svg += "</text>\n";
  }

  svg += "</g>\n</svg>\n";
  return svg;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream input(text);
  std::string line;
  int line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected key=value", line_no, 1);
    }
    const auto key = trim(body.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line_no, 1);
    out[std::string(key)] = std::string(trim(body.substr(eq + 1)));
  }
  return out;
}

std::map<std::string, std::string> load_config(const std::string& path) {
  try {
    return parse_config_text(read_text_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

}  // namespace adastep::tools
