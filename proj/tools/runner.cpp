#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>
#include <utility>

#include "adastep/errors.hpp"
#include "adastep/gzio.hpp"
#include "adastep/libsvm.hpp"
#include "report.hpp"

namespace adastep::tools {

namespace {

namespace fs = std::filesystem;

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto result = std::from_chars(begin, end, out);
  if (result.ec != std::errc() || result.ptr != end) {
    throw UsageError(key + ": expected a number, got '" + value + "'");
  }
  return out;
}

long parse_long(const std::string& key, const std::string& value) {
  long out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto result = std::from_chars(begin, end, out);
  if (result.ec != std::errc() || result.ptr != end) {
    throw UsageError(key + ": expected an integer, got '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no" || value == "off") {
    return false;
  }
  throw UsageError(key + ": expected a boolean, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto pos = value.find(',', start);
    const auto end = pos == std::string::npos ? value.size() : pos;
    std::string item = value.substr(start, end - start);
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first != std::string::npos) {
      out.push_back(item.substr(first, last - first + 1));
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// "(x)", ":x" or "x" to the numeric argument of a schedule token.
double parse_token_arg(const std::string& token, const std::string& rest) {
  std::string body = rest;
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
    body = body.substr(1, body.size() - 2);
  } else if (!body.empty() && body.front() == ':') {
    body = body.substr(1);
  }
  if (body.empty()) {
    throw UsageError("solver '" + token + "': missing numeric argument");
  }
  return parse_double(token, body);
}

// File-safe label: parentheses vanish, anything else exotic becomes '-'.
std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
        c == '_') {
      out += c;
    } else if (c != '(' && c != ')') {
      out += '-';
    }
  }
  return out.empty() ? std::string("solver") : out;
}

void require_validated(const GScheduleSpec& spec, long horizon) {
  if (const auto violation = validate_schedule(spec, horizon)) {
    throw ScheduleError(spec.name() + ": violates " + violation->inequality +
                        " at k = " + std::to_string(violation->k));
  }
}

void require_validated(const GdScheduleSpec& spec, long horizon) {
  if (const auto violation = validate_schedule(spec, horizon)) {
    throw ScheduleError(spec.name() + ": violates " + violation->inequality +
                        " at k = " + std::to_string(violation->k));
  }
}

void validate_choice(const SolverChoice& choice, long horizon) {
  if (choice.growth) require_validated(*choice.growth, horizon);
  if (choice.gd) require_validated(*choice.gd, horizon);
}

// Descent certificates for the families that carry a potential; other
// solvers get an explanatory note. A missing reference optimum downgrades
// to a note as well: surrogates are for reporting, not certification.
CertificateReport certify_cell(const SolverChoice& choice, Trace& trace,
                               const Objective& objective) {
  DescentOptions options;
  options.smoothness = objective.known_smoothness();
  CertificateReport report;
  try {
    switch (choice.family) {
      case SolverChoice::Family::adanag:
      case SolverChoice::Family::simple: {
        const AdaNagParams params(choice.family == SolverChoice::Family::simple
                                      ? ThetaSeq::Kind::rational
                                      : ThetaSeq::Kind::recursive);
        report = check_adanag_descent(trace, params, options);
        fill_lyapunov(trace, params);
        break;
      }
      case SolverChoice::Family::growth:
        report = check_adanag_g_descent(trace, *choice.growth, options);
        fill_lyapunov(trace, *choice.growth);
        break;
      case SolverChoice::Family::gd:
        report = check_adagd_descent(trace, *choice.gd, options);
        fill_lyapunov(trace, *choice.gd);
        break;
      default:
        report.notes.push_back(trace.solver +
                               ": no descent certificate family");
        break;
    }
  } catch (const UsageError& e) {
    report.notes.push_back(trace.solver + ": certification skipped: " +
                           e.what());
  }
  return report;
}

}  // namespace

SolverChoice parse_solver(const std::string& token, const SolverKnobs& knobs) {
  SolverChoice choice;
  choice.token = token;
  if (token == "adanag") {
    choice.family = SolverChoice::Family::adanag;
    return choice;
  }
  if (token == "simple" || token == "adanag-simple" ||
      token == "simple-adanag") {
    choice.family = SolverChoice::Family::simple;
    return choice;
  }
  if (token == "nag") {
    choice.family = SolverChoice::Family::nag;
    return choice;
  }
  if (token == "gd") {
    choice.family = SolverChoice::Family::fixed_gd;
    return choice;
  }
  if (token == "acfgm") {
    choice.family = SolverChoice::Family::acfgm;
    return choice;
  }
  if (token.rfind("adanag-g", 0) == 0) {
    choice.family = SolverChoice::Family::growth;
    std::string rest = token.substr(8);
    if (!rest.empty() && rest.front() == '-') rest = rest.substr(1);
    if (rest == "sqrt") {
      choice.growth = GScheduleSpec::sqrt_growth();
      return choice;
    }
    if (rest.empty()) {
      choice.growth = GScheduleSpec::poly(knobs.p.value_or(12));
      return choice;
    }
    int p = 0;
    const auto result =
        std::from_chars(rest.data(), rest.data() + rest.size(), p);
    if (result.ec == std::errc() && result.ptr == rest.data() + rest.size()) {
      choice.growth = GScheduleSpec::poly(p);
      return choice;
    }
    throw UsageError("unknown growth solver '" + token + "'");
  }
  if (token == "adagd0") {
    choice.family = SolverChoice::Family::gd;
    choice.gd = GdScheduleSpec::constant_step();
    return choice;
  }
  if (token == "adagd1") {
    choice.family = SolverChoice::Family::gd;
    choice.gd = GdScheduleSpec::linear_growth();
    return choice;
  }
  if (token == "adagd-half" || token == "adagd-sqrt") {
    choice.family = SolverChoice::Family::gd;
    choice.gd = GdScheduleSpec::sqrt_growth();
    return choice;
  }
  std::string body = token;
  if (body.rfind("adagd-", 0) == 0) body = body.substr(6);
  if (body.rfind("gamma", 0) == 0) {
    choice.family = SolverChoice::Family::gd;
    const std::string rest = body.substr(5);
    const double gamma = rest.empty()
                             ? knobs.gamma.value_or(0.0)
                             : parse_token_arg(token, rest);
    if (!(gamma > 0)) {
      throw UsageError("solver '" + token +
                       "': needs a gamma value (token argument or --gamma)");
    }
    choice.gd = GdScheduleSpec::gamma_family(gamma);
    return choice;
  }
  throw UsageError(
      "unknown solver '" + token +
      "' (expected adanag, simple, adanag-g<p>, adanag-gsqrt, adagd0, "
      "adagd-half, adagd1, gamma(<g>), nag, gd or acfgm)");
}

std::unique_ptr<Solver> make_solver(const SolverChoice& choice,
                                    const Objective& objective,
                                    const Point& x0, const SolverKnobs& knobs,
                                    std::uint64_t seed) {
  switch (choice.family) {
    case SolverChoice::Family::adanag:
    case SolverChoice::Family::simple: {
      AdaNagOptions options;
      options.s0 = knobs.s0;
      options.seed = seed;
      options.epsilon = knobs.epsilon;
      options.epsilon_start = knobs.epsilon_start;
      return choice.family == SolverChoice::Family::simple
                 ? make_simple_adanag(objective, x0, options)
                 : make_adanag(objective, x0, options);
    }
    case SolverChoice::Family::growth: {
      GrowthOptions options;
      options.s0 = knobs.s0;
      options.seed = seed;
      return make_adanag_g(objective, x0, *choice.growth, options);
    }
    case SolverChoice::Family::gd: {
      GrowthOptions options;
      options.s0 = knobs.s0;
      options.seed = seed;
      return make_adagd(objective, x0, *choice.gd, options);
    }
    case SolverChoice::Family::nag:
      return make_nag(objective, x0);
    case SolverChoice::Family::fixed_gd:
      return make_gd(objective, x0);
    case SolverChoice::Family::acfgm: {
      AcfgmOptions options;
      options.eta1 = knobs.eta1;
      options.seed = seed;
      return make_acfgm(objective, x0, options);
    }
  }
  throw UsageError("unreachable solver family");
}

std::variant<GScheduleSpec, GdScheduleSpec> parse_schedule(
    const std::string& token) {
  if (token == "sqrt") return GScheduleSpec::sqrt_growth();
  if (token.rfind("poly", 0) == 0) {
    const double p = parse_token_arg(token, token.substr(4));
    if (p != std::floor(p)) {
      throw UsageError("schedule '" + token + "': p must be an integer");
    }
    return GScheduleSpec::poly(static_cast<int>(p));
  }
  if (token == "adagd0" || token == "constant") {
    return GdScheduleSpec::constant_step();
  }
  if (token == "adagd1" || token == "linear") {
    return GdScheduleSpec::linear_growth();
  }
  if (token == "adagd-half" || token == "adagd-sqrt") {
    return GdScheduleSpec::sqrt_growth();
  }
  if (token.rfind("gamma", 0) == 0) {
    return GdScheduleSpec::gamma_family(
        parse_token_arg(token, token.substr(5)));
  }
  throw UsageError("unknown schedule '" + token +
                   "' (expected poly(<p>), sqrt, adagd0, adagd1, adagd-half "
                   "or gamma(<g>))");
}

double resolve_gamma_rule(const std::string& rule, double unregularized_l,
                          Eigen::Index rows) {
  if (rows <= 0) throw UsageError("gamma rule: empty dataset");
  if (rule == "L/m") return unregularized_l / static_cast<double>(rows);
  if (rule == "L/(10m)" || rule == "L/10m") {
    return unregularized_l / (10.0 * static_cast<double>(rows));
  }
  return parse_double("gamma_rule", rule);
}

Objective make_problem(const ProblemSpec& spec, std::uint64_t seed) {
  if (spec.kind == "lsq") {
    return synthetic_least_squares(spec.m, spec.n, seed).objective;
  }
  if (spec.kind == "quadratic") {
    return random_quadratic(spec.n, seed);
  }
  if (spec.kind == "logistic" || spec.kind == "lsq-file") {
    if (spec.data.empty()) {
      throw UsageError("problem '" + spec.kind + "' needs a dataset path");
    }
    Dataset dataset = load_libsvm(spec.data);
    if (spec.kind == "lsq-file") {
      return least_squares(dataset.features, dataset.labels);
    }
    const Eigen::VectorXd labels = normalize_labels(dataset.labels);
    const double l0 = 0.25 * spectral_bound(dataset.features).value;
    const double gamma =
        resolve_gamma_rule(spec.gamma_rule, l0, dataset.features.rows());
    Objective objective =
        logistic(dataset.features, labels, gamma, /*with_smoothness=*/false);
    objective.set_known_smoothness(l0 + gamma);
    return objective;
  }
  throw UsageError("unknown problem '" + spec.kind +
                   "' (expected lsq, quadratic, logistic or lsq-file)");
}

ExperimentConfig config_from_map(
    const std::map<std::string, std::string>& map) {
  ExperimentConfig config;
  auto rest = map;
  const auto take = [&rest](const char* key) -> std::optional<std::string> {
    const auto it = rest.find(key);
    if (it == rest.end()) return std::nullopt;
    std::string value = it->second;
    rest.erase(it);
    return value;
  };

  if (const auto v = take("problem")) config.problem.kind = *v;
  if (const auto v = take("data")) config.problem.data = *v;
  if (const auto v = take("m")) config.problem.m = parse_long("m", *v);
  if (const auto v = take("n")) config.problem.n = parse_long("n", *v);
  if (const auto v = take("gamma_rule")) config.problem.gamma_rule = *v;
  if (const auto v = take("solver")) config.solvers = split_list(*v);
  if (const auto v = take("solvers")) config.solvers = split_list(*v);
  if (const auto v = take("s0")) config.knobs.s0 = parse_double("s0", *v);
  if (const auto v = take("p")) {
    config.knobs.p = static_cast<int>(parse_long("p", *v));
  }
  if (const auto v = take("gamma")) {
    config.knobs.gamma = parse_double("gamma", *v);
  }
  if (const auto v = take("epsilon")) {
    config.knobs.epsilon = parse_double("epsilon", *v);
  }
  if (const auto v = take("epsilon_start")) {
    config.knobs.epsilon_start = parse_long("epsilon_start", *v);
  }
  if (const auto v = take("eta1")) {
    config.knobs.eta1 = parse_double("eta1", *v);
  }
  if (const auto v = take("max_iters")) {
    config.max_iters = parse_long("max_iters", *v);
  }
  if (const auto v = take("grad_tol")) {
    config.grad_tol = parse_double("grad_tol", *v);
  }
  if (const auto v = take("seed")) {
    config.seed = static_cast<std::uint64_t>(parse_long("seed", *v));
  }
  if (const auto v = take("seeds")) {
    config.n_seeds = static_cast<int>(parse_long("seeds", *v));
  }
  if (const auto v = take("jobs")) {
    config.jobs = static_cast<int>(parse_long("jobs", *v));
  }
  if (const auto v = take("out_dir")) config.out_dir = *v;
  if (const auto v = take("certify")) {
    config.certify = parse_bool("certify", *v);
  }
  if (const auto v = take("plot")) config.plot = parse_bool("plot", *v);
  if (const auto v = take("timing")) config.timing = parse_bool("timing", *v);
  if (const auto v = take("gzip")) config.gzip = parse_bool("gzip", *v);
  if (const auto v = take("fstar")) {
    config.f_star = parse_double("fstar", *v);
  }
  if (const auto v = take("title")) config.title = *v;

  if (!rest.empty()) {
    throw UsageError("unknown config key '" + rest.begin()->first + "'");
  }
  if (config.n_seeds < 1) throw UsageError("seeds: must be >= 1");
  if (config.jobs < 1) throw UsageError("jobs: must be >= 1");
  if (config.max_iters < 0) throw UsageError("max_iters: must be >= 0");
  return config;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.solvers.empty()) throw UsageError("run: no solvers selected");

  // Resolve and validate everything before the first solve: a bad cell
  // must not waste the good ones.
  std::vector<SolverChoice> choices;
  choices.reserve(config.solvers.size());
  for (const std::string& token : config.solvers) {
    choices.push_back(parse_solver(token, config.knobs));
    validate_choice(choices.back(), config.max_iters + 4);
  }
  std::vector<Objective> problems;
  problems.reserve(config.n_seeds);
  for (int i = 0; i < config.n_seeds; ++i) {
    problems.push_back(
        make_problem(config.problem, config.seed + static_cast<unsigned>(i)));
  }

  struct Cell {
    std::size_t choice = 0;
    int seed_idx = 0;
  };
  std::vector<Cell> cells;
  for (int seed_idx = 0; seed_idx < config.n_seeds; ++seed_idx) {
    for (std::size_t c = 0; c < choices.size(); ++c) {
      cells.push_back({c, seed_idx});
    }
  }
  std::vector<CellResult> results(cells.size());

  const auto run_cell = [&](std::size_t i) {
    const Cell& cell = cells[i];
    const Objective& objective = problems[cell.seed_idx];
    const std::uint64_t seed =
        config.seed + static_cast<unsigned>(cell.seed_idx);
    const Point x0 = Point::Zero(objective.dim());
    auto solver =
        make_solver(choices[cell.choice], objective, x0, config.knobs, seed);
    RunOptions options;
    options.max_iters = config.max_iters;
    options.grad_tol = config.grad_tol;
    options.measure_time = config.timing;
    CellResult out;
    out.seed = seed;
    out.trace = run(*solver, objective, options);
    out.solver = out.trace.solver;
    if (config.certify) {
      out.report = certify_cell(choices[cell.choice], out.trace, objective);
    }
    results[i] = std::move(out);
  };

  const int jobs = static_cast<int>(std::min<std::size_t>(
      static_cast<std::size_t>(config.jobs), cells.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    const auto worker = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        try {
          run_cell(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    };
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (std::thread& thread : threads) thread.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  // Reference value per seed: exact when the problem knows its optimum,
  // else the pooled minimum over that seed's traces (reporting only).
  std::vector<double> references(config.n_seeds, 0.0);
  for (int seed_idx = 0; seed_idx < config.n_seeds; ++seed_idx) {
    if (config.f_star) {
      references[seed_idx] = *config.f_star;
    } else if (const auto& optimum = problems[seed_idx].known_optimum()) {
      references[seed_idx] = optimum->f_star;
    } else {
      std::vector<Trace> pool;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].seed_idx == seed_idx) pool.push_back(results[i].trace);
      }
      references[seed_idx] = pool_fstar(pool);
    }
  }

  // All files are written here, after every worker has finished.
  fs::create_directories(config.out_dir);
  ExperimentResult result;
  std::vector<SummaryRow> summary;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CellResult& cell = results[i];
    const double reference = references[cells[i].seed_idx];
    const std::string stem =
        sanitize(cell.solver) + "_seed" + std::to_string(cell.seed);
    const std::string trace_path =
        (fs::path(config.out_dir) /
         (stem + (config.gzip ? ".csv.gz" : ".csv")))
            .string();
    write_text_file(trace_path,
                    trace_csv(cell.trace, reference, config.certify));
    result.artifacts.push_back(trace_path);
    if (config.certify && !cell.report.certificates.empty()) {
      const std::string cert_path =
          (fs::path(config.out_dir) / (stem + "_certs.csv")).string();
      write_text_file(cert_path,
                      certificates_to_csv(cell.report.certificates));
      result.artifacts.push_back(cert_path);
    }
    summary.push_back(summarize(cell.trace, reference, cell.seed));
    result.certificate_failures += cell.report.failures();
    result.any_diverged = result.any_diverged || cell.trace.diverged;
    for (const std::string& note : cell.report.notes) {
      result.notes.push_back(cell.solver + " seed " +
                             std::to_string(cell.seed) + ": " + note);
    }
  }
  const std::string summary_path =
      (fs::path(config.out_dir) / "summary.csv").string();
  write_text_file(summary_path, summary_csv(summary));
  result.artifacts.push_back(summary_path);

  if (config.plot) {
    std::vector<PlotSeries> series;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].seed_idx != 0) continue;
      series.push_back(
          series_from_trace(results[i].trace, references[0], config.timing));
    }
    PlotOptions options;
    options.title = config.title.empty()
                        ? config.problem.kind + " convergence"
                        : config.title;
    options.x_label = config.timing ? "seconds" : "iteration";
    try {
      const std::string plot_path =
          (fs::path(config.out_dir) / "plot.svg").string();
      write_text_file(plot_path, emit_plot(series, options));
      result.artifacts.push_back(plot_path);
    } catch (const DataError& e) {
      result.notes.push_back(std::string("plot skipped: ") + e.what());
    }
  }

  result.cells = std::move(results);
  return result;
}

CheckSelection parse_checks(const std::string& tokens) {
  CheckSelection selection;
  selection.descent = false;
  for (const std::string& token : split_list(tokens)) {
    if (token == "descent") {
      selection.descent = true;
    } else if (token == "rate") {
      selection.rate = true;
    } else if (token == "floor") {
      selection.floor = true;
    } else if (token == "radius") {
      selection.radius = true;
    } else if (token == "all") {
      selection = {true, true, true, true};
    } else {
      throw UsageError("unknown check '" + token +
                       "' (expected descent, rate, floor, radius or all)");
    }
  }
  if (!selection.descent && !selection.rate && !selection.floor &&
      !selection.radius) {
    throw UsageError("certify: no checks selected");
  }
  return selection;
}

CertifyResult run_certify(const ExperimentConfig& config,
                          const CheckSelection& checks) {
  if (config.solvers.size() != 1) {
    throw UsageError("certify: exactly one solver at a time");
  }
  const SolverChoice choice = parse_solver(config.solvers.front(),
                                           config.knobs);
  validate_choice(choice, config.max_iters + 4);
  const Objective objective = make_problem(config.problem, config.seed);
  const Point x0 = Point::Zero(objective.dim());
  auto solver = make_solver(choice, objective, x0, config.knobs, config.seed);
  RunOptions options;
  options.max_iters = config.max_iters;
  options.grad_tol = config.grad_tol;
  options.measure_time = config.timing;

  CertifyResult result;
  result.trace = run(*solver, objective, options);
  Trace& trace = result.trace;

  const auto absorb = [&result](CertificateReport report) {
    for (Certificate& cert : report.certificates) {
      result.report.certificates.push_back(std::move(cert));
    }
    for (std::string& note : report.notes) {
      result.report.notes.push_back(std::move(note));
    }
  };
  const auto smoothness_or_throw = [&objective](const char* what) {
    if (!objective.known_smoothness()) {
      throw UsageError(std::string(what) +
                       " certificates need a known smoothness bound");
    }
    return *objective.known_smoothness();
  };

  const bool momentum = choice.family == SolverChoice::Family::adanag ||
                        choice.family == SolverChoice::Family::simple;
  const AdaNagParams params(choice.family == SolverChoice::Family::simple
                                ? ThetaSeq::Kind::rational
                                : ThetaSeq::Kind::recursive);
  DescentOptions descent_options;
  descent_options.smoothness = objective.known_smoothness();

  if (checks.descent) {
    if (momentum) {
      absorb(check_adanag_descent(trace, params, descent_options));
      fill_lyapunov(trace, params);
    } else if (choice.family == SolverChoice::Family::growth) {
      absorb(check_adanag_g_descent(trace, *choice.growth, descent_options));
      fill_lyapunov(trace, *choice.growth);
    } else if (choice.family == SolverChoice::Family::gd) {
      absorb(check_adagd_descent(trace, *choice.gd, descent_options));
      fill_lyapunov(trace, *choice.gd);
    } else {
      throw UsageError("solver '" + choice.token +
                       "' has no descent certificates");
    }
  }
  if (checks.rate) {
    if (momentum) {
      absorb(check_adanag_rate(trace, params, smoothness_or_throw("rate")));
    } else if (choice.family == SolverChoice::Family::growth) {
      absorb(check_adanag_g_rate(trace, *choice.growth,
                                 smoothness_or_throw("rate")));
    } else if (choice.family == SolverChoice::Family::gd) {
      absorb(
          check_adagd_rate(trace, *choice.gd, smoothness_or_throw("rate")));
    } else if (choice.family == SolverChoice::Family::acfgm) {
      absorb(check_acfgm_rate(trace, AcfgmOptions{}.beta));
    } else {
      throw UsageError("solver '" + choice.token +
                       "' has no rate certificates");
    }
  }
  if (checks.floor) {
    if (momentum) {
      absorb(check_adanag_floor(trace, params, smoothness_or_throw("floor")));
    } else if (choice.family == SolverChoice::Family::growth) {
      absorb(check_adanag_g_floor(trace, *choice.growth,
                                  smoothness_or_throw("floor")));
    } else if (choice.family == SolverChoice::Family::gd) {
      absorb(
          check_adagd_floor(trace, *choice.gd, smoothness_or_throw("floor")));
    } else {
      throw UsageError("solver '" + choice.token +
                       "' has no step-floor certificates");
    }
  }
  if (checks.radius) {
    if (!momentum) {
      throw UsageError("the radius certificate covers adanag and simple");
    }
    absorb(radius_certificate(trace, params));
  }

  fs::create_directories(config.out_dir);
  result.csv_path =
      (fs::path(config.out_dir) / "certificates.csv").string();
  write_text_file(result.csv_path,
                  certificates_to_csv(result.report.certificates));
  const std::string trace_path =
      (fs::path(config.out_dir) / "trace.csv").string();
  write_text_file(trace_path, trace_csv(trace, std::nullopt, true));
  return result;
}

}  // namespace adastep::tools
