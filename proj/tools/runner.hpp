#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adastep/lyapunov.hpp"
#include "adastep/objective.hpp"
#include "adastep/schedules.hpp"
#include "adastep/solvers.hpp"
#include "adastep/trace.hpp"

namespace adastep::tools {

// Per-solver knobs shared by every solver in an experiment.
struct SolverKnobs {
  std::optional<double> s0;
  std::optional<int> p;         // poly exponent for a bare "adanag-g"
  std::optional<double> gamma;  // family parameter for a bare "gamma"
  double epsilon = 0.0;
  long epsilon_start = 3;
  std::optional<double> eta1;
};

// A solver token resolved to a constructor recipe. Recognized tokens:
// adanag, simple, adanag-g<p>, adanag-gsqrt, adagd0, adagd-half, adagd1,
// gamma(<g>), nag, gd, acfgm.
struct SolverChoice {
  enum class Family { adanag, simple, growth, gd, nag, fixed_gd, acfgm };

  Family family = Family::adanag;
  std::string token;
  std::optional<GScheduleSpec> growth;
  std::optional<GdScheduleSpec> gd;
};

SolverChoice parse_solver(const std::string& token, const SolverKnobs& knobs);

std::unique_ptr<Solver> make_solver(const SolverChoice& choice,
                                    const Objective& objective,
                                    const Point& x0, const SolverKnobs& knobs,
                                    std::uint64_t seed);

// Schedule token for validate-schedule: poly(<p>), sqrt, adagd0, adagd1,
// adagd-half, gamma(<g>).
std::variant<GScheduleSpec, GdScheduleSpec> parse_schedule(
    const std::string& token);

struct ProblemSpec {
  std::string kind = "lsq";  // lsq | quadratic | logistic | lsq-file
  std::string data;          // LIBSVM path for the file-backed kinds
  Eigen::Index m = 100;      // rows (lsq)
  Eigen::Index n = 400;      // columns (lsq) or dimension (quadratic)
  std::string gamma_rule = "L/m";
};

// "L/m" and "L/(10m)" divide the unregularized smoothness bound by the
// row count; anything else must parse as an explicit value.
double resolve_gamma_rule(const std::string& rule, double unregularized_l,
                          Eigen::Index rows);

Objective make_problem(const ProblemSpec& spec, std::uint64_t seed);

struct ExperimentConfig {
  ProblemSpec problem;
  std::vector<std::string> solvers;
  SolverKnobs knobs;
  long max_iters = 1000;
  double grad_tol = 0.0;
  std::uint64_t seed = 1;
  int n_seeds = 1;
  int jobs = 1;
  std::string out_dir = "out";
  bool certify = false;
  bool plot = false;
  bool timing = false;
  bool gzip = false;
  std::optional<double> f_star;  // reporting override
  std::string title;
};

// Flat key=value view (config file merged with command-line overrides)
// to a validated config. Unknown keys are usage errors.
ExperimentConfig config_from_map(
    const std::map<std::string, std::string>& map);

struct CellResult {
  std::string solver;  // trace label
  std::uint64_t seed = 0;
  Trace trace;
  CertificateReport report;  // populated when certifying
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  std::vector<std::string> artifacts;  // files written, in order
  std::vector<std::string> notes;      // skips and other non-fatal events
  long certificate_failures = 0;
  bool any_diverged = false;
};

// Runs the full (solver, seed) matrix, up to config.jobs cells in
// parallel, and writes one trace CSV per cell plus summary.csv and an
// optional plot.svg. Only the coordinator touches the filesystem.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct CheckSelection {
  bool descent = true;
  bool rate = false;
  bool floor = false;
  bool radius = false;
};

// "descent,rate,floor,radius" in any order, or "all".
CheckSelection parse_checks(const std::string& tokens);

struct CertifyResult {
  Trace trace;
  CertificateReport report;
  std::string csv_path;
};

// One solve of config.solvers.front() followed by the selected
// certificate families; certificates land in out_dir/certificates.csv.
CertifyResult run_certify(const ExperimentConfig& config,
                          const CheckSelection& checks);

}  // namespace adastep::tools
