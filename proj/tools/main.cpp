#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "adastep/detail/format.hpp"
#include "adastep/errors.hpp"
#include "adastep/gzio.hpp"
#include "report.hpp"
#include "runner.hpp"

namespace {

namespace tools = adastep::tools;

// Raw command-line values; they override config-file keys verbatim and
// are validated together with them in config_from_map.
using OptionBag = std::map<std::string, std::string>;

void add_override(CLI::App* cmd, OptionBag& bag, const std::string& flag,
                  const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&bag, key](const std::string& value) { bag[key] = value; },
      help);
}

void add_switch(CLI::App* cmd, OptionBag& bag, const std::string& flag,
                const std::string& key, const std::string& help) {
  cmd->add_flag_callback(
      flag, [&bag, key]() { bag[key] = "true"; }, help);
}

void add_common_options(CLI::App* cmd, std::string& config_path,
                        OptionBag& bag) {
  cmd->add_option("--config", config_path, "key=value configuration file");
  add_override(cmd, bag, "--solver", "solver",
               "comma-separated solver list (adanag, simple, adanag-g<p>, "
               "adanag-gsqrt, adagd0, adagd-half, adagd1, gamma(<g>), nag, "
               "gd, acfgm)");
  add_override(cmd, bag, "--problem", "problem",
               "lsq | quadratic | logistic | lsq-file");
  add_override(cmd, bag, "--data", "data", "LIBSVM dataset path (.gz ok)");
  add_override(cmd, bag, "--m", "m", "synthetic row count");
  add_override(cmd, bag, "--n", "n", "synthetic column count / dimension");
  add_override(cmd, bag, "--gamma-rule", "gamma_rule",
               "logistic regularizer: L/m, L/(10m) or a number");
  add_override(cmd, bag, "--p", "p", "poly growth exponent for adanag-g");
  add_override(cmd, bag, "--gamma", "gamma", "gamma-family parameter");
  add_override(cmd, bag, "--epsilon", "epsilon",
               "step-rule relaxation for adanag");
  add_override(cmd, bag, "--epsilon-start", "epsilon_start",
               "first relaxed iteration (default 3)");
  add_override(cmd, bag, "--eta1", "eta1", "initial step for acfgm");
  add_override(cmd, bag, "--s0", "s0", "initial step override");
  add_override(cmd, bag, "--max-iters", "max_iters", "iteration budget");
  add_override(cmd, bag, "--grad-tol", "grad_tol",
               "stop once ||grad||^2 <= grad_tol");
  add_override(cmd, bag, "--seed", "seed", "base seed");
  add_override(cmd, bag, "--seeds", "seeds", "number of seeds");
  add_override(cmd, bag, "--jobs", "jobs", "parallel (solver, seed) cells");
  add_override(cmd, bag, "--out-dir", "out_dir", "artifact directory");
  add_override(cmd, bag, "--fstar", "fstar", "reporting f* override");
  add_override(cmd, bag, "--title", "title", "plot title");
  add_switch(cmd, bag, "--timing", "timing",
             "record wall time per iteration");
  add_switch(cmd, bag, "--gzip", "gzip", "write trace CSVs gzipped");
}

tools::ExperimentConfig resolve_config(const std::string& config_path,
                                       const OptionBag& bag) {
  std::map<std::string, std::string> merged;
  if (!config_path.empty()) merged = tools::load_config(config_path);
  for (const auto& [key, value] : bag) merged[key] = value;
  return tools::config_from_map(merged);
}

int do_run(const std::string& config_path, const OptionBag& bag) {
  const tools::ExperimentConfig config = resolve_config(config_path, bag);
  const tools::ExperimentResult result = tools::run_experiment(config);
  for (const std::string& artifact : result.artifacts) {
    std::cout << "wrote " << artifact << "\n";
  }
  for (const std::string& note : result.notes) {
    std::cout << "note: " << note << "\n";
  }
  int status = 0;
  for (const tools::CellResult& cell : result.cells) {
    if (cell.trace.diverged) {
      std::cerr << "diverged: " << cell.solver << " seed " << cell.seed
                << "\n";
      status = 1;
    }
  }
  if (config.certify && result.certificate_failures > 0) {
    std::cerr << result.certificate_failures << " certificate failure"
              << (result.certificate_failures == 1 ? "" : "s") << "\n";
    status = 1;
  }
  return status;
}

int do_certify(const std::string& config_path, const OptionBag& bag,
               const std::string& check_tokens) {
  tools::ExperimentConfig config = resolve_config(config_path, bag);
  config.certify = true;
  const tools::CheckSelection checks = tools::parse_checks(check_tokens);
  const tools::CertifyResult result = tools::run_certify(config, checks);
  std::cout << "wrote " << result.csv_path << "\n";
  for (const std::string& note : result.report.notes) {
    std::cout << "note: " << note << "\n";
  }
  const long failures = result.report.failures();
  std::cout << result.report.certificates.size() << " certificates, "
            << failures << " failure" << (failures == 1 ? "" : "s") << "\n";
  if (failures > 0) {
    long shown = 0;
    for (const adastep::Certificate& cert : result.report.certificates) {
      if (cert.pass || shown >= 5) continue;
      std::cout << "  fail " << cert.kind << " k=" << cert.k
                << " lhs=" << adastep::detail::format_double(cert.lhs)
                << " rhs=" << adastep::detail::format_double(cert.rhs)
                << "\n";
      ++shown;
    }
  }
  if (result.trace.diverged) {
    std::cerr << "diverged: " << result.trace.solver << "\n";
    return 1;
  }
  return failures > 0 ? 1 : 0;
}

int do_plot(const std::vector<std::string>& inputs, const std::string& out,
            bool time_axis, const std::string& title) {
  std::vector<tools::PlotSeries> series;
  series.reserve(inputs.size());
  for (const std::string& path : inputs) {
    std::string label = std::filesystem::path(path).filename().string();
    for (const char* suffix : {".gz", ".csv"}) {
      if (label.size() > std::strlen(suffix) &&
          label.ends_with(suffix)) {
        label.resize(label.size() - std::strlen(suffix));
      }
    }
    series.push_back(tools::series_from_csv(adastep::read_text_file(path),
                                            label, time_axis));
  }
  tools::PlotOptions options;
  options.title = title;
  options.x_label = time_axis ? "seconds" : "iteration";
  adastep::write_text_file(out, tools::emit_plot(series, options));
  std::cout << "wrote " << out << "\n";
  return 0;
}

int do_validate(const std::string& token, long horizon) {
  const auto schedule = tools::parse_schedule(token);
  return std::visit(
      [horizon](const auto& spec) {
        const auto violation = adastep::validate_schedule(spec, horizon);
        if (violation) {
          std::cout << "FAIL " << spec.name() << " K=" << horizon << ": "
                    << violation->inequality << " at k=" << violation->k
                    << " (lhs="
                    << adastep::detail::format_double(violation->lhs)
                    << ", rhs="
                    << adastep::detail::format_double(violation->rhs)
                    << ")\n";
          return 1;
        }
        std::cout << "OK " << spec.name() << " K=" << horizon
                  << " r=" << adastep::detail::format_double(
                                  spec.certified_r())
                  << "\n";
        return 0;
      },
      schedule);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive first-order methods: run, certify, plot"};
  app.set_version_flag("--version", "adastep 0.1.0");
  app.require_subcommand(1);

  std::string run_config;
  OptionBag run_bag;
  CLI::App* run_cmd =
      app.add_subcommand("run", "run a (solver, seed) experiment matrix");
  add_common_options(run_cmd, run_config, run_bag);
  add_switch(run_cmd, run_bag, "--certify", "certify",
             "emit and check descent certificates");
  add_switch(run_cmd, run_bag, "--plot", "plot", "emit plot.svg");

  std::string certify_config;
  OptionBag certify_bag;
  std::string check_tokens = "descent";
  CLI::App* certify_cmd = app.add_subcommand(
      "certify", "run one solver and machine-check its certificates");
  add_common_options(certify_cmd, certify_config, certify_bag);
  certify_cmd->add_option("--check", check_tokens,
                          "descent,rate,floor,radius or all");

  std::vector<std::string> plot_inputs;
  std::string plot_out = "plot.svg";
  std::string plot_title;
  bool plot_time = false;
  CLI::App* plot_cmd =
      app.add_subcommand("plot", "combine trace CSVs into one SVG");
  plot_cmd->add_option("inputs", plot_inputs, "trace CSV files")
      ->required()
      ->expected(-1);
  plot_cmd->add_option("--out", plot_out, "output SVG path");
  plot_cmd->add_option("--title", plot_title, "plot title");
  plot_cmd->add_flag("--time", plot_time, "x axis from elapsed seconds");

  std::string schedule_token;
  long horizon = 100000;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate-schedule", "check a schedule's admissibility conditions");
  validate_cmd
      ->add_option("--schedule", schedule_token,
                   "poly(<p>), sqrt, adagd0, adagd1, adagd-half, gamma(<g>)")
      ->required();
  validate_cmd->add_option("--K", horizon, "horizon (default 100000)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return do_run(run_config, run_bag);
    if (certify_cmd->parsed()) {
      return do_certify(certify_config, certify_bag, check_tokens);
    }
    if (plot_cmd->parsed()) {
      return do_plot(plot_inputs, plot_out, plot_time, plot_title);
    }
    if (validate_cmd->parsed()) return do_validate(schedule_token, horizon);
  } catch (const adastep::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const adastep::ScheduleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const adastep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
