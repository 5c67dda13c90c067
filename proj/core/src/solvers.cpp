#include "adastep/solvers.hpp"

#include <chrono>
#include <cmath>
#include <utility>

#include "adastep/errors.hpp"

namespace adastep {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// min of the growth branch and cap/L under the 1/0 = +inf convention; the
// +inf curvature sentinel forces the growth branch and counts as an anomaly.
double next_step_from_branches(double growth_term, double cap_coef,
                               double curvature, long* anomalies) {
  if (curvature == kInf) {
    ++*anomalies;
    return growth_term;
  }
  if (curvature == 0.0) return growth_term;
  return std::min(growth_term, cap_coef / curvature);
}

class SolverBase : public Solver {
 public:
  const std::string& name() const override { return name_; }
  long iteration() const override { return k_; }
  const GradSample& current() const override { return sample_; }
  double step_size() const override { return step_; }
  double curvature() const override { return curvature_; }
  const Point& anchor() const override { return anchor_; }
  long anomalies() const override { return anomalies_; }

 protected:
  std::string name_;
  long k_ = 0;
  GradSample sample_;
  double step_ = 0.0;
  double curvature_ = 0.0;
  Point anchor_;
  long anomalies_ = 0;
};

class AdaNagSolver final : public SolverBase {
 public:
  AdaNagSolver(const Objective& objective, Point x0,
               const AdaNagOptions& options, ThetaSeq::Kind kind)
      : params_(kind),
        epsilon_(options.epsilon),
        epsilon_start_(options.epsilon_start),
        simple_(kind == ThetaSeq::Kind::rational) {
    name_ = simple_ ? "simple-adanag" : "adanag";
    if (epsilon_ < 0) throw UsageError(name_ + ": epsilon must be >= 0");
    if (epsilon_ > 0) {
      if (simple_) {
        throw UsageError(
            "simple-adanag: the step-rule relaxation is defined for the "
            "recursive-theta variant only");
      }
      if (epsilon_start_ < 3) {
        throw UsageError("adanag: relaxation start index must be >= 3");
      }
      const double bar = epsilon_bar(static_cast<int>(epsilon_start_));
      if (epsilon_ > bar) {
        throw UsageError("adanag: epsilon " + std::to_string(epsilon_) +
                         " exceeds the step-floor-preserving limit " +
                         std::to_string(bar));
      }
    }
    sample_ = objective.evaluate(x0);
    curvature_ = initial_curvature(objective, x0, options.seed);
    running_min_.update(curvature_);
    step_ = options.s0.value_or(params_.default_s0_factor() / curvature_);
    if (!(step_ > 0)) throw UsageError(name_ + ": s0 must be positive");
    x_ = x0;
    z_ = std::move(x0);
    anchor_ = z_;
  }

  void advance(const Objective& objective) override {
    const Point& g = sample_.grad;
    const double t_next = params_.theta(static_cast<std::size_t>(k_) + 3);
    Point y_next = x_ - step_ * g;
    z_ -= step_ * params_.alpha(static_cast<std::size_t>(k_)) *
          params_.theta(static_cast<std::size_t>(k_) + 2) * g;
    Point x_next = (1.0 - 1.0 / t_next) * y_next + (1.0 / t_next) * z_;
    GradSample next = objective.evaluate(x_next);
    const CurvatureEstimate estimate = local_curvature(sample_, next);
    running_min_.update(estimate.value);
    step_ = next_step_from_branches(growth_coef(k_) * step_, cap_coef(k_),
                                    estimate.value, &anomalies_);
    sample_ = std::move(next);
    x_ = std::move(x_next);
    curvature_ = estimate.value;
    anchor_ = z_;
    ++k_;
  }

  double running_min_inv_l() const { return running_min_.value(); }

 private:
  double growth_coef(long k) const {
    if (k == 0) {
      const double t3 = params_.theta(3);
      return (params_.alpha(0) / params_.alpha(1)) *
             (params_.theta(2) / (t3 * (t3 - 1.0)));
    }
    if (simple_) {
      const double kd = static_cast<double>(k);
      return kd * (kd + 3.0) / ((kd + 1.0) * (kd + 2.0));
    }
    return params_.alpha(static_cast<std::size_t>(k)) /
           params_.alpha(static_cast<std::size_t>(k) + 1);
  }

  double cap_coef(long k) const {
    if (k == 0) return params_.step_floor_factor() / params_.alpha(1);
    if (simple_) {
      const double kd = static_cast<double>(k);
      return kd * kd * (kd + 3.0) /
             (((3.0 * kd + 13.0) * kd + 16.0) * kd + 8.0);
    }
    const double a_k = params_.alpha(static_cast<std::size_t>(k));
    const double a_next = params_.alpha(static_cast<std::size_t>(k) + 1);
    const double eps = k >= epsilon_start_ ? epsilon_ : 0.0;
    return a_k * a_k / (a_next + a_k * a_k * (1.0 + eps));
  }

  AdaNagParams params_;
  double epsilon_;
  long epsilon_start_;
  bool simple_;
  Point x_;
  Point z_;
  RunningMinInvL running_min_;
};

class AdaNagGSolver final : public SolverBase {
 public:
  AdaNagGSolver(const Objective& objective, Point x0, GScheduleSpec schedule,
                const GrowthOptions& options)
      : schedule_(std::move(schedule)) {
    name_ = "adanag-g-" + schedule_.name();
    sample_ = objective.evaluate(x0);
    curvature_ = initial_curvature(objective, x0, options.seed);
    step_ = options.s0.value_or(schedule_.default_s0(curvature_));
    if (!(step_ > 0)) throw UsageError(name_ + ": s0 must be positive");
    x_ = x0;
    z_ = std::move(x0);
    anchor_ = z_;
  }

  void advance(const Objective& objective) override {
    const Point& g = sample_.grad;
    const double tau_next = schedule_.tau(k_ + 1);
    Point y_next = x_ - step_ * g;
    z_ -= step_ * schedule_.alpha(k_) * schedule_.tau(k_) * g;
    Point x_next = (1.0 - 1.0 / tau_next) * y_next + (1.0 / tau_next) * z_;
    GradSample next = objective.evaluate(x_next);
    const CurvatureEstimate estimate = local_curvature(sample_, next);
    const double a_k = schedule_.coef_a(k_);
    const double growth = (schedule_.coef_a(k_ - 1) +
                           schedule_.alpha(k_) * schedule_.tau(k_)) /
                          a_k;
    const double alpha_next = schedule_.alpha(k_ + 1);
    const double cap =
        1.0 / (a_k / schedule_.coef_b(k_) +
               (schedule_.coef_b(k_ + 1) +
                alpha_next * alpha_next * tau_next * tau_next) /
                   a_k);
    step_ = next_step_from_branches(growth * step_, cap, estimate.value,
                                    &anomalies_);
    sample_ = std::move(next);
    x_ = std::move(x_next);
    curvature_ = estimate.value;
    anchor_ = z_;
    ++k_;
  }

 private:
  GScheduleSpec schedule_;
  Point x_;
  Point z_;
};

class AdaGdSolver final : public SolverBase {
 public:
  AdaGdSolver(const Objective& objective, Point x0, GdScheduleSpec schedule,
              const GrowthOptions& options)
      : schedule_(std::move(schedule)) {
    name_ = "adagd-" + schedule_.name();
    sample_ = objective.evaluate(x0);
    curvature_ = initial_curvature(objective, x0, options.seed);
    step_ = options.s0.value_or(schedule_.default_s0(curvature_));
    if (!(step_ > 0)) throw UsageError(name_ + ": s0 must be positive");
    x_ = std::move(x0);
    anchor_ = x_;
  }

  void advance(const Objective& objective) override {
    Point x_next = x_ - step_ * sample_.grad;
    GradSample next = objective.evaluate(x_next);
    const CurvatureEstimate estimate = local_curvature(sample_, next);
    const double a_k = schedule_.coef_a(k_);
    const double growth = (schedule_.coef_a(k_ - 1) + 1.0) / a_k;
    const double cap = 1.0 / (a_k / schedule_.coef_b(k_) +
                              (schedule_.coef_b(k_ + 1) + 1.0) / a_k);
    step_ = next_step_from_branches(growth * step_, cap, estimate.value,
                                    &anomalies_);
    sample_ = std::move(next);
    x_ = std::move(x_next);
    curvature_ = estimate.value;
    anchor_ = x_;
    ++k_;
  }

 private:
  GdScheduleSpec schedule_;
  Point x_;
};

double required_smoothness(const Objective& objective,
                           const FixedStepOptions& options,
                           const std::string& name) {
  if (options.smoothness) {
    if (!(*options.smoothness > 0)) {
      throw UsageError(name + ": smoothness bound must be positive");
    }
    return *options.smoothness;
  }
  if (objective.known_smoothness()) return *objective.known_smoothness();
  throw UsageError(name +
                   ": a smoothness bound is required (the objective has no "
                   "known bound)");
}

class NagSolver final : public SolverBase {
 public:
  NagSolver(const Objective& objective, Point x0,
            const FixedStepOptions& options)
      : theta_(ThetaSeq::Kind::recursive) {
    name_ = "nag";
    const double l = required_smoothness(objective, options, name_);
    step_ = 1.0 / l;
    sample_ = objective.evaluate(x0);
    curvature_ = l;
    x_ = x0;
    z_ = std::move(x0);
    anchor_ = z_;
  }

  void advance(const Objective& objective) override {
    const Point& g = sample_.grad;
    const double t_next = theta_.at(static_cast<std::size_t>(k_) + 1);
    Point y_next = x_ - step_ * g;
    z_ -= step_ * theta_.at(static_cast<std::size_t>(k_)) * g;
    Point x_next = (1.0 - 1.0 / t_next) * y_next + (1.0 / t_next) * z_;
    GradSample next = objective.evaluate(x_next);
    curvature_ = local_curvature(sample_, next).value;
    sample_ = std::move(next);
    x_ = std::move(x_next);
    anchor_ = z_;
    ++k_;
  }

 private:
  ThetaSeq theta_;
  Point x_;
  Point z_;
};

class GdSolver final : public SolverBase {
 public:
  GdSolver(const Objective& objective, Point x0,
           const FixedStepOptions& options) {
    name_ = "gd";
    const double l = required_smoothness(objective, options, name_);
    step_ = 1.0 / l;
    sample_ = objective.evaluate(x0);
    curvature_ = l;
    x_ = std::move(x0);
    anchor_ = x_;
  }

  void advance(const Objective& objective) override {
    Point x_next = x_ - step_ * sample_.grad;
    GradSample next = objective.evaluate(x_next);
    curvature_ = local_curvature(sample_, next).value;
    // A 1/L step must strictly decrease f away from stationarity; a
    // non-decrease means the supplied smoothness bound is too small.
    if (next.value >= sample_.value && sample_.grad_norm_sq() > 0) {
      ++anomalies_;
    }
    sample_ = std::move(next);
    x_ = std::move(x_next);
    anchor_ = x_;
    ++k_;
  }

 private:
  Point x_;
};

class AcfgmSolver final : public SolverBase {
 public:
  AcfgmSolver(const Objective& objective, Point x0,
              const AcfgmOptions& options)
      : beta_(options.beta), tau_offset_(options.alpha) {
    name_ = "acfgm";
    if (!(beta_ > 0) || beta_ > 1.0 - std::sqrt(6.0) / 3.0 + 1e-15) {
      throw UsageError("acfgm: beta must lie in (0, 1 - sqrt(6)/3]");
    }
    sample_ = objective.evaluate(x0);
    curvature_ = initial_curvature(objective, x0, options.seed);
    step_ = options.eta1.value_or(0.4 / curvature_);
    if (!(step_ > 0)) throw UsageError("acfgm: eta1 must be positive");
    x_ = x0;
    y_ = x0;
    z_ = std::move(x0);
    anchor_ = z_;
  }

  void advance(const Objective& objective) override {
    const Point& g = sample_.grad;
    const double beta_next = k_ + 1 >= 2 ? beta_ : 0.0;
    const double tau_next =
        k_ + 1 >= 2 ? (static_cast<double>(k_) + 1.0 + tau_offset_) / 2.0
                    : 0.0;
    z_ = y_ - step_ * g;
    y_ = (1.0 - beta_next) * y_ + beta_next * z_;
    Point x_next = (tau_next / (1.0 + tau_next)) * x_ +
                   (1.0 / (1.0 + tau_next)) * z_;
    GradSample next = objective.evaluate(x_next);
    const CurvatureEstimate estimate = local_curvature(sample_, next);
    // eta_{k+2} from eta_{k+1} and L_{k+1}, following the cited schedule.
    const long next_index = k_ + 2;
    double growth = 0.0;
    double cap = 0.0;
    if (next_index == 2) {
      growth = (1.0 - beta_) * step_;
      cap = 0.25;
    } else if (next_index == 3) {
      growth = step_;
      cap = 0.25;
    } else {
      growth = static_cast<double>(next_index) /
               static_cast<double>(next_index - 1) * step_;
      cap = static_cast<double>(next_index - 1) / 8.0;
    }
    step_ = next_step_from_branches(growth, cap, estimate.value, &anomalies_);
    sample_ = std::move(next);
    x_ = std::move(x_next);
    curvature_ = estimate.value;
    anchor_ = z_;
    ++k_;
  }

 private:
  double beta_;
  double tau_offset_;
  Point x_;
  Point y_;
  Point z_;
};

}  // namespace

std::unique_ptr<Solver> make_adanag(const Objective& objective,
                                    const Point& x0,
                                    const AdaNagOptions& options) {
  return std::make_unique<AdaNagSolver>(objective, x0, options,
                                        ThetaSeq::Kind::recursive);
}

std::unique_ptr<Solver> make_simple_adanag(const Objective& objective,
                                           const Point& x0,
                                           const AdaNagOptions& options) {
  return std::make_unique<AdaNagSolver>(objective, x0, options,
                                        ThetaSeq::Kind::rational);
}

std::unique_ptr<Solver> make_adanag_g(const Objective& objective,
                                      const Point& x0, GScheduleSpec schedule,
                                      const GrowthOptions& options) {
  return std::make_unique<AdaNagGSolver>(objective, x0, std::move(schedule),
                                         options);
}

std::unique_ptr<Solver> make_adagd(const Objective& objective, const Point& x0,
                                   GdScheduleSpec schedule,
                                   const GrowthOptions& options) {
  return std::make_unique<AdaGdSolver>(objective, x0, std::move(schedule),
                                       options);
}

std::unique_ptr<Solver> make_nag(const Objective& objective, const Point& x0,
                                 const FixedStepOptions& options) {
  return std::make_unique<NagSolver>(objective, x0, options);
}

std::unique_ptr<Solver> make_gd(const Objective& objective, const Point& x0,
                                const FixedStepOptions& options) {
  return std::make_unique<GdSolver>(objective, x0, options);
}

std::unique_ptr<Solver> make_acfgm(const Objective& objective, const Point& x0,
                                   const AcfgmOptions& options) {
  return std::make_unique<AcfgmSolver>(objective, x0, options);
}

Trace run(Solver& solver, const Objective& objective,
          const RunOptions& options) {
  if (options.max_iters < 0) throw UsageError("run: max_iters must be >= 0");
  if (options.grad_tol < 0) throw UsageError("run: grad_tol must be >= 0");

  Trace trace;
  trace.solver = solver.name();
  std::optional<Point> x_star;
  if (const auto& optimum = objective.known_optimum()) {
    trace.f_star = optimum->f_star;
    x_star = optimum->x_star;
  }

  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&]() {
    if (!options.measure_time) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  const auto push_record = [&]() {
    const GradSample& sample = solver.current();
    TraceRecord record;
    record.k = solver.iteration();
    record.f = sample.value;
    record.grad_norm_sq = sample.grad_norm_sq();
    record.step_size = solver.step_size();
    record.curvature = solver.curvature();
    if (x_star) record.dist_sq = (sample.x - *x_star).squaredNorm();
    record.elapsed_s = elapsed();
    trace.records.push_back(record);
  };

  std::size_t reported = 0;
  const auto report_up_to = [&](std::size_t end) {
    if (!options.on_record) return;
    for (; reported < end; ++reported) {
      options.on_record(trace.records[reported]);
    }
  };

  push_record();
  const double divergence_level =
      options.divergence_factor * (1.0 + std::abs(solver.current().value));
  Point prev_grad = solver.current().grad;

  while (solver.iteration() < options.max_iters) {
    if (options.grad_tol > 0 &&
        trace.back().grad_norm_sq <= options.grad_tol) {
      break;
    }
    try {
      solver.advance(objective);
    } catch (const NumericError&) {
      trace.diverged = true;
      break;
    }
    TraceRecord& finished = trace.records.back();
    finished.next_step = solver.step_size();
    if (x_star) {
      finished.anchor_dist_sq = (solver.anchor() - *x_star).squaredNorm();
    }
    report_up_to(trace.records.size());
    push_record();
    TraceRecord& current = trace.records.back();
    current.grad_dot_prev = solver.current().grad.dot(prev_grad);
    prev_grad = solver.current().grad;
    if (!solver.current().x.allFinite() || current.f > divergence_level) {
      trace.diverged = true;
      break;
    }
  }

  trace.anomalies = solver.anomalies();
  report_up_to(trace.records.size());
  return trace;
}

}  // namespace adastep
