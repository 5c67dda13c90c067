#include "adastep/schedules.hpp"

#include <algorithm>
#include <cmath>

#include "adastep/detail/format.hpp"
#include "adastep/errors.hpp"

namespace adastep {

double ThetaSeq::at(std::size_t k) const {
  if (kind_ == Kind::rational) {
    return 0.5 * (static_cast<double>(k) + 2.0);
  }
  std::lock_guard<std::mutex> lock(mutex_);
  if (memo_.empty()) memo_.push_back(1.0);
  while (memo_.size() <= k) {
    const double prev = memo_.back();
    memo_.push_back(0.5 * (1.0 + std::sqrt(1.0 + 4.0 * prev * prev)));
  }
  return memo_[k];
}

AdaNagParams::AdaNagParams(ThetaSeq::Kind kind)
    : theta_(std::make_shared<const ThetaSeq>(kind)) {
  const double a1 = alpha(1);
  const double a2 = alpha(2);
  const double a3 = alpha(3);
  const double t2 = theta(2);
  const double t3 = theta(3);
  alpha0_ = (2.0 * t2 / (t2 - 1.0)) / (1.0 / a3 + 1.0 / (a2 * a2) - 1.0 / a1);
  tilde_alpha0_ = 0.5 * (1.0 - 1.0 / t2);
  step_floor_factor_ = a2 * a2 * a3 / (a3 + a2 * a2);
  default_s0_factor_ =
      (t3 * (t3 - 1.0) / t2) * (1.0 / alpha0_) * step_floor_factor_;
}

double AdaNagParams::alpha(std::size_t k) const {
  if (k == 0) return alpha0_;
  return 0.5 * (1.0 - 1.0 / theta(k + 2));
}

double AdaNagParams::coef_a(long k) const {
  if (k < 0) throw UsageError("coef_a: defined for k >= 0");
  const double t = theta(static_cast<std::size_t>(k) + 3);
  return alpha(static_cast<std::size_t>(k) + 1) * t * (t - 1.0);
}

double AdaNagParams::coef_b(long k) const {
  if (k < 0) throw UsageError("coef_b: defined for k >= 0");
  if (k == 0) {
    const double t2 = theta(2);
    return tilde_alpha0_ * alpha0_ * t2 * t2;
  }
  const double t = theta(static_cast<std::size_t>(k) + 2);
  const double a = alpha(static_cast<std::size_t>(k));
  return a * a * t * t;
}

double AdaNagParams::rho(long k) const {
  if (k < 0) throw UsageError("rho: defined for k >= 0");
  const double t = theta(static_cast<std::size_t>(k) + 3);
  const double a = alpha(static_cast<std::size_t>(k) + 1);
  return (coef_b(k + 1) + a * a * t * t) / coef_a(k);
}

namespace {

StartupConstants startup_constants(const AdaNagParams& params) {
  StartupConstants c{};
  const double a0 = params.alpha(0);
  const double a1 = params.alpha(1);
  const double a2 = params.alpha(2);
  const double a3 = params.alpha(3);
  const double t2 = params.theta(2);
  const double t3 = params.theta(3);
  const double r0 = params.default_s0_factor();
  const double ta0 = params.tilde_alpha0();
  c.first_step_ratio = (a0 / a1) * (t2 / (t3 * (t3 - 1.0)));
  c.default_s0_factor = r0;
  c.rate_prefactor = 2.0 * (a3 + a2 * a2) / (a2 * a2 * a3);
  c.grad_term_coef = r0 * r0 * a0 * (ta0 + a0) * t2 * t2;
  c.curvature_offset_coef = 1.0 / (r0 * (ta0 + a0) * t2);
  return c;
}

}  // namespace

StartupConstantsPair adanag_constants() {
  return {startup_constants(AdaNagParams(ThetaSeq::Kind::recursive)),
          startup_constants(AdaNagParams(ThetaSeq::Kind::rational))};
}

GScheduleSpec::GScheduleSpec(Map tau, Map alpha, double r, std::string name)
    : tau_(std::move(tau)),
      alpha_(std::move(alpha)),
      r_(r),
      name_(std::move(name)) {}

GScheduleSpec GScheduleSpec::poly(int p) {
  if (p <= 2) {
    throw ScheduleError("poly growth needs p > 2, got " + std::to_string(p));
  }
  const double pd = p;
  const double r = 27.0 / (2.0 * (pd + 3.0) * (2.0 * pd * pd + 8.0 * pd + 17.0));
  return GScheduleSpec(
      [pd](long k) { return (static_cast<double>(k) + pd + 2.0) / pd; },
      [pd](long k) {
        const double num = static_cast<double>(k) + 3.0;
        const double den = static_cast<double>(k) + pd + 2.0;
        return 0.5 * num * num / (den * den);
      },
      r, "poly" + std::to_string(p));
}

GScheduleSpec GScheduleSpec::sqrt_growth() {
  return GScheduleSpec(
      [](long k) { return 2.0 * std::sqrt(static_cast<double>(k) + 3.0); },
      [](long) { return 0.5; }, 0.1, "sqrt");
}

GScheduleSpec GScheduleSpec::custom(Map tau, Map alpha, double certified_r,
                                    std::string name) {
  if (!tau || !alpha) throw UsageError("custom schedule: missing map");
  if (certified_r <= 0) {
    throw ScheduleError("custom schedule: certified r must be positive");
  }
  return GScheduleSpec(std::move(tau), std::move(alpha), certified_r,
                       std::move(name));
}

double GScheduleSpec::tau(long k) const {
  if (k < -1) throw UsageError("tau: defined for k >= -1");
  return tau_(k);
}

double GScheduleSpec::alpha(long k) const {
  if (k < -1) throw UsageError("alpha: defined for k >= -1");
  return alpha_(k);
}

double GScheduleSpec::coef_a(long k) const {
  if (k < -1) throw UsageError("coef_a: defined for k >= -1");
  if (k == -1) return 0.0;
  const double t = tau(k + 1);
  return alpha(k + 1) * t * (t - 1.0);
}

double GScheduleSpec::coef_b(long k) const {
  if (k < 0) throw UsageError("coef_b: defined for k >= 0");
  const double t = tau(k);
  const double a = alpha(k);
  const double t_prev = tau(k - 1);
  const double a_prev = alpha(k - 1);
  return a * a * t * t *
         ((t - 1.0) * (t - 1.0) / (a_prev * t_prev * t_prev) - 1.0);
}

double GScheduleSpec::default_s0(double l0) const {
  if (l0 <= 0) throw UsageError("default_s0: curvature must be positive");
  return coef_a(0) / (alpha(0) * tau(0)) * (r_ / alpha(1)) / l0;
}

GdScheduleSpec::GdScheduleSpec(Map a, Map b, double r, std::string name)
    : a_(std::move(a)), b_(std::move(b)), r_(r), name_(std::move(name)) {}

namespace {

// All shipped instances attain their floor at k = 0, so the certified
// ratio is the k = 0 value of (A_k/B_k + (B_{k+1}+1)/A_k)^{-1}.
double gd_floor_at_zero(const GdScheduleSpec::Map& a,
                        const GdScheduleSpec::Map& b) {
  const double a0 = a(0);
  const double b0 = b(0);
  const double b1 = b(1);
  return 1.0 / (a0 / b0 + (b1 + 1.0) / a0);
}

}  // namespace

GdScheduleSpec GdScheduleSpec::gamma_family(double gamma) {
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw ScheduleError("gamma_family: gamma must lie in (0, 1], got " +
                        std::to_string(gamma));
  }
  Map a = [gamma](long k) { return gamma * (static_cast<double>(k) + 1.0) + 2.0; };
  Map b = [gamma](long k) { return gamma * (static_cast<double>(k) + 1.0); };
  const double r = gd_floor_at_zero(a, b);
  return GdScheduleSpec(std::move(a), std::move(b), r,
                        "gamma(" + detail::format_double(gamma) + ")");
}

GdScheduleSpec GdScheduleSpec::linear_growth() {
  Map a = [](long k) { return (static_cast<double>(k) + 5.0) / 2.0; };
  Map b = [](long k) { return (static_cast<double>(k) + 1.0) / 2.0; };
  const double r = gd_floor_at_zero(a, b);  // 5/29
  return GdScheduleSpec(std::move(a), std::move(b), r, "linear");
}

GdScheduleSpec GdScheduleSpec::sqrt_growth() {
  Map a = [](long k) { return 2.0 * std::sqrt(static_cast<double>(k) + 4.0); };
  Map b = [](long k) {
    return 2.0 * std::sqrt(static_cast<double>(k) + 2.0) - 2.0;
  };
  const double r = gd_floor_at_zero(a, b);
  return GdScheduleSpec(std::move(a), std::move(b), r, "sqrt");
}

GdScheduleSpec GdScheduleSpec::constant_step() {
  Map a = [](long) { return 3.0; };
  Map b = [](long) { return 1.25; };
  const double r = gd_floor_at_zero(a, b);  // 20/63
  return GdScheduleSpec(std::move(a), std::move(b), r, "constant");
}

GdScheduleSpec GdScheduleSpec::custom(Map a, Map b, double certified_r,
                                      std::string name) {
  if (!a || !b) throw UsageError("custom schedule: missing map");
  if (certified_r <= 0) {
    throw ScheduleError("custom schedule: certified r must be positive");
  }
  return GdScheduleSpec(std::move(a), std::move(b), certified_r,
                        std::move(name));
}

double GdScheduleSpec::coef_a(long k) const {
  if (k < -1) throw UsageError("coef_a: defined for k >= -1");
  if (k == -1) return 0.0;
  return a_(k);
}

double GdScheduleSpec::coef_b(long k) const {
  if (k < -1) throw UsageError("coef_b: defined for k >= -1");
  if (k == -1) return b_(0) + 1.0;
  return b_(k);
}

double GdScheduleSpec::default_s0(double l0) const {
  if (l0 <= 0) throw UsageError("default_s0: curvature must be positive");
  return r_ * coef_a(0) / l0;
}

namespace {

// Several admissibility conditions hold with equality in exact arithmetic
// (sqrt growth at k = 0, the constant-step family), so a comparison must
// absorb binary64 rounding before it counts as a violation.
bool below(double lhs, double rhs) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return lhs < rhs - 1e-12 * scale;
}

}  // namespace

std::optional<ScheduleViolation> validate_schedule(const GScheduleSpec& spec,
                                                   long horizon) {
  if (horizon < 0) throw UsageError("validate_schedule: negative horizon");
  for (long k = 0; k <= horizon; ++k) {
    const double alpha_k = spec.alpha(k);
    if (!(alpha_k > 0.0) || below(1.0, alpha_k)) {
      return ScheduleViolation{k, "0 < alpha_k <= 1", alpha_k, 1.0};
    }
    const double tau_k = spec.tau(k);
    const double tau_next = spec.tau(k + 1);
    const double lhs_tau = tau_k * tau_k;
    const double rhs_tau = tau_next * (tau_next - 1.0);
    if (below(lhs_tau, rhs_tau)) {
      return ScheduleViolation{k, "tau_k^2 >= tau_{k+1}(tau_{k+1}-1)",
                               lhs_tau, rhs_tau};
    }
    const double a_k = spec.coef_a(k);
    const double b_k = spec.coef_b(k);
    if (!(b_k > 0.0)) {
      return ScheduleViolation{k, "B_k > 0", b_k, 0.0};
    }
    const double alpha_next = spec.alpha(k + 1);
    const double tau_sq = tau_next * tau_next;
    const double cap =
        1.0 / (a_k / b_k + (spec.coef_b(k + 1) + alpha_next * alpha_next * tau_sq) / a_k);
    if (below(alpha_next * cap, spec.certified_r())) {
      return ScheduleViolation{k, "alpha_{k+1} cap_k >= r", alpha_next * cap,
                               spec.certified_r()};
    }
  }
  return std::nullopt;
}

std::optional<ScheduleViolation> validate_schedule(const GdScheduleSpec& spec,
                                                   long horizon) {
  if (horizon < 0) throw UsageError("validate_schedule: negative horizon");
  for (long k = 0; k <= horizon; ++k) {
    const double a_k = spec.coef_a(k);
    const double a_next = spec.coef_a(k + 1);
    if (below(a_k + 1.0, a_next)) {
      return ScheduleViolation{k, "A_{k+1} <= A_k + 1", a_next, a_k + 1.0};
    }
    const double b_k = spec.coef_b(k);
    if (!(b_k > 0.0)) {
      return ScheduleViolation{k, "B_k > 0", b_k, 0.0};
    }
    const double cap = 1.0 / (a_k / b_k + (spec.coef_b(k + 1) + 1.0) / a_k);
    if (below(cap, spec.certified_r())) {
      return ScheduleViolation{k, "(A_k/B_k + (B_{k+1}+1)/A_k)^{-1} >= r",
                               cap, spec.certified_r()};
    }
    const double b_two = spec.coef_b(k + 2);
    const double rhs = a_next * a_next / (a_k + 1.0) - 1.0;
    if (below(rhs, b_two)) {
      return ScheduleViolation{k, "B_{k+2} <= A_{k+1}^2/(A_k+1) - 1", b_two,
                               rhs};
    }
  }
  return std::nullopt;
}

double epsilon_bar(int n) {
  if (n < 3) throw UsageError("epsilon_bar: defined for N >= 3");
  const AdaNagParams params(ThetaSeq::Kind::recursive);
  const double a2 = params.alpha(2);
  const double a3 = params.alpha(3);
  const double an = params.alpha(static_cast<std::size_t>(n));
  const double a_next = params.alpha(static_cast<std::size_t>(n) + 1);
  return (1.0 / (a2 * a2) + 1.0 / a3 - 1.0 / (an * an)) * a_next - 1.0;
}

}  // namespace adastep
