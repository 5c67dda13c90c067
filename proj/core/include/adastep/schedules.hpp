#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace adastep {

// Momentum sequence theta_0 = 1, theta_k = (1 + sqrt(1 + 4 theta_{k-1}^2))/2,
// or its rational surrogate theta_k = (k+2)/2. Lazily memoized; safe to
// share across threads.
class ThetaSeq {
 public:
  enum class Kind { recursive, rational };

  explicit ThetaSeq(Kind kind) : kind_(kind) {}

  Kind kind() const { return kind_; }
  double at(std::size_t k) const;

 private:
  Kind kind_;
  mutable std::mutex mutex_;
  mutable std::vector<double> memo_;
};

inline double theta(const ThetaSeq& seq, std::size_t k) { return seq.at(k); }

// Momentum and step coefficients shared by the accelerated adaptive
// methods. alpha_k = (1 - 1/theta_{k+2})/2 for k >= 1; alpha_0 is the
// solution of the start-up balance equation and tilde_alpha0 the matching
// warm-up coefficient.
class AdaNagParams {
 public:
  explicit AdaNagParams(ThetaSeq::Kind kind = ThetaSeq::Kind::recursive);

  ThetaSeq::Kind kind() const { return theta_->kind(); }
  const std::shared_ptr<const ThetaSeq>& theta_seq() const { return theta_; }

  double theta(std::size_t k) const { return theta_->at(k); }
  double alpha(std::size_t k) const;
  double tilde_alpha0() const { return tilde_alpha0_; }

  // alpha_2^2 alpha_3 / (alpha_3 + alpha_2^2): the universal lower bound
  // on s_k alpha_k relative to the running inverse-curvature minimum.
  double step_floor_factor() const { return step_floor_factor_; }

  // r_0 in s_0 = r_0 / L_0: makes the k = 0 branch ratios collapse onto
  // the same floor as every later step.
  double default_s0_factor() const { return default_s0_factor_; }

  // Lyapunov weights: A_k = alpha_{k+1} theta_{k+3}(theta_{k+3}-1) for
  // k >= 0; B_0 = tilde_alpha0 alpha_0 theta_2^2, B_k = alpha_k^2
  // theta_{k+2}^2 for k >= 1.
  double coef_a(long k) const;
  double coef_b(long k) const;

  // (B_{k+1} + alpha_{k+1}^2 theta_{k+3}^2) / A_k; identically 1.
  double rho(long k) const;

 private:
  std::shared_ptr<const ThetaSeq> theta_;
  double alpha0_ = 0.0;
  double tilde_alpha0_ = 0.0;
  double step_floor_factor_ = 0.0;
  double default_s0_factor_ = 0.0;
};

// Derived start-up constants for one accelerated variant, in the roles
// they play in the convergence statements.
struct StartupConstants {
  double first_step_ratio;      // s_1/s_0 coefficient on the growth branch
  double default_s0_factor;     // r_0 in s_0 = r_0/L_0
  double rate_prefactor;        // 2(alpha_3+alpha_2^2)/(alpha_2^2 alpha_3)
  double grad_term_coef;        // weight of (1/L_0)^2 ||g_0||^2 in C
  double curvature_offset_coef; // c_L in the (1/L_0 - c_L/L) factor of C
};

struct StartupConstantsPair {
  StartupConstants adanag;   // recursive theta
  StartupConstants simple;   // rational theta
};

// Computed from the theta memo at call time; the published table of
// rounded values is a golden test against these, not their source.
StartupConstantsPair adanag_constants();

// Growth schedule (tau_k, alpha_k) for the generalized accelerated method,
// with the derived Lyapunov weights and a certified step-floor ratio r.
class GScheduleSpec {
 public:
  using Map = std::function<double(long)>;  // defined for k >= -1

  // tau_k = (k+p+2)/p, alpha_k = (k+3)^2 / (2 (k+p+2)^2); requires p > 2.
  static GScheduleSpec poly(int p);
  // tau_k = 2 sqrt(k+3), alpha_k = 1/2.
  static GScheduleSpec sqrt_growth();
  static GScheduleSpec custom(Map tau, Map alpha, double certified_r,
                              std::string name);

  double tau(long k) const;    // k >= -1
  double alpha(long k) const;  // k >= -1

  // A_k = alpha_{k+1} tau_{k+1}(tau_{k+1}-1), A_{-1} = 0.
  double coef_a(long k) const;
  // B_k = alpha_k^2 tau_k^2 ((tau_k-1)^2/(alpha_{k-1} tau_{k-1}^2) - 1),
  // extended to k = 0 through the k = -1 values above.
  double coef_b(long k) const;

  double certified_r() const { return r_; }
  const std::string& name() const { return name_; }

  // s_0 = A_0/(alpha_0 tau_0) * (r/alpha_1) / l0.
  double default_s0(double l0) const;

 private:
  GScheduleSpec(Map tau, Map alpha, double r, std::string name);

  Map tau_;
  Map alpha_;
  double r_;
  std::string name_;
};

// Coefficient schedule for the adaptive gradient-descent family.
class GdScheduleSpec {
 public:
  using Map = std::function<double(long)>;  // defined for k >= 0

  // A_k = gamma(k+1) + 2, B_k = gamma(k+1); requires gamma in (0, 1].
  static GdScheduleSpec gamma_family(double gamma);
  // A_k = (k+5)/2, B_k = (k+1)/2.
  static GdScheduleSpec linear_growth();
  // A_k = 2 sqrt(k+4), B_k = 2 sqrt(k+2) - 2.
  static GdScheduleSpec sqrt_growth();
  // A_k = 3, B_k = 5/4; the step settles at a constant.
  static GdScheduleSpec constant_step();
  static GdScheduleSpec custom(Map a, Map b, double certified_r,
                               std::string name);

  double coef_a(long k) const;  // k >= -1, A_{-1} = 0
  double coef_b(long k) const;  // k >= -1, B_{-1} = B_0 + 1

  double certified_r() const { return r_; }
  const std::string& name() const { return name_; }

  // s_0 = r A_0 / l0.
  double default_s0(double l0) const;

 private:
  GdScheduleSpec(Map a, Map b, double r, std::string name);

  Map a_;
  Map b_;
  double r_;
  std::string name_;
};

// First failed admissibility condition, if any. A violation is a result,
// not an exception.
struct ScheduleViolation {
  long k = 0;
  std::string inequality;
  double lhs = 0.0;
  double rhs = 0.0;
};

std::optional<ScheduleViolation> validate_schedule(const GScheduleSpec& spec,
                                                   long horizon);
std::optional<ScheduleViolation> validate_schedule(const GdScheduleSpec& spec,
                                                   long horizon);

// Largest step-rule relaxation that keeps the step floor intact when
// applied from iteration N on; requires N >= 3.
double epsilon_bar(int n);

}  // namespace adastep
