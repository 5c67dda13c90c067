#include "adastep/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "adastep/detail/format.hpp"
#include "adastep/errors.hpp"

namespace adastep {

namespace {

Certificate make_cert(std::string kind, long k, double lhs, double rhs,
                      const Tolerance& tol) {
  Certificate cert;
  cert.kind = std::move(kind);
  cert.k = k;
  cert.lhs = lhs;
  cert.rhs = rhs;
  cert.slack = lhs - rhs;
  // NaN slack compares false and therefore fails, which is the honest
  // outcome for a diverged trace.
  cert.pass = cert.slack <= tol.rtol * std::abs(rhs) + tol.atol;
  return cert;
}

void require_records(const Trace& trace, const char* what) {
  if (trace.records.empty()) {
    throw UsageError(std::string(what) + ": empty trace");
  }
}

void require_reference(const Trace& trace, const char* what) {
  require_records(trace, what);
  if (!trace.f_star) {
    throw UsageError(std::string(what) +
                     ": requires an exact reference optimum; pooled "
                     "estimates are for reporting only");
  }
  if (!std::isfinite(trace.records.front().dist_sq)) {
    throw UsageError(std::string(what) +
                     ": trace lacks distances to the reference point");
  }
}

double require_positive(double smoothness, const char* what) {
  if (!(smoothness > 0.0) || !std::isfinite(smoothness)) {
    throw UsageError(std::string(what) +
                     ": requires a finite positive smoothness bound");
  }
  return smoothness;
}

// The two momentum families share the potential through their (A_k, B_k)
// weights and the k = 0 anchor coefficient alpha_0 theta_2 (resp.
// alpha_0 tau_0).
struct AccelView {
  const AdaNagParams* nag = nullptr;
  const GScheduleSpec* growth = nullptr;
  double z0_coef = 0.0;

  double a(long k) const { return nag ? nag->coef_a(k) : growth->coef_a(k); }
  double b(long k) const { return nag ? nag->coef_b(k) : growth->coef_b(k); }
};

AccelView view_of(const AdaNagParams& params) {
  AccelView view;
  view.nag = &params;
  view.z0_coef = params.alpha(0) * params.theta(2);
  return view;
}

AccelView view_of(const GScheduleSpec& schedule) {
  AccelView view;
  view.growth = &schedule;
  view.z0_coef = schedule.alpha(0) * schedule.tau(0);
  return view;
}

double accel_value(const TraceRecord& record, double f_star,
                   const AccelView& view) {
  if (!std::isfinite(record.next_step) ||
      !std::isfinite(record.anchor_dist_sq)) {
    throw UsageError("lyapunov: record lacks the k -> k+1 transition fields");
  }
  return record.next_step * view.a(record.k) * (record.f - f_star) +
         0.5 * record.step_size * record.step_size * view.b(record.k) *
             record.grad_norm_sq +
         0.5 * record.anchor_dist_sq;
}

double accel_initial_value(const TraceRecord& first, const AccelView& view) {
  if (!std::isfinite(first.dist_sq)) {
    throw UsageError("lyapunov: first record lacks the initial distance");
  }
  const double s0 = first.step_size;
  const double b_init = view.b(0) + view.z0_coef * view.z0_coef;
  return 0.5 * first.dist_sq + 0.5 * s0 * s0 * b_init * first.grad_norm_sq;
}

CertificateReport accel_descent(const Trace& trace, const AccelView& view,
                                const DescentOptions& options,
                                const char* what) {
  require_reference(trace, what);
  CertificateReport report;
  const auto& recs = trace.records;
  if (recs.size() < 2) {
    report.notes.push_back(std::string(what) +
                           ": trace too short for a transition certificate");
    return report;
  }
  const double f_star = *trace.f_star;
  const double v_init = accel_initial_value(recs[0], view);
  double v_prev = accel_value(recs[0], f_star, view);
  if (options.smoothness) {
    const double l = require_positive(*options.smoothness, what);
    const double damp =
        recs[0].step_size * view.z0_coef / (2.0 * l) * recs[0].grad_norm_sq;
    report.certificates.push_back(
        make_cert("descent", -1, v_prev, v_init - damp, options.tol));
  } else {
    report.notes.push_back(
        std::string(what) +
        ": k = -1 start-up certificate skipped, uncertifiable without a "
        "known smoothness bound");
  }
  for (std::size_t i = 0; i + 2 < recs.size(); ++i) {
    const TraceRecord& cur = recs[i];
    const TraceRecord& nxt = recs[i + 1];
    const double v_next = accel_value(nxt, f_star, view);
    // min{s_k^2 B_k, (s_{k+1}/L_{k+1}) A_k}; L_{k+1} = 0 drops the second
    // branch, an infinite sentinel zeroes it.
    double damp = cur.step_size * cur.step_size * view.b(cur.k);
    if (nxt.curvature > 0.0) {
      damp = std::min(damp, cur.next_step / nxt.curvature * view.a(cur.k));
    }
    report.certificates.push_back(make_cert(
        "descent", cur.k, v_next,
        v_prev - 0.5 * damp * cur.grad_norm_sq, options.tol));
    v_prev = v_next;
  }
  return report;
}

void note_tighter(CertificateReport& report, const char* what,
                  const std::string& exact_kind,
                  const std::string& published_kind) {
  const Certificate* exact = nullptr;
  for (const Certificate& cert : report.certificates) {
    if (cert.kind == exact_kind) exact = &cert;
  }
  if (exact == nullptr) return;
  const Certificate* published = nullptr;
  for (const Certificate& cert : report.certificates) {
    if (cert.kind == published_kind && cert.k == exact->k) published = &cert;
  }
  if (published == nullptr) return;
  std::string note = std::string(what) + ": at k = " +
                     std::to_string(exact->k) + " the exact route gives " +
                     detail::format_double(exact->rhs) +
                     ", the rounded route " +
                     detail::format_double(published->rhs) + "; " +
                     (exact->rhs <= published->rhs ? "exact" : "rounded") +
                     " is tighter";
  report.notes.push_back(std::move(note));
}

}  // namespace

long CertificateReport::failures() const {
  long count = 0;
  for (const Certificate& cert : certificates) {
    if (!cert.pass) ++count;
  }
  return count;
}

std::string certificates_to_csv(const std::vector<Certificate>& certificates) {
  std::string out = "kind,k,lhs,rhs,slack,pass\n";
  for (const Certificate& cert : certificates) {
    out += cert.kind;
    out.push_back(',');
    out += std::to_string(cert.k);
    out.push_back(',');
    detail::append_double(out, cert.lhs);
    out.push_back(',');
    detail::append_double(out, cert.rhs);
    out.push_back(',');
    detail::append_double(out, cert.slack);
    out.push_back(',');
    out.push_back(cert.pass ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

double adanag_lyapunov(const TraceRecord& record, double f_star,
                       const AdaNagParams& params) {
  return accel_value(record, f_star, view_of(params));
}

double adanag_initial_lyapunov(const TraceRecord& first,
                               const AdaNagParams& params) {
  return accel_initial_value(first, view_of(params));
}

double adanag_g_lyapunov(const TraceRecord& record, double f_star,
                         const GScheduleSpec& schedule) {
  return accel_value(record, f_star, view_of(schedule));
}

double adanag_g_initial_lyapunov(const TraceRecord& first,
                                 const GScheduleSpec& schedule) {
  return accel_initial_value(first, view_of(schedule));
}

double adagd_lyapunov(const TraceRecord& record, double f_star,
                      const GdScheduleSpec& schedule) {
  if (!std::isfinite(record.next_step) ||
      !std::isfinite(record.anchor_dist_sq)) {
    throw UsageError("lyapunov: record lacks the k -> k+1 transition fields");
  }
  return record.next_step * schedule.coef_a(record.k) * (record.f - f_star) +
         0.5 * record.step_size * record.step_size *
             schedule.coef_b(record.k) * record.grad_norm_sq +
         0.5 * record.anchor_dist_sq;
}

double adagd_initial_lyapunov(const TraceRecord& first,
                              const GdScheduleSpec& schedule) {
  if (!std::isfinite(first.dist_sq)) {
    throw UsageError("lyapunov: first record lacks the initial distance");
  }
  const double s0 = first.step_size;
  return 0.5 * s0 * s0 * schedule.coef_b(-1) * first.grad_norm_sq +
         0.5 * first.dist_sq;
}

CertificateReport check_adanag_descent(const Trace& trace,
                                       const AdaNagParams& params,
                                       const DescentOptions& options) {
  return accel_descent(trace, view_of(params), options, "check_adanag_descent");
}

CertificateReport check_adanag_g_descent(const Trace& trace,
                                         const GScheduleSpec& schedule,
                                         const DescentOptions& options) {
  return accel_descent(trace, view_of(schedule), options,
                       "check_adanag_g_descent");
}

CertificateReport check_adagd_descent(const Trace& trace,
                                      const GdScheduleSpec& schedule,
                                      const DescentOptions& options) {
  static constexpr const char* kWhat = "check_adagd_descent";
  require_reference(trace, kWhat);
  CertificateReport report;
  const auto& recs = trace.records;
  if (recs.size() < 2) {
    report.notes.push_back(std::string(kWhat) +
                           ": trace too short for a transition certificate");
    return report;
  }
  const double f_star = *trace.f_star;
  std::optional<double> smoothness = options.smoothness;
  if (smoothness) {
    require_positive(*smoothness, kWhat);
  } else {
    report.notes.push_back(
        std::string(kWhat) +
        ": no smoothness bound given, the L-dependent descent terms are "
        "omitted; certificates are weaker but remain valid");
  }
  const double v_init = adagd_initial_lyapunov(recs[0], schedule);
  double v_prev = adagd_lyapunov(recs[0], f_star, schedule);
  // k = -1 transition: min{A_{-1}, B_{-1}} = 0 leaves only the L term.
  double rhs = v_init;
  if (smoothness) {
    rhs -= recs[0].step_size / (2.0 * *smoothness) * recs[0].grad_norm_sq;
  }
  report.certificates.push_back(
      make_cert("descent", -1, v_prev, rhs, options.tol));
  for (std::size_t i = 0; i + 2 < recs.size(); ++i) {
    const TraceRecord& cur = recs[i];
    const TraceRecord& nxt = recs[i + 1];
    const double v_next = adagd_lyapunov(nxt, f_star, schedule);
    const double s_tilde = std::min(
        {cur.step_size, cur.next_step, 1.0 / nxt.curvature});
    const double min_ab =
        std::min(schedule.coef_a(cur.k), schedule.coef_b(cur.k));
    rhs = v_prev - 0.5 * s_tilde * s_tilde * min_ab * cur.grad_norm_sq;
    if (smoothness) {
      rhs -= cur.next_step / (2.0 * *smoothness) * nxt.grad_norm_sq;
    }
    report.certificates.push_back(
        make_cert("descent", cur.k, v_next, rhs, options.tol));
    v_prev = v_next;
  }
  return report;
}

CertificateReport check_adanag_rate(const Trace& trace,
                                    const AdaNagParams& params,
                                    double smoothness, Tolerance tol) {
  static constexpr const char* kWhat = "check_adanag_rate";
  require_reference(trace, kWhat);
  const double l = require_positive(smoothness, kWhat);
  const bool simple = params.kind() == ThetaSeq::Kind::rational;
  CertificateReport report;
  const auto& recs = trace.records;
  const double f_star = *trace.f_star;
  const double d0_sq = recs[0].dist_sq;
  const double g0_sq = recs[0].grad_norm_sq;
  const double l0 = recs[0].curvature;
  const double s0 = recs[0].step_size;
  const AccelView view = view_of(params);

  // Rounded route: C with the published start-up coefficient.
  const double c_coef = simple ? 0.15 : 0.14;
  const double c_pub =
      d0_sq + c_coef * (1.0 / l0) * (1.0 / l0 - 2.0 / l) * g0_sq;
  // Exact route: C = 2(V_{-1} - (s_0 alpha_0 theta_2 / 2L) ||g_0||^2).
  const double v_init = accel_initial_value(recs[0], view);
  const double c_exact =
      2.0 * (v_init - s0 * view.z0_coef / (2.0 * l) * g0_sq);
  const double a2 = params.alpha(2);
  const double a3 = params.alpha(3);
  const double prefactor = (a3 + a2 * a2) / (2.0 * a2 * a2 * a3);
  const double grad_prefactor = 4.0 * prefactor * prefactor;

  double inv_l_min = 1.0 / l0;
  double min_gsq = std::numeric_limits<double>::infinity();
  double theta_sq_sum = 0.0;
  double weighted_grad_sum = 0.0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const TraceRecord& rec = recs[i];
    const long k = rec.k;
    const double gap = rec.f - f_star;
    const double t_k2 = params.theta(static_cast<std::size_t>(k) + 2);
    const double t_k3 = params.theta(static_cast<std::size_t>(k) + 3);
    const double denom_pub =
        simple ? static_cast<double>((k + 3) * (k + 5))
               : static_cast<double>((k + 4) * (k + 4));
    const double rate_coef = simple ? 24.0 : 22.0;
    report.certificates.push_back(make_cert(
        "rate_f", k, gap, rate_coef * l / denom_pub * c_pub, tol));
    if (!simple) {
      report.certificates.push_back(make_cert(
          "rate_f_theta", k, gap, 5.5 * l / (t_k2 * t_k2) * c_pub, tol));
    }
    if (i + 1 < recs.size()) {
      inv_l_min = std::min(inv_l_min, 1.0 / recs[i + 1].curvature);
      report.certificates.push_back(make_cert(
          "rate_f_exact", k, gap,
          prefactor / inv_l_min / (t_k3 * (t_k3 - 1.0)) * c_exact, tol));
    }
    if (k >= 1) {
      min_gsq = std::min(min_gsq, rec.grad_norm_sq);
      theta_sq_sum += t_k2 * t_k2;
      weighted_grad_sum += t_k3 * (t_k3 - 1.0) * rec.grad_norm_sq;
      const double kk = static_cast<double>(k);
      const double denom_grad =
          simple ? kk * (kk * kk + 10.0 * kk + 33.0)
                 : kk * (kk * kk + 12.0 * kk + 47.0);
      const double grad_coef = simple ? 1671.0 : 1440.0;
      report.certificates.push_back(make_cert(
          "rate_grad", k, min_gsq, grad_coef * l * l / denom_grad * c_pub,
          tol));
      if (!simple) {
        report.certificates.push_back(make_cert(
            "rate_grad_theta", k, min_gsq,
            120.0 * l * l / theta_sq_sum * c_pub, tol));
      }
      report.certificates.push_back(make_cert(
          "rate_grad_exact", k, weighted_grad_sum,
          l * l * grad_prefactor * c_exact, tol));
    }
  }
  note_tighter(report, kWhat, "rate_f_exact", "rate_f");
  return report;
}

CertificateReport check_adagd_rate(const Trace& trace,
                                   const GdScheduleSpec& schedule,
                                   double smoothness, Tolerance tol) {
  static constexpr const char* kWhat = "check_adagd_rate";
  require_reference(trace, kWhat);
  const double l = require_positive(smoothness, kWhat);
  CertificateReport report;
  const auto& recs = trace.records;
  const double f_star = *trace.f_star;
  const double s0 = recs[0].step_size;
  const double g0_sq = recs[0].grad_norm_sq;
  const double r = schedule.certified_r();
  const double r_bar =
      recs[0].dist_sq + (schedule.coef_b(0) + 1.0) * s0 * s0 * g0_sq;
  const double c = r_bar - s0 / l * g0_sq;

  double step_sum = 0.0;
  double floor_sum = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  double min_gsq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const TraceRecord& rec = recs[i];
    const long k = rec.k;
    const double gap = rec.f - f_star;
    const double a_k = schedule.coef_a(k);
    step_sum += rec.step_size;
    floor_sum += 1.0 + r * std::min(a_k, schedule.coef_b(k));
    min_gap = std::min(min_gap, gap);
    min_gsq = std::min(min_gsq, rec.grad_norm_sq);
    report.certificates.push_back(
        make_cert("rate_f", k, gap, l / (2.0 * r * a_k) * c, tol));
    if (std::isfinite(rec.next_step)) {
      report.certificates.push_back(make_cert(
          "rate_f_exact", k, gap, c / (2.0 * rec.next_step * a_k), tol));
    }
    report.certificates.push_back(make_cert(
        "rate_f_min", k, min_gap, l * c / (2.0 * r * static_cast<double>(k)),
        tol));
    report.certificates.push_back(
        make_cert("rate_f_min_exact", k, min_gap, c / (2.0 * step_sum), tol));
    report.certificates.push_back(make_cert(
        "rate_grad", k, min_gsq, l * l * c / (r * floor_sum), tol));
  }
  note_tighter(report, kWhat, "rate_f_exact", "rate_f");
  return report;
}

CertificateReport check_adanag_g_rate(const Trace& trace,
                                      const GScheduleSpec& schedule,
                                      double smoothness, Tolerance tol) {
  static constexpr const char* kWhat = "check_adanag_g_rate";
  require_reference(trace, kWhat);
  const double l = require_positive(smoothness, kWhat);
  CertificateReport report;
  const auto& recs = trace.records;
  const double f_star = *trace.f_star;
  const double s0 = recs[0].step_size;
  const double g0_sq = recs[0].grad_norm_sq;
  const double z0_coef = schedule.alpha(0) * schedule.tau(0);
  const double r = schedule.certified_r();
  const double b_init = schedule.coef_b(0) + z0_coef * z0_coef;
  const double c =
      recs[0].dist_sq +
      (s0 * s0 * b_init - s0 * z0_coef / (2.0 * l)) * g0_sq;

  double min_gsq = std::numeric_limits<double>::infinity();
  double min_ab_sum = 0.0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const TraceRecord& rec = recs[i];
    const long k = rec.k;
    const double gap = rec.f - f_star;
    const double a_k = schedule.coef_a(k);
    if (std::isfinite(rec.next_step)) {
      report.certificates.push_back(make_cert(
          "rate_f", k, gap, c / (2.0 * rec.next_step * a_k), tol));
    }
    // s_{k+1} >= r / (L alpha_{k+1}) substituted into the exact bound.
    report.certificates.push_back(make_cert(
        "rate_f_floor", k, gap,
        l * schedule.alpha(k + 1) * c / (2.0 * r * a_k), tol));
    if (k >= 1) {
      min_gsq = std::min(min_gsq, rec.grad_norm_sq);
      min_ab_sum += std::min(a_k, schedule.coef_b(k));
      report.certificates.push_back(make_cert(
          "rate_grad", k, min_gsq, l * l * c / (r * r * min_ab_sum), tol));
    }
  }
  note_tighter(report, kWhat, "rate_f", "rate_f_floor");
  return report;
}

CertificateReport check_acfgm_rate(const Trace& trace, double beta,
                                   Tolerance tol) {
  static constexpr const char* kWhat = "check_acfgm_rate";
  require_reference(trace, kWhat);
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw UsageError(std::string(kWhat) + ": beta must lie in (0, 1)");
  }
  CertificateReport report;
  const auto& recs = trace.records;
  if (recs.size() < 2) {
    report.notes.push_back(std::string(kWhat) +
                           ": trace too short for the distance bound");
    return report;
  }
  const double f_star = *trace.f_star;
  const double eta1 = recs[0].step_size;
  const double eta2 = recs[1].step_size;
  const double l1 = recs[1].curvature;
  const double c =
      recs[0].dist_sq +
      beta * (2.5 * eta2 * l1 - eta2 / eta1) * eta1 * eta1 *
          recs[0].grad_norm_sq;
  const double coef = 12.0 / beta;
  report.notes.push_back(std::string(kWhat) + ": rate coefficient 12/beta = " +
                         detail::format_double(coef) + " at beta = " +
                         detail::format_double(beta));
  double l_hat = 1.0 / (4.0 * (1.0 - beta) * eta1);
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const TraceRecord& rec = recs[i];
    const long k = rec.k;
    l_hat = std::max(l_hat, rec.curvature);
    report.certificates.push_back(make_cert(
        "rate_f", k, rec.f - f_star,
        coef * l_hat / static_cast<double>((k + 1) * (k + 2)) * c, tol));
  }
  return report;
}

CertificateReport check_adanag_floor(const Trace& trace,
                                     const AdaNagParams& params,
                                     double smoothness, Tolerance tol) {
  require_records(trace, "check_adanag_floor");
  const double l = require_positive(smoothness, "check_adanag_floor");
  CertificateReport report;
  const double floor = params.step_floor_factor() / l;
  for (const TraceRecord& rec : trace.records) {
    if (rec.k < 1) continue;
    report.certificates.push_back(make_cert(
        "step_floor", rec.k, floor,
        rec.step_size * params.alpha(static_cast<std::size_t>(rec.k)), tol));
  }
  return report;
}

CertificateReport check_adagd_floor(const Trace& trace,
                                    const GdScheduleSpec& schedule,
                                    double smoothness, Tolerance tol) {
  require_records(trace, "check_adagd_floor");
  const double l = require_positive(smoothness, "check_adagd_floor");
  CertificateReport report;
  const double floor = schedule.certified_r() / l;
  for (const TraceRecord& rec : trace.records) {
    if (rec.k < 1) continue;
    report.certificates.push_back(
        make_cert("step_floor", rec.k, floor, rec.step_size, tol));
  }
  return report;
}

CertificateReport check_adanag_g_floor(const Trace& trace,
                                       const GScheduleSpec& schedule,
                                       double smoothness, Tolerance tol) {
  require_records(trace, "check_adanag_g_floor");
  const double l = require_positive(smoothness, "check_adanag_g_floor");
  CertificateReport report;
  const double floor = schedule.certified_r() / l;
  for (const TraceRecord& rec : trace.records) {
    if (!std::isfinite(rec.next_step)) continue;
    report.certificates.push_back(make_cert(
        "step_floor", rec.k, floor,
        rec.next_step * schedule.alpha(rec.k + 1), tol));
  }
  return report;
}

CertificateReport radius_certificate(const Trace& trace,
                                     const AdaNagParams& params,
                                     Tolerance tol) {
  static constexpr const char* kWhat = "radius_certificate";
  require_reference(trace, kWhat);
  CertificateReport report;
  const AccelView view = view_of(params);
  double radius = std::sqrt(2.0 * accel_initial_value(trace.records[0], view));
  for (const TraceRecord& rec : trace.records) {
    report.certificates.push_back(
        make_cert("radius", rec.k, std::sqrt(rec.dist_sq), radius, tol));
    radius += rec.step_size * std::sqrt(rec.grad_norm_sq);
  }
  report.notes.push_back(std::string(kWhat) + ": radius limit estimate " +
                         detail::format_double(radius));
  return report;
}

std::optional<Certificate> q_diagnostic(const TraceRecord& record,
                                        const TraceRecord& next,
                                        const AdaNagParams& params,
                                        Tolerance tol) {
  const double l_next = next.curvature;
  if (l_next == 0.0 || !std::isfinite(l_next)) return std::nullopt;
  const double s = record.step_size;
  const double s_next = next.step_size;
  const double a = params.coef_a(record.k);
  const double b = params.coef_b(record.k);
  const double rho = params.rho(record.k);
  const double bracket =
      (1.0 - rho * s_next * l_next) * next.grad_norm_sq -
      2.0 * (1.0 - s * l_next) * next.grad_dot_prev +
      (1.0 + b / a * (s * s / s_next) * l_next) * record.grad_norm_sq;
  const double q = -(s_next * a / (2.0 * l_next)) * bracket;
  const double q_bar = s * l_next <= 1.0
                           ? -0.5 * s * s * b * record.grad_norm_sq
                           : -0.5 * s_next / l_next * a * record.grad_norm_sq;
  return make_cert("q_diagnostic", record.k, q, q_bar, tol);
}

void fill_lyapunov(Trace& trace, const AdaNagParams& params) {
  require_reference(trace, "fill_lyapunov");
  const AccelView view = view_of(params);
  for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
    trace.records[i].lyapunov =
        accel_value(trace.records[i], *trace.f_star, view);
  }
}

void fill_lyapunov(Trace& trace, const GScheduleSpec& schedule) {
  require_reference(trace, "fill_lyapunov");
  const AccelView view = view_of(schedule);
  for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
    trace.records[i].lyapunov =
        accel_value(trace.records[i], *trace.f_star, view);
  }
}

void fill_lyapunov(Trace& trace, const GdScheduleSpec& schedule) {
  require_reference(trace, "fill_lyapunov");
  for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
    trace.records[i].lyapunov =
        adagd_lyapunov(trace.records[i], *trace.f_star, schedule);
  }
}

}  // namespace adastep
