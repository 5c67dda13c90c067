#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adastep/schedules.hpp"
#include "adastep/trace.hpp"

namespace adastep {

// Machine-checked inequality lhs <= rhs; slack = lhs - rhs.
struct Certificate {
  std::string kind;
  long k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
};

// V spans many orders of magnitude along a run, so comparisons carry a
// relative term for the large early values and an absolute term for the
// cancellation-dominated tail.
struct Tolerance {
  double rtol = 1e-9;
  double atol = 1e-12;
};

struct CertificateReport {
  std::vector<Certificate> certificates;
  std::vector<std::string> notes;  // skip reasons, tightness records

  long failures() const;
  bool all_pass() const { return failures() == 0; }
};

// CSV rows "kind,k,lhs,rhs,slack,pass" with a header.
std::string certificates_to_csv(const std::vector<Certificate>& certificates);

// ---- Momentum family potential ----
// V_k = s_{k+1} A_k (f(x_k) - f*) + (1/2) s_k^2 B_k ||g_k||^2
//     + (1/2) ||z_{k+1} - x*||^2, defined once the k -> k+1 transition ran.
// V_{-1} = (1/2)||x0 - x*||^2 + (1/2) s_0^2 (B_0 + zc^2) ||g_0||^2 with
// zc the z-update coefficient alpha_0 theta_2 (or alpha_0 tau_0).
double adanag_lyapunov(const TraceRecord& record, double f_star,
                       const AdaNagParams& params);
double adanag_initial_lyapunov(const TraceRecord& first,
                               const AdaNagParams& params);
double adanag_g_lyapunov(const TraceRecord& record, double f_star,
                         const GScheduleSpec& schedule);
double adanag_g_initial_lyapunov(const TraceRecord& first,
                                 const GScheduleSpec& schedule);

// ---- Gradient-descent family potential ----
// V_k = s_{k+1} A_k (f(x_k) - f*) + (1/2) s_k^2 B_k ||g_k||^2
//     + (1/2) ||x_{k+1} - x*||^2 for k >= 0;
// V_{-1} = (1/2) s_0^2 (B_0 + 1) ||g_0||^2 + (1/2) ||x_0 - x*||^2.
double adagd_lyapunov(const TraceRecord& record, double f_star,
                      const GdScheduleSpec& schedule);
double adagd_initial_lyapunov(const TraceRecord& first,
                              const GdScheduleSpec& schedule);

struct DescentOptions {
  // Global smoothness bound; without it the L-dependent certificates are
  // skipped (momentum k = -1) or weakened (gradient-descent family), with
  // an explanatory note.
  std::optional<double> smoothness;
  Tolerance tol;
};

// Per-transition descent certificates
//   V_{k+1} <= V_k - (1/2) min{s_k^2 B_k, (s_{k+1}/L_{k+1}) A_k} ||g_k||^2
// for k >= 0, plus the start-up certificate
//   V_0 <= V_{-1} - (s_0 zc / (2L)) ||g_0||^2
// when a smoothness bound is available.
CertificateReport check_adanag_descent(const Trace& trace,
                                       const AdaNagParams& params,
                                       const DescentOptions& options = {});
CertificateReport check_adanag_g_descent(const Trace& trace,
                                         const GScheduleSpec& schedule,
                                         const DescentOptions& options = {});

// Descent certificates
//   V_{k+1} <= V_k - (s_{k+1}/(2L)) ||g_{k+1}||^2
//             - (min{s_k, s_{k+1}, 1/L_{k+1}}^2 / 2) min{A_k, B_k} ||g_k||^2
// for k >= -1, with min{A_{-1}, B_{-1}} = 0.
CertificateReport check_adagd_descent(const Trace& trace,
                                      const GdScheduleSpec& schedule,
                                      const DescentOptions& options = {});

// ---- Rate bounds ----
// Each checker certifies the published rounded bound and the exact
// potential-based bound as separate routes and records which route is
// tighter at the final iterate.
CertificateReport check_adanag_rate(const Trace& trace,
                                    const AdaNagParams& params,
                                    double smoothness, Tolerance tol = {});
CertificateReport check_adagd_rate(const Trace& trace,
                                   const GdScheduleSpec& schedule,
                                   double smoothness, Tolerance tol = {});
CertificateReport check_adanag_g_rate(const Trace& trace,
                                      const GScheduleSpec& schedule,
                                      double smoothness, Tolerance tol = {});
// f(x_k) - f* <= (12/beta) Lhat_k / ((k+1)(k+2)) * C with
// Lhat_k = max{1/(4(1-beta) eta_1), L_1, ..., L_k}.
CertificateReport check_acfgm_rate(const Trace& trace, double beta,
                                   Tolerance tol = {});

// ---- Step floors ----
CertificateReport check_adanag_floor(const Trace& trace,
                                     const AdaNagParams& params,
                                     double smoothness, Tolerance tol = {});
CertificateReport check_adagd_floor(const Trace& trace,
                                    const GdScheduleSpec& schedule,
                                    double smoothness, Tolerance tol = {});
CertificateReport check_adanag_g_floor(const Trace& trace,
                                       const GScheduleSpec& schedule,
                                       double smoothness, Tolerance tol = {});

// ---- Boundedness ----
// ||x_k - x*|| <= R_k = sqrt(2 V_{-1}) + sum_{i<k} s_i ||g_i||; the report
// notes the limit estimate of R.
CertificateReport radius_certificate(const Trace& trace,
                                     const AdaNagParams& params,
                                     Tolerance tol = {});

// Expanded per-transition potential difference bound; sharper than the
// descent rhs and useful to localize a failure. Empty when L_{k+1} = 0.
std::optional<Certificate> q_diagnostic(const TraceRecord& record,
                                        const TraceRecord& next,
                                        const AdaNagParams& params,
                                        Tolerance tol = {});

// Fill the lyapunov column of a trace in place where V_k is computable.
void fill_lyapunov(Trace& trace, const AdaNagParams& params);
void fill_lyapunov(Trace& trace, const GScheduleSpec& schedule);
void fill_lyapunov(Trace& trace, const GdScheduleSpec& schedule);

}  // namespace adastep
