// Closed-form recovery thresholds, tail bounds, counting and packing bounds,
// the Fano lower bound, and the phase-diagram exponent map. Everything here
// is a pure function of scalar parameters; probability-scale quantities stay
// in log space and are exponentiated (with clamping) only by callers.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

namespace palign {

// phi(gamma) = (1+gamma) log(1+gamma) - gamma, the Bennett rate function.
double phi(double gamma);

// Natural-log binary entropy; endpoints return 0 by continuity.
double binary_entropy(double x);

struct SignalParams {
  double gamma;      // rho (1-p) / p
  double phi_gamma;  // phi(gamma)
  double p11;        // p^2 (1 + gamma)
};

SignalParams signal_params(double p, double rho);

struct ErPartialThreshold {
  double value = 0.0;  // c1(delta) log n / (p^2 phi(gamma))
  bool gamma_zero_warning = false;
};

// c1(delta) = max(100, 200 h(1-delta) / (1-delta)).
double c1_of_delta(double delta);

ErPartialThreshold partial_threshold_er(double n, double p, double rho, double delta);

struct ErExactThreshold {
  double value = 0.0;  // 3000 max(log n / (p^2 phi), log(1/(p^2 gamma)) / (p^2 gamma))
  bool second_term_dropped = false;  // p^2 gamma >= 1 makes its log nonpositive
  bool gamma_zero_warning = false;
};

ErExactThreshold exact_threshold_er(double n, double p, double rho);

// C2 max(log n / log(1/(1-rho^2)), 1). C2 defaults to the stitched regime
// constant max(25 c0^2, 1100, 100); pass c2_override to replace it.
double gaussian_threshold(double n, double rho, double c0 = 1.0,
                          std::optional<double> c2_override = std::nullopt);

// N_k = C(m,2) - C(m-k,2), the number of edge pairs a k-vertex disagreement
// disturbs.
long n_k(long m, long k);

struct TkBounds {
  double log_middle;   // log C(m,m-k) C(n-m+k,k)^2 k!
  double log_relaxed;  // log m^k n^{2k} / k!^2
};

TkBounds t_k_count_bound(double n, long m, long k);

// log of the Bennett-style bound on the strong-noise event; requires
// tau > edges p^2, below which the bound is vacuous.
double bennett_noise_tail(double tau, long edges, double p, double gamma, long k);

double gaussian_product_noise_tail(double tau, long edges, double rho, long k);
double gaussian_sq_noise_tail(double tau, long edges, double rho, long k);

enum class ChernoffSide { UpperLog, UpperSimple, Lower };

// Log tail bounds for Bin sums with mean mu: upper-log -mu phi(delta),
// upper-simple -delta^2 mu / (2+delta), lower -delta^2 mu / 2.
double chernoff_binomial(double mu, double delta, ChernoffSide side);

// -(n/2)(delta - log(1+delta)), the chi-square upper tail exponent.
double chisquare_tail(long n_dof, double delta);

// rho N_k - c0 max(sqrt(N_k log(1/theta)), log(1/theta)), theta = m^{-2k}.
double hanson_wright_tau(double rho, double n_k_val, long k, long m, double c0);

struct PackingBound {
  double log_count;  // delta m (log(delta n) - 3)
  bool vacuous;      // nonpositive log count carries no information
};

PackingBound packing_lower_bound(double n, long m, double delta);

struct KlPairBound {
  double exact;  // D(correlated pair || independent pair)
  double bound;  // 25 p^2 phi(gamma) for ER; equals exact for Gaussian
};

KlPairBound kl_pair_bound(ModelKind model, double p, double rho);

// C(m,2) times the per-pair bound (ER) or exact divergence (Gaussian).
double mutual_information_bound(ModelKind model, long m, double p, double rho);

struct FanoBound {
  double value;  // max(0, 1 - (MI + log 2) / packing log count)
  bool vacuous_packing;
};

FanoBound fano_failure_lower_bound(ModelKind model, double n, long m, double p, double rho,
                                   double delta);

// True iff 25 m p^2 phi(gamma) <= 4c (log n - log m): the impossibility
// condition for support recovery.
bool support_recovery_check(double n, long m, double p, double rho, double c);

struct GridCheckReport {
  bool pass = true;
  double max_violation = 0.0;
  long points_checked = 0;
};

// At each paired (gamma, eta) with 0 <= eta <= gamma/(4(1+gamma)), checks
// (1+gamma)(1-eta) > 1 and phi((1-eta)(1+gamma)-1) >= phi(gamma)/4.
GridCheckReport eta_phi_inequality_check(const std::vector<double>& gammas,
                                         const std::vector<double>& etas);

// For each m >= 10, checks sum_{k=1}^{m-1} exp(-m h(k/m)) <= (4 log m + 2)/m,
// accumulating small k first so the tiny tail terms are not absorbed early.
GridCheckReport entropy_sum_check(const std::vector<long>& ms);

enum class RecoveryCriterion { Partial, Exact };
enum class LogFactor { None, LogN };

struct PhaseExponent {
  double a3;
  LogFactor log_factor;
};

// The m ~ n^{a3} (log n)^{0 or 1} boundary for p = n^{-a1}, rho = n^{-a2}.
PhaseExponent phase_diagram_exponent(double a1, double a2, RecoveryCriterion criterion);

struct ThresholdOptions {
  double delta = 0.5;
  double c0 = 1.0;
  std::optional<double> c2;
};

// One-stop evaluation for the CLI: thresholds that apply to the model are
// filled, the rest stay NaN and serialize as null.
struct ThresholdReport {
  ModelKind model = ModelKind::ErdosRenyi;
  double n = 0.0;
  long m = 0;
  double p = 0.0;
  double rho = 0.0;
  double delta = 0.0;
  double c0 = 1.0;
  double partial_er = 0.0;
  double exact_er = 0.0;
  double gaussian = 0.0;
  double fano_failure_lb = 0.0;
  bool strong_signal = false;
  bool gamma_zero_warning = false;
  bool second_term_dropped = false;
  bool fano_vacuous = false;
};

ThresholdReport threshold_report(ModelKind model, double n, long m, double p, double rho,
                                 const ThresholdOptions& opt);

std::string threshold_report_json(const ThresholdReport& r);

}  // namespace palign
