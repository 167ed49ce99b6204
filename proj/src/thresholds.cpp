#include "thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common.hpp"

namespace palign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void need_finite(double x, const char* what) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, strprintf("%s must be finite", what));
}

void need_count(long x, const char* what) {
  if (x < 0) fail(ErrorCode::InvalidArgument, strprintf("%s must be >= 0", what));
}

void check_er_pr(double p, double rho) {
  need_finite(p, "p");
  need_finite(rho, "rho");
  if (p <= 0.0 || p > 0.5)
    fail(ErrorCode::InvalidArgument, "the ER formulas are stated for p in (0, 1/2]");
  if (rho < 0.0 || rho >= 1.0)
    fail(ErrorCode::InvalidArgument, "the ER formulas are stated for rho in [0, 1)");
}

void check_population(double n) {
  need_finite(n, "n");
  if (n <= 1.0) fail(ErrorCode::InvalidArgument, "n must exceed 1 (log n enters the formulas)");
}

double log_binomial(double upper, long lower) {
  return std::lgamma(upper + 1.0) - std::lgamma(static_cast<double>(lower) + 1.0) -
         std::lgamma(upper - static_cast<double>(lower) + 1.0);
}

std::string json_value(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  return fmt17(x);
}

}  // namespace

double phi(double gamma) {
  need_finite(gamma, "gamma");
  if (gamma < 0.0) fail(ErrorCode::InvalidArgument, "phi is defined for gamma >= 0");
  return (1.0 + gamma) * std::log1p(gamma) - gamma;
}

double binary_entropy(double x) {
  need_finite(x, "entropy argument");
  if (x < 0.0 || x > 1.0) fail(ErrorCode::InvalidArgument, "entropy argument must lie in [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

SignalParams signal_params(double p, double rho) {
  need_finite(p, "p");
  need_finite(rho, "rho");
  if (p <= 0.0 || p >= 1.0) fail(ErrorCode::InvalidArgument, "p must lie in (0, 1)");
  if (rho < 0.0 || rho > 1.0) fail(ErrorCode::InvalidArgument, "rho must lie in [0, 1]");
  double gamma = rho * (1.0 - p) / p;
  return {gamma, phi(gamma), p * p * (1.0 + gamma)};
}

double c1_of_delta(double delta) {
  need_finite(delta, "delta");
  if (delta <= 0.0 || delta >= 1.0)
    fail(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  return std::max(100.0, 200.0 * binary_entropy(1.0 - delta) / (1.0 - delta));
}

ErPartialThreshold partial_threshold_er(double n, double p, double rho, double delta) {
  check_population(n);
  check_er_pr(p, rho);
  double c1 = c1_of_delta(delta);
  SignalParams sig = signal_params(p, rho);
  if (sig.gamma == 0.0) return {kInf, true};
  return {c1 * std::log(n) / (p * p * sig.phi_gamma), false};
}

ErExactThreshold exact_threshold_er(double n, double p, double rho) {
  check_population(n);
  check_er_pr(p, rho);
  SignalParams sig = signal_params(p, rho);
  ErExactThreshold out;
  if (sig.gamma == 0.0) {
    out.value = kInf;
    out.gamma_zero_warning = true;
    return out;
  }
  double first = std::log(n) / (p * p * sig.phi_gamma);
  double p2g = p * p * sig.gamma;
  if (p2g >= 1.0) {
    out.second_term_dropped = true;
    out.value = 3000.0 * first;
    return out;
  }
  out.value = 3000.0 * std::max(first, std::log(1.0 / p2g) / p2g);
  return out;
}

double gaussian_threshold(double n, double rho, double c0, std::optional<double> c2_override) {
  check_population(n);
  need_finite(rho, "rho");
  if (rho <= 0.0 || rho >= 1.0)
    fail(ErrorCode::InvalidArgument, "the Gaussian threshold needs rho in (0, 1)");
  need_finite(c0, "c0");
  if (c0 < 0.0) fail(ErrorCode::InvalidArgument, "c0 must be >= 0");
  double c2 = c2_override ? *c2_override : std::max({25.0 * c0 * c0, 1100.0, 100.0});
  if (!(c2 > 0.0)) fail(ErrorCode::InvalidArgument, "C2 must be positive");
  double rate = -std::log1p(-rho * rho);  // log(1/(1-rho^2))
  return c2 * std::max(std::log(n) / rate, 1.0);
}

long n_k(long m, long k) {
  need_count(m, "m");
  need_count(k, "k");
  if (k > m) fail(ErrorCode::InvalidArgument, "need k <= m");
  auto pairs = [](long x) { return x * (x - 1) / 2; };
  return pairs(m) - pairs(m - k);
}

TkBounds t_k_count_bound(double n, long m, long k) {
  check_population(n);
  if (k < 1 || k > m) fail(ErrorCode::InvalidArgument, "need 1 <= k <= m");
  if (static_cast<double>(m) > n) fail(ErrorCode::InvalidArgument, "need m <= n");
  double dm = static_cast<double>(m), dk = static_cast<double>(k);
  double log_kfact = std::lgamma(dk + 1.0);
  TkBounds out;
  out.log_middle =
      log_binomial(dm, m - k) + 2.0 * log_binomial(n - dm + dk, k) + log_kfact;
  out.log_relaxed = dk * std::log(dm) + 2.0 * dk * std::log(n) - 2.0 * log_kfact;
  return out;
}

double bennett_noise_tail(double tau, long edges, double p, double gamma, long k) {
  need_finite(tau, "tau");
  need_finite(p, "p");
  need_finite(gamma, "gamma");
  if (edges < 1) fail(ErrorCode::InvalidArgument, "need at least one edge");
  need_count(k, "k");
  if (p <= 0.0 || p >= 1.0) fail(ErrorCode::InvalidArgument, "p must lie in (0, 1)");
  if (gamma < 0.0) fail(ErrorCode::InvalidArgument, "gamma must be >= 0");
  double ep2 = static_cast<double>(edges) * p * p;
  if (tau <= ep2)
    fail(ErrorCode::InvalidArgument,
         strprintf("the Bennett bound needs tau > edges p^2 = %.17g (got tau = %.17g)", ep2, tau));
  return -0.5 * tau * std::log(tau / ep2) + 0.5 * tau - 0.5 * ep2 +
         static_cast<double>(k) * gamma / (4.0 * (2.0 + gamma));
}

double gaussian_product_noise_tail(double tau, long edges, double rho, long k) {
  need_finite(tau, "tau");
  need_finite(rho, "rho");
  need_count(edges, "edges");
  need_count(k, "k");
  if (rho < 0.0 || rho > 1.0) fail(ErrorCode::InvalidArgument, "rho must lie in [0, 1]");
  return -rho * tau / 6.0 + rho * rho * static_cast<double>(edges) / 14.0 +
         std::log(5.0) / 8.0 * static_cast<double>(k);
}

double gaussian_sq_noise_tail(double tau, long edges, double rho, long k) {
  need_finite(tau, "tau");
  need_finite(rho, "rho");
  need_count(edges, "edges");
  need_count(k, "k");
  if (rho <= 0.0 || rho >= 1.0) fail(ErrorCode::InvalidArgument, "rho must lie in (0, 1)");
  double rate = -std::log1p(-rho);  // log(1/(1-rho))
  return -rho * tau / (4.0 * (1.0 - rho)) - static_cast<double>(edges) / 4.0 * rate +
         static_cast<double>(k) / 8.0 * rate;
}

double chernoff_binomial(double mu, double delta, ChernoffSide side) {
  need_finite(mu, "mu");
  need_finite(delta, "delta");
  if (mu <= 0.0) fail(ErrorCode::InvalidArgument, "mu must be positive");
  if (delta <= 0.0) fail(ErrorCode::InvalidArgument, "delta must be positive");
  switch (side) {
    case ChernoffSide::UpperLog: return -mu * phi(delta);
    case ChernoffSide::UpperSimple: return -delta * delta * mu / (2.0 + delta);
    case ChernoffSide::Lower:
      if (delta >= 1.0)
        fail(ErrorCode::InvalidArgument, "the lower tail bound needs delta in (0, 1)");
      return -0.5 * delta * delta * mu;
  }
  fail(ErrorCode::Internal, "unreachable Chernoff side");
}

double chisquare_tail(long n_dof, double delta) {
  if (n_dof < 1) fail(ErrorCode::InvalidArgument, "need at least one degree of freedom");
  need_finite(delta, "delta");
  if (delta <= 0.0) fail(ErrorCode::InvalidArgument, "delta must be positive");
  return -0.5 * static_cast<double>(n_dof) * (delta - std::log1p(delta));
}

double hanson_wright_tau(double rho, double n_k_val, long k, long m, double c0) {
  need_finite(rho, "rho");
  need_finite(n_k_val, "N_k");
  need_finite(c0, "c0");
  need_count(k, "k");
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  if (rho < 0.0 || rho > 1.0) fail(ErrorCode::InvalidArgument, "rho must lie in [0, 1]");
  if (n_k_val < 0.0) fail(ErrorCode::InvalidArgument, "N_k must be >= 0");
  if (c0 < 0.0) fail(ErrorCode::InvalidArgument, "c0 must be >= 0");
  double log_inv_theta = 2.0 * static_cast<double>(k) * std::log(static_cast<double>(m));
  return rho * n_k_val -
         c0 * std::max(std::sqrt(n_k_val * log_inv_theta), log_inv_theta);
}

PackingBound packing_lower_bound(double n, long m, double delta) {
  check_population(n);
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  need_finite(delta, "delta");
  if (delta <= 0.0 || delta >= 1.0)
    fail(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  double log_count = delta * static_cast<double>(m) * (std::log(delta * n) - 3.0);
  return {log_count, !(log_count > 0.0)};
}

KlPairBound kl_pair_bound(ModelKind model, double p, double rho) {
  need_finite(rho, "rho");
  if (model == ModelKind::GaussianWigner) {
    if (rho < 0.0 || rho > 1.0) fail(ErrorCode::InvalidArgument, "rho must lie in [0, 1]");
    double exact = -0.5 * std::log1p(-rho * rho);
    return {exact, exact};
  }
  check_er_pr(p, rho);
  BernoulliPairPmf pmf = correlated_bernoulli_pmf(p, rho);
  double q[4] = {(1.0 - p) * (1.0 - p), p * (1.0 - p), p * (1.0 - p), p * p};
  double cells[4] = {pmf.p00, pmf.p01, pmf.p10, pmf.p11};
  double exact = 0.0;
  for (int i = 0; i < 4; ++i)
    if (cells[i] > 0.0) exact += cells[i] * std::log(cells[i] / q[i]);
  SignalParams sig = signal_params(p, rho);
  double bound = 25.0 * p * p * sig.phi_gamma;
  if (exact > bound + 1e-12)
    fail(ErrorCode::Internal, "exact pair KL exceeded its closed-form bound");
  return {exact, bound};
}

double mutual_information_bound(ModelKind model, long m, double p, double rho) {
  need_count(m, "m");
  if (m <= 1) return 0.0;
  double pairs = 0.5 * static_cast<double>(m) * (static_cast<double>(m) - 1.0);
  KlPairBound kl = kl_pair_bound(model, p, rho);
  return pairs * (model == ModelKind::ErdosRenyi ? kl.bound : kl.exact);
}

FanoBound fano_failure_lower_bound(ModelKind model, double n, long m, double p, double rho,
                                   double delta) {
  PackingBound pack = packing_lower_bound(n, m, delta);
  if (pack.vacuous) return {0.0, true};
  double mi = mutual_information_bound(model, m, p, rho);
  double value = 1.0 - (mi + std::log(2.0)) / pack.log_count;
  return {std::max(0.0, value), false};
}

bool support_recovery_check(double n, long m, double p, double rho, double c) {
  check_population(n);
  check_er_pr(p, rho);
  need_finite(c, "c");
  if (c <= 0.0) fail(ErrorCode::InvalidArgument, "c must be positive");
  if (m < 1 || static_cast<double>(m) > n)
    fail(ErrorCode::InvalidArgument, "need 1 <= m <= n");
  SignalParams sig = signal_params(p, rho);
  double lhs = 25.0 * static_cast<double>(m) * p * p * sig.phi_gamma;
  double rhs = 4.0 * c * (std::log(n) - std::log(static_cast<double>(m)));
  return lhs <= rhs;
}

GridCheckReport eta_phi_inequality_check(const std::vector<double>& gammas,
                                         const std::vector<double>& etas) {
  if (gammas.size() != etas.size())
    fail(ErrorCode::InvalidArgument, "gamma and eta grids must pair up");
  GridCheckReport report;
  constexpr double kTol = 1e-12;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    double gamma = gammas[i], eta = etas[i];
    need_finite(gamma, "gamma");
    need_finite(eta, "eta");
    if (gamma <= 0.0) fail(ErrorCode::InvalidArgument, "gamma must be positive");
    if (eta < 0.0 || eta > gamma / (4.0 * (1.0 + gamma)))
      fail(ErrorCode::InvalidArgument, "eta must lie in [0, gamma/(4(1+gamma))]");
    double shifted = (1.0 - eta) * (1.0 + gamma);
    double v1 = 1.0 - shifted;  // positive means the strict >1 claim failed
    double v2 = 0.25 * phi(gamma) - phi(shifted - 1.0);
    report.max_violation = std::max({report.max_violation, v1, v2});
    if (v1 >= 0.0 || v2 > kTol) report.pass = false;
    ++report.points_checked;
  }
  return report;
}

GridCheckReport entropy_sum_check(const std::vector<long>& ms) {
  GridCheckReport report;
  constexpr double kTol = 1e-12;
  for (long m : ms) {
    if (m < 10) fail(ErrorCode::InvalidArgument, "the entropy sum bound is stated for m >= 10");
    double dm = static_cast<double>(m);
    double sum = 0.0;
    for (long k = 1; k < m; ++k)
      sum += std::exp(-dm * binary_entropy(static_cast<double>(k) / dm));
    double rhs = (4.0 * std::log(dm) + 2.0) / dm;
    report.max_violation = std::max(report.max_violation, sum - rhs);
    if (sum > rhs + kTol) report.pass = false;
    ++report.points_checked;
  }
  return report;
}

PhaseExponent phase_diagram_exponent(double a1, double a2, RecoveryCriterion criterion) {
  need_finite(a1, "a1");
  need_finite(a2, "a2");
  if (a1 <= 0.0 || a1 >= 1.0 || a2 <= 0.0 || a2 >= 1.0)
    fail(ErrorCode::InvalidArgument, "the phase diagram covers a1, a2 in (0, 1)");
  double a3 = a1 >= a2 ? a1 + a2 : 2.0 * a2;
  if (criterion == RecoveryCriterion::Exact) return {a3, LogFactor::LogN};
  return {a3, a1 > a2 ? LogFactor::None : LogFactor::LogN};
}

ThresholdReport threshold_report(ModelKind model, double n, long m, double p, double rho,
                                 const ThresholdOptions& opt) {
  ThresholdReport r;
  r.model = model;
  r.n = n;
  r.m = m;
  r.p = p;
  r.rho = rho;
  r.delta = opt.delta;
  r.c0 = opt.c0;
  r.partial_er = kNaN;
  r.exact_er = kNaN;
  r.gaussian = kNaN;
  if (model == ModelKind::ErdosRenyi) {
    ErPartialThreshold partial = partial_threshold_er(n, p, rho, opt.delta);
    ErExactThreshold exact = exact_threshold_er(n, p, rho);
    r.partial_er = partial.value;
    r.exact_er = exact.value;
    r.gamma_zero_warning = partial.gamma_zero_warning || exact.gamma_zero_warning;
    r.second_term_dropped = exact.second_term_dropped;
    r.strong_signal = signal_params(p, rho).gamma > 1.0;
  } else {
    r.gaussian = gaussian_threshold(n, rho, opt.c0, opt.c2);
    r.strong_signal = rho > 1.0 - std::exp(-12.0);
  }
  FanoBound fano = fano_failure_lower_bound(model, n, m, p, rho, opt.delta);
  r.fano_failure_lb = fano.value;
  r.fano_vacuous = fano.vacuous_packing;
  return r;
}

std::string threshold_report_json(const ThresholdReport& r) {
  std::string out = "{";
  out += "\"model\":\"" + std::string(model_name(r.model)) + "\"";
  out += ",\"n\":" + json_value(r.n);
  out += ",\"m\":" + std::to_string(r.m);
  if (r.model == ModelKind::ErdosRenyi) out += ",\"p\":" + json_value(r.p);
  out += ",\"rho\":" + json_value(r.rho);
  out += ",\"delta\":" + json_value(r.delta);
  out += ",\"c0\":" + json_value(r.c0);
  out += ",\"partial_er\":" + json_value(r.partial_er);
  out += ",\"exact_er\":" + json_value(r.exact_er);
  out += ",\"gaussian\":" + json_value(r.gaussian);
  out += ",\"fano_failure_lb\":" + json_value(r.fano_failure_lb);
  out += ",\"regime\":\"";
  out += r.strong_signal ? "strong_signal" : "weak_signal";
  out += "\",\"warnings\":{";
  out += "\"gamma_zero\":";
  out += r.gamma_zero_warning ? "true" : "false";
  out += ",\"second_term_dropped\":";
  out += r.second_term_dropped ? "true" : "false";
  out += ",\"fano_vacuous\":";
  out += r.fano_vacuous ? "true" : "false";
  out += "}}";
  return out;
}

}  // namespace palign
