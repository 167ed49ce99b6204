#include "cumulants.hpp"

#include <algorithm>
#include <cmath>

#include "common.hpp"

namespace palign {

const char* score_name(ScoreKind s) {
  switch (s) {
    case ScoreKind::Product: return "product";
    case ScoreKind::NegHalfSquaredDiff: return "sqdiff";
    case ScoreKind::MleGauss: return "mle";
  }
  fail(ErrorCode::Internal, "unreachable score kind");
}

ScoreKind parse_score(const std::string& name) {
  if (name == "product") return ScoreKind::Product;
  if (name == "sqdiff") return ScoreKind::NegHalfSquaredDiff;
  if (name == "mle") return ScoreKind::MleGauss;
  fail(ErrorCode::InvalidArgument,
       strprintf("unknown score '%s' (expected product, sqdiff, or mle)", name.c_str()));
}

void validate_query(const CumulantQuery& q) {
  if (!std::isfinite(q.t) || q.t <= 0.0)
    fail(ErrorCode::InvalidArgument, "tilt t must be positive and finite");
  if (q.ell < 1) fail(ErrorCode::InvalidArgument, "component length ell must be >= 1");
  if (q.model == ModelKind::ErdosRenyi) {
    if (q.score != ScoreKind::Product)
      fail(ErrorCode::InvalidArgument, "the ER closed forms cover the product score only");
    if (!std::isfinite(q.p) || q.p <= 0.0 || q.p > 0.5)
      fail(ErrorCode::InvalidArgument, "ER cumulants need p in (0, 1/2]");
    if (!std::isfinite(q.rho) || q.rho < 0.0 || q.rho > 1.0)
      fail(ErrorCode::InvalidArgument, "ER cumulants need rho in [0, 1]");
    return;
  }
  if (!std::isfinite(q.rho) || q.rho < 0.0 || q.rho > 1.0)
    fail(ErrorCode::InvalidArgument, "Gaussian cumulants need rho in [0, 1]");
  if (q.score == ScoreKind::Product) {
    double boundary = 1.0 / (1.0 + q.rho);
    if (q.t >= boundary - 1e-9)
      fail(ErrorCode::InvalidArgument,
           strprintf("product-score tilt must stay below 1/(1+rho) = %.12g; "
                     "the closed form degenerates near the boundary",
                     boundary));
    return;
  }
  if (q.score == ScoreKind::MleGauss)
    fail(ErrorCode::InvalidArgument, "no closed form for the MLE score");
  // Gaussian + squared difference: any t > 0 works.
}

std::pair<double, double> er_transfer_matrix(double p, double rho, double t) {
  CumulantQuery q;
  q.model = ModelKind::ErdosRenyi;
  q.score = ScoreKind::Product;
  q.t = t;
  q.p = p;
  q.rho = rho;
  validate_query(q);
  double tau = std::expm1(t);
  BernoulliPairPmf pmf = correlated_bernoulli_pmf(p, rho);
  double trace = 1.0 + pmf.p11 * tau;
  double det = rho * p * (1.0 - p) * tau;
  if (trace * trace - 4.0 * det <= 0.0)
    fail(ErrorCode::Internal, "ER transfer matrix lost its positive discriminant");
  return {trace, det};
}

namespace {

// Log of x_ell where x_ell = trace x_{ell-1} - det x_{ell-2}. Every sequence
// we evaluate stays strictly positive on its valid range, so a nonpositive
// value is a bug, not a domain error. Beyond ell = 50 the closed eigenvalue
// form keeps the arithmetic in log space; near-confluent discriminants fall
// back to the double-root expansion.
double log_recurrence(double trace, double det, double x0, double x1, long ell) {
  if (ell == 0) return std::log(x0);
  if (ell == 1) return std::log(x1);
  if (ell <= 50) {
    double prev = x0, cur = x1;
    for (long i = 2; i <= ell; ++i) {
      double nxt = trace * cur - det * prev;
      prev = cur;
      cur = nxt;
    }
    if (!(cur > 0.0)) fail(ErrorCode::Internal, "recurrence left the positive cone");
    return std::log(cur);
  }
  double disc = trace * trace - 4.0 * det;
  if (std::fabs(disc) < 1e-14) {
    double lam = 0.5 * trace;
    double tail = x0 + (x1 - x0 * lam) * static_cast<double>(ell) / lam;
    if (!(lam > 0.0 && tail > 0.0))
      fail(ErrorCode::Internal, "confluent recurrence left the positive cone");
    return static_cast<double>(ell) * std::log(lam) + std::log(tail);
  }
  if (disc < 0.0) fail(ErrorCode::Internal, "recurrence discriminant went negative");
  double sd = std::sqrt(disc);
  double lam1 = 0.5 * (trace + sd);
  double lam2 = 0.5 * (trace - sd);
  if (!(lam1 > 0.0) || lam2 < 0.0)
    fail(ErrorCode::Internal, "recurrence eigenvalues left the positive cone");
  double a1 = (x1 - lam2 * x0) / sd;
  double a2 = x0 - a1;
  double tail = a1 + a2 * std::pow(lam2 / lam1, static_cast<double>(ell));
  if (!(tail > 0.0)) fail(ErrorCode::Internal, "recurrence left the positive cone");
  return static_cast<double>(ell) * std::log(lam1) + std::log(tail);
}

// log(lam1^{ell/2} - lam2^{ell/2}) for the Gaussian cycle determinants,
// expressed through the half-step recurrence with eigenvalues sqrt(lam_i).
double log_half_power_gap(double trace, double det, long ell) {
  double disc = trace * trace - 4.0 * det;
  if (!(disc > 0.0))
    fail(ErrorCode::Internal, "cycle determinant gap collapsed");
  double sqrt_det = std::sqrt(std::max(det, 0.0));
  double half_trace = std::sqrt(trace + 2.0 * sqrt_det);
  double u1 = std::sqrt(trace - 2.0 * sqrt_det);
  return log_recurrence(half_trace, sqrt_det, 0.0, u1, ell);
}

struct ErData {
  double trace, det, m1;
};

ErData er_data(const CumulantQuery& q) {
  auto [trace, det] = er_transfer_matrix(q.p, q.rho, q.t);
  return {trace, det, 1.0 + q.p * q.p * std::expm1(q.t)};
}

// Gaussian determinant recursions share one shape; only trace/det/x1 differ.
struct GaussData {
  double trace, det, x1;
};

GaussData gauss_data(const CumulantQuery& q) {
  if (q.score == ScoreKind::Product) {
    double t2 = q.t * q.t;
    return {1.0 - t2 * (1.0 - q.rho * q.rho), t2 * q.rho * q.rho, 1.0 - t2};
  }
  return {1.0 + 2.0 * q.t, q.t * q.t * q.rho * q.rho, 1.0 + 2.0 * q.t};
}

}  // namespace

double kappa(const CumulantQuery& q, ComponentKind component) {
  validate_query(q);
  if (q.model == ModelKind::ErdosRenyi) {
    ErData d = er_data(q);
    if (component == ComponentKind::Path) {
      // Both mixture coefficients live in (0,1) whenever the query is valid;
      // drifting materially outside means the transfer matrix was assembled
      // wrong. The margin to the boundary shrinks like t^2 as the tilt
      // vanishes, so give rounding a little room rather than demand strict
      // inequality.
      double disc = d.trace * d.trace - 4.0 * d.det;
      if (disc > 0.0) {
        double sd = std::sqrt(disc);
        double a1 = 0.5 + (2.0 * d.m1 - d.trace) / (2.0 * sd);
        if (!(a1 > -1e-9 && a1 < 1.0 + 1e-9))
          fail(ErrorCode::Internal, "ER path mixture coefficient left [0,1]");
      }
      return log_recurrence(d.trace, d.det, 1.0, d.m1, q.ell);
    }
    return log_recurrence(d.trace, d.det, 2.0, d.trace, q.ell);
  }
  GaussData d = gauss_data(q);
  if (component == ComponentKind::Path)
    return -0.5 * log_recurrence(d.trace, d.det, 1.0, d.x1, q.ell);
  return -log_half_power_gap(d.trace, d.det, q.ell);
}

namespace {

double mgf_of(ModelKind model, ScoreKind score, double p, double rho, double t, long ell,
              ComponentKind kind) {
  CumulantQuery q;
  q.model = model;
  q.score = score;
  q.t = t;
  q.ell = ell;
  q.p = p;
  q.rho = rho;
  return std::exp(kappa(q, kind));
}

}  // namespace

double er_path_mgf(double p, double rho, double t, long ell) {
  return mgf_of(ModelKind::ErdosRenyi, ScoreKind::Product, p, rho, t, ell, ComponentKind::Path);
}

double er_cycle_mgf(double p, double rho, double t, long ell) {
  return mgf_of(ModelKind::ErdosRenyi, ScoreKind::Product, p, rho, t, ell, ComponentKind::Cycle);
}

double gauss_product_path_mgf(double rho, double t, long ell) {
  return mgf_of(ModelKind::GaussianWigner, ScoreKind::Product, 0.0, rho, t, ell,
                ComponentKind::Path);
}

double gauss_product_cycle_mgf(double rho, double t, long ell) {
  return mgf_of(ModelKind::GaussianWigner, ScoreKind::Product, 0.0, rho, t, ell,
                ComponentKind::Cycle);
}

double gauss_sq_path_mgf(double rho, double t, long ell) {
  return mgf_of(ModelKind::GaussianWigner, ScoreKind::NegHalfSquaredDiff, 0.0, rho, t, ell,
                ComponentKind::Path);
}

double gauss_sq_cycle_mgf(double rho, double t, long ell) {
  return mgf_of(ModelKind::GaussianWigner, ScoreKind::NegHalfSquaredDiff, 0.0, rho, t, ell,
                ComponentKind::Cycle);
}

double chain_upper_bound(long total_edges, long self_loops, const CumulantQuery& q) {
  if (total_edges < 0 || self_loops < 0 || self_loops > total_edges)
    fail(ErrorCode::InvalidArgument, "need 0 <= self_loops <= total_edges");
  CumulantQuery q1 = q, q2 = q;
  q1.ell = 1;
  q2.ell = 2;
  double kc1 = kappa(q1, ComponentKind::Cycle);
  double kc2 = kappa(q2, ComponentKind::Cycle);
  return 0.5 * static_cast<double>(total_edges) * kc2 +
         static_cast<double>(self_loops) * (kc1 - 0.5 * kc2);
}

ChainReport verify_kappa_chain(const std::vector<CumulantQuery>& grid, long ell_max,
                               double inject_kappa2_bias) {
  if (ell_max < 2) fail(ErrorCode::InvalidArgument, "ell_max must be >= 2");
  ChainReport report;
  if (grid.empty()) {
    report.empty_grid_warning = true;
    return report;
  }
  constexpr double kTol = 1e-12;
  auto check = [&report](double lhs, double rhs) {
    report.max_violation = std::max(report.max_violation, lhs - rhs);
    if (lhs > rhs + kTol) report.pass = false;
  };
  for (CumulantQuery q : grid) {
    q.ell = 1;
    double kp1 = kappa(q, ComponentKind::Path);
    double kc1 = kappa(q, ComponentKind::Cycle);
    q.ell = 2;
    double kc2 = kappa(q, ComponentKind::Cycle) + inject_kappa2_bias;
    check(kp1, 0.5 * kc2);
    check(0.5 * kc2, kc1);
    for (long ell = 2; ell <= ell_max; ++ell) {
      q.ell = ell;
      double kp = kappa(q, ComponentKind::Path);
      double kc = kappa(q, ComponentKind::Cycle);
      check(kp, kc);
      check(kc, 0.5 * static_cast<double>(ell) * kc2);
    }
    ++report.points_checked;
  }
  return report;
}

std::vector<CumulantQuery> default_chain_grid() {
  std::vector<CumulantQuery> grid;
  const double levels[] = {0.1, 0.5, 0.9};
  for (double p : {0.1, 0.3, 0.5})
    for (double rho : levels)
      for (double t : {0.1, 0.5, 1.0}) {
        CumulantQuery q;
        q.model = ModelKind::ErdosRenyi;
        q.score = ScoreKind::Product;
        q.p = p;
        q.rho = rho;
        q.t = t;
        grid.push_back(q);
      }
  for (double rho : levels)
    for (double frac : {0.3, 0.6, 0.9}) {
      CumulantQuery q;
      q.model = ModelKind::GaussianWigner;
      q.score = ScoreKind::Product;
      q.rho = rho;
      q.t = frac / (1.0 + rho);
      grid.push_back(q);
    }
  for (double rho : levels)
    for (double t : {0.5, 2.0, 10.0}) {
      CumulantQuery q;
      q.model = ModelKind::GaussianWigner;
      q.score = ScoreKind::NegHalfSquaredDiff;
      q.rho = rho;
      q.t = t;
      grid.push_back(q);
    }
  return grid;
}

double brute_force_er_component_mgf(double p, double rho, double t, long ell,
                                    ComponentKind kind) {
  if (ell < 1) fail(ErrorCode::InvalidArgument, "component length ell must be >= 1");
  if (ell > 12)
    fail(ErrorCode::ResourceLimit,
         strprintf("brute-force enumeration is capped at ell = 12 (asked for %ld)", ell));
  CumulantQuery q;
  q.model = ModelKind::ErdosRenyi;
  q.score = ScoreKind::Product;
  q.t = t;
  q.ell = ell;
  q.p = p;
  q.rho = rho;
  validate_query(q);

  BernoulliPairPmf pmf = correlated_bernoulli_pmf(p, rho);
  double tau = std::expm1(t);
  // Conditional law of the g1 bit given its own pair's g2 bit; the g1 bit of
  // pair i enters exactly one edge term, so it integrates out analytically.
  double q_given[2] = {pmf.p10 / (1.0 - p), pmf.p11 / p};
  long chain = kind == ComponentKind::Path ? ell + 1 : ell;
  double total = 0.0;
  for (long mask = 0; mask < (1L << chain); ++mask) {
    auto bit = [&](long i) { return (mask >> i) & 1L; };
    double w = 1.0;
    for (long i = 0; i < chain; ++i) w *= bit(i) ? p : 1.0 - p;
    if (kind == ComponentKind::Path) {
      for (long i = 1; i <= ell; ++i)
        if (bit(i)) w *= 1.0 + q_given[bit(i - 1)] * tau;
    } else {
      for (long i = 0; i < ell; ++i)
        if (bit((i + 1) % ell)) w *= 1.0 + q_given[bit(i)] * tau;
    }
    total += w;
  }
  return total;
}

McEstimate monte_carlo_component_mgf(const CumulantQuery& q, ComponentKind kind, long samples,
                                     Rng& rng) {
  validate_query(q);
  if (samples < 10000)
    fail(ErrorCode::InvalidArgument, "Monte Carlo oracle needs at least 10^4 samples");
  long ell = q.ell;
  long pairs = kind == ComponentKind::Path ? ell + 1 : ell;
  BernoulliPairPmf pmf{};
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  if (q.model == ModelKind::ErdosRenyi) {
    pmf = correlated_bernoulli_pmf(q.p, q.rho);
    c0 = pmf.p00;
    c1 = c0 + pmf.p01;
    c2 = c1 + pmf.p10;
  }
  double noise = std::sqrt(std::max(0.0, 1.0 - q.rho * q.rho));
  auto f = [&](double x, double y) {
    return q.score == ScoreKind::Product ? x * y : -0.5 * sq(x - y);
  };
  std::vector<double> a(pairs), b(pairs);
  double sum = 0.0, sumsq = 0.0;
  for (long s = 0; s < samples; ++s) {
    for (long i = 0; i < pairs; ++i) {
      if (q.model == ModelKind::ErdosRenyi) {
        double u = rng.uniform01();
        int beta1, beta2;
        if (u < c0) beta1 = 0, beta2 = 0;
        else if (u < c1) beta1 = 0, beta2 = 1;
        else if (u < c2) beta1 = 1, beta2 = 0;
        else beta1 = 1, beta2 = 1;
        a[i] = beta1;
        b[i] = beta2;
      } else {
        a[i] = rng.normal();
        b[i] = q.rho * a[i] + noise * rng.normal();
      }
    }
    double score = 0.0;
    if (kind == ComponentKind::Path) {
      for (long i = 1; i <= ell; ++i) score += f(a[i - 1], b[i]);
    } else {
      for (long i = 0; i < ell; ++i) score += f(a[i], b[(i + 1) % ell]);
    }
    double w = std::exp(q.t * score);
    sum += w;
    sumsq += w * w;
  }
  double n = static_cast<double>(samples);
  double mean = sum / n;
  double var = std::max(0.0, sumsq / n - mean * mean) * n / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

}  // namespace palign
