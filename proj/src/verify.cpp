#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "harness.hpp"
#include "rng.hpp"
#include "thresholds.hpp"

namespace palign {

namespace {

// One-sided 99% normal quantile for the empirical upper confidence limits.
constexpr double kZ99OneSided = 2.3263478740408408;

const char* kind_name(ComponentKind k) {
  return k == ComponentKind::Path ? "path" : "cycle";
}

}  // namespace

std::vector<OracleComparison> er_oracle_comparisons() {
  std::vector<OracleComparison> rows;
  for (double p : {0.1, 0.3, 0.5})
    for (double rho : {0.1, 0.5, 0.9})
      for (double t : {0.1, 0.5, 1.0})
        for (long ell = 1; ell <= 8; ++ell)
          for (ComponentKind kind : {ComponentKind::Path, ComponentKind::Cycle}) {
            OracleComparison c;
            c.model = ModelKind::ErdosRenyi;
            c.score = ScoreKind::Product;
            c.p = p;
            c.rho = rho;
            c.t = t;
            c.ell = ell;
            c.kind = kind;
            c.closed_form =
                kind == ComponentKind::Path ? er_path_mgf(p, rho, t, ell) : er_cycle_mgf(p, rho, t, ell);
            c.oracle = brute_force_er_component_mgf(p, rho, t, ell, kind);
            c.abs_err = std::fabs(c.closed_form - c.oracle);
            c.tolerance = 1e-12 * std::fabs(c.oracle);
            c.pass = c.abs_err <= c.tolerance;
            rows.push_back(c);
          }
  return rows;
}

std::vector<OracleComparison> gaussian_oracle_comparisons(std::uint64_t seed, long samples) {
  // (rho, t) per score, chosen so 2t stays clear of the finite-variance
  // boundary 1/(1+rho) for the product score. The squared-difference score
  // has exp(tS) <= 1, so any t > 0 is safe there.
  static const std::vector<std::pair<double, double>> product_points = {
      {0.2, 0.3}, {0.6, 0.25}, {0.9, 0.2}};
  static const std::vector<std::pair<double, double>> sq_points = {
      {0.3, 0.5}, {0.8, 0.5}, {0.5, 2.0}};

  std::vector<OracleComparison> rows;
  Rng rng(seed);
  for (ScoreKind score : {ScoreKind::Product, ScoreKind::NegHalfSquaredDiff}) {
    const auto& points = score == ScoreKind::Product ? product_points : sq_points;
    for (const auto& [rho, t] : points)
      for (long ell = 1; ell <= 4; ++ell)
        for (ComponentKind kind : {ComponentKind::Path, ComponentKind::Cycle}) {
          CumulantQuery q;
          q.model = ModelKind::GaussianWigner;
          q.score = score;
          q.t = t;
          q.ell = ell;
          q.rho = rho;
          OracleComparison c;
          c.model = q.model;
          c.score = score;
          c.p = std::numeric_limits<double>::quiet_NaN();
          c.rho = rho;
          c.t = t;
          c.ell = ell;
          c.kind = kind;
          c.closed_form = std::exp(kappa(q, kind));
          McEstimate mc = monte_carlo_component_mgf(q, kind, samples, rng);
          c.oracle = mc.estimate;
          c.abs_err = std::fabs(c.closed_form - mc.estimate);
          c.tolerance = 3.0 * mc.standard_error;
          c.pass = c.abs_err <= c.tolerance;
          rows.push_back(c);
        }
  }
  return rows;
}

std::string oracle_comparisons_csv(const std::vector<OracleComparison>& rows) {
  std::string out = "model,score,p,rho,t,ell,kind,closed_form,oracle,abs_err,pass\r\n";
  for (const OracleComparison& c : rows) {
    out += strprintf("%s,%s,", model_name(c.model), score_name(c.score));
    out += fmt17(c.p) + "," + fmt17(c.rho) + "," + fmt17(c.t) + ",";
    out += strprintf("%ld,%s,", c.ell, kind_name(c.kind));
    out += fmt17(c.closed_form) + "," + fmt17(c.oracle) + "," + fmt17(c.abs_err) + ",";
    out += c.pass ? "1" : "0";
    out += "\r\n";
  }
  return out;
}

namespace {

long tri(long u, long v) {  // u > v
  return u * (u - 1) / 2 + v;
}

// pi rotates {0..k-1} and fixes the rest: a permutation of [m] displacing
// exactly k vertices (k >= 2).
std::vector<long> rotation_perm(long m, long k) {
  std::vector<long> perm(static_cast<size_t>(m));
  for (long i = 0; i < m; ++i) perm[size_t(i)] = i < k ? (i + 1) % k : i;
  return perm;
}

// Edges of C([m],2) touched by the disagreement, together with where the
// lifted permutation sends them. pi^E permutes this set.
struct NoiseEdgeSet {
  std::vector<long> edges;    // tri indices of E_pi
  std::vector<long> maps_to;  // tri index of pi^E(e), aligned with edges
  std::vector<long> slot;     // tri index -> position in edges, or -1
};

NoiseEdgeSet noise_edges(long m, const std::vector<long>& perm, long k) {
  NoiseEdgeSet s;
  s.slot.assign(size_t(m * (m - 1) / 2), -1);
  for (long u = 1; u < m; ++u)
    for (long v = 0; v < u; ++v) {
      if (u >= k && v >= k) continue;  // both endpoints fixed
      long pu = perm[size_t(u)], pv = perm[size_t(v)];
      if (pu < pv) std::swap(pu, pv);
      s.slot[size_t(tri(u, v))] = long(s.edges.size());
      s.edges.push_back(tri(u, v));
      s.maps_to.push_back(tri(pu, pv));
    }
  return s;
}

double wilson_upper99(long hits, long samples) {
  return wilson_interval(hits, samples, kZ99OneSided).second;
}

TailCheck finish_check(std::string name, double log_bound, long hits, long samples) {
  TailCheck tc;
  tc.name = std::move(name);
  tc.bound_prob = std::min(1.0, std::exp(log_bound));
  tc.empirical = double(hits) / double(samples);
  tc.upper99 = wilson_upper99(hits, samples);
  tc.samples = samples;
  tc.pass = tc.upper99 < tc.bound_prob;
  return tc;
}

TailCheck bennett_check(long m, long k, double p, double rho, double tau, long samples,
                        Rng& rng) {
  NoiseEdgeSet es = noise_edges(m, rotation_perm(m, k), k);
  long edges = long(es.edges.size());
  BernoulliPairPmf pmf = correlated_bernoulli_pmf(p, rho);
  double gamma = rho * (1.0 - p) / p;

  std::vector<int> b1(es.edges.size()), b2(es.edges.size());
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    for (size_t i = 0; i < es.edges.size(); ++i) {
      double u = rng.uniform01();
      if (u < pmf.p00) {
        b1[i] = 0;
        b2[i] = 0;
      } else if (u < pmf.p00 + pmf.p01) {
        b1[i] = 0;
        b2[i] = 1;
      } else if (u < pmf.p00 + pmf.p01 + pmf.p10) {
        b1[i] = 1;
        b2[i] = 0;
      } else {
        b1[i] = 1;
        b2[i] = 1;
      }
    }
    long score = 0;
    for (size_t i = 0; i < es.edges.size(); ++i)
      score += b1[i] * b2[size_t(es.slot[size_t(es.maps_to[i])])];
    if (double(score) >= tau) ++hits;
  }
  return finish_check(strprintf("bennett_m%ld_k%ld_p%g_rho%g_tau%g", m, k, p, rho, tau),
                      bennett_noise_tail(tau, edges, p, gamma, k), hits, samples);
}

TailCheck gaussian_noise_check(ScoreKind score, long m, long k, double rho, double tau,
                               long samples, Rng& rng) {
  NoiseEdgeSet es = noise_edges(m, rotation_perm(m, k), k);
  long edges = long(es.edges.size());
  double noise = std::sqrt(1.0 - rho * rho);

  std::vector<double> a1(es.edges.size()), a2(es.edges.size());
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    for (size_t i = 0; i < es.edges.size(); ++i) {
      double z = rng.normal();
      a1[i] = z;
      a2[i] = rho * z + noise * rng.normal();
    }
    double total = 0.0;
    for (size_t i = 0; i < es.edges.size(); ++i) {
      double x = a1[i], y = a2[size_t(es.slot[size_t(es.maps_to[i])])];
      total += score == ScoreKind::Product ? x * y : -0.5 * sq(x - y);
    }
    if (total >= tau) ++hits;
  }
  double bound = score == ScoreKind::Product ? gaussian_product_noise_tail(tau, edges, rho, k)
                                             : gaussian_sq_noise_tail(tau, edges, rho, k);
  const char* tag = score == ScoreKind::Product ? "gauss_product" : "gauss_sq";
  return finish_check(strprintf("%s_m%ld_k%ld_rho%g_tau%g", tag, m, k, rho, tau), bound, hits,
                      samples);
}

TailCheck chernoff_check(ChernoffSide side, long n, double q, double delta, long samples,
                         Rng& rng) {
  double mu = double(n) * q;
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    long x = 0;
    for (long i = 0; i < n; ++i) x += rng.uniform01() < q ? 1 : 0;
    bool event = side == ChernoffSide::Lower ? double(x) <= (1.0 - delta) * mu
                                             : double(x) >= (1.0 + delta) * mu;
    if (event) ++hits;
  }
  const char* tag = side == ChernoffSide::UpperLog      ? "upper_log"
                    : side == ChernoffSide::UpperSimple ? "upper_simple"
                                                        : "lower";
  return finish_check(strprintf("chernoff_%s_n%ld_q%g_delta%g", tag, n, q, delta),
                      chernoff_binomial(mu, delta, side), hits, samples);
}

TailCheck chisquare_check(long dof, double delta, long samples, Rng& rng) {
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    double x = 0.0;
    for (long i = 0; i < dof; ++i) x += sq(rng.normal());
    if (x >= double(dof) * (1.0 + delta)) ++hits;
  }
  return finish_check(strprintf("chisquare_dof%ld_delta%g", dof, delta),
                      chisquare_tail(dof, delta), hits, samples);
}

}  // namespace

std::vector<TailCheck> tail_domination_checks(std::uint64_t seed, long samples) {
  if (samples < 10000)
    fail(ErrorCode::InvalidArgument, "tail domination needs at least 10^4 samples");
  Rng rng(mix_seed(seed, 0x7461696cu));  // "tail"
  std::vector<TailCheck> out;

  out.push_back(bennett_check(4, 4, 0.3, 0.5, 2.0, samples, rng));
  out.push_back(bennett_check(4, 4, 0.3, 0.5, 3.0, samples, rng));
  out.push_back(bennett_check(6, 3, 0.4, 0.7, 5.0, samples, rng));

  out.push_back(gaussian_noise_check(ScoreKind::Product, 12, 2, 0.9, 18.9, samples, rng));
  out.push_back(gaussian_noise_check(ScoreKind::Product, 12, 4, 0.8, 30.4, samples, rng));
  out.push_back(gaussian_noise_check(ScoreKind::Product, 10, 3, 0.7, 16.8, samples, rng));

  out.push_back(gaussian_noise_check(ScoreKind::NegHalfSquaredDiff, 10, 4, 0.5, -10.0, samples, rng));
  out.push_back(gaussian_noise_check(ScoreKind::NegHalfSquaredDiff, 12, 4, 0.8, -12.0, samples, rng));
  out.push_back(gaussian_noise_check(ScoreKind::NegHalfSquaredDiff, 8, 2, 0.3, -6.0, samples, rng));

  out.push_back(chernoff_check(ChernoffSide::UpperLog, 200, 0.3, 0.3, samples, rng));
  out.push_back(chernoff_check(ChernoffSide::Lower, 200, 0.3, 0.3, samples, rng));
  out.push_back(chernoff_check(ChernoffSide::UpperSimple, 200, 0.3, 0.4, samples, rng));

  out.push_back(chisquare_check(10, 0.5, samples, rng));
  out.push_back(chisquare_check(10, 1.0, samples, rng));
  out.push_back(chisquare_check(10, 2.0, samples, rng));
  return out;
}

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

VerifyReport verify_all(const VerifyOptions& opt) {
  VerifyReport rep;

  {
    std::vector<CumulantQuery> grid =
        opt.empty_chain_grid ? std::vector<CumulantQuery>{} : default_chain_grid();
    ChainReport chain = verify_kappa_chain(grid, 8, opt.inject_kappa2_bias);
    CheckResult c;
    c.name = "kappa_chain";
    c.pass = chain.pass;
    c.warning = chain.empty_grid_warning;
    c.detail = chain.empty_grid_warning
                   ? "empty grid: vacuously true"
                   : strprintf("%ld points, max violation %.3g", chain.points_checked,
                               chain.max_violation);
    rep.checks.push_back(std::move(c));
  }

  {
    std::vector<OracleComparison> rows = er_oracle_comparisons();
    double worst = 0.0;
    bool pass = true;
    for (const OracleComparison& r : rows) {
      pass = pass && r.pass;
      if (r.oracle != 0.0) worst = std::max(worst, r.abs_err / std::fabs(r.oracle));
    }
    rep.checks.push_back({"er_cumulant_oracle", pass, false,
                          strprintf("%zu comparisons, max rel err %.3g", rows.size(), worst)});
  }

  {
    std::vector<OracleComparison> rows = gaussian_oracle_comparisons(opt.seed, opt.mc_samples);
    double worst = 0.0;
    bool pass = true;
    for (const OracleComparison& r : rows) {
      pass = pass && r.pass;
      if (r.tolerance > 0.0) worst = std::max(worst, 3.0 * r.abs_err / r.tolerance);
    }
    rep.checks.push_back(
        {"gaussian_cumulant_oracle", pass, false,
         strprintf("%zu comparisons at %ld samples, max |dev|/SE %.3g", rows.size(),
                   opt.mc_samples, worst)});
  }

  {
    // eta at its admissible ceiling gamma/(4(1+gamma)) makes the claim as
    // strong as the check allows.
    std::vector<double> gammas, etas;
    const int kPoints = 25;
    for (int i = 0; i < kPoints; ++i) {
      double g = std::exp(std::log(1e-3) +
                          (std::log(1e3) - std::log(1e-3)) * double(i) / double(kPoints - 1));
      gammas.push_back(g);
      etas.push_back(g / (4.0 * (1.0 + g)));
    }
    GridCheckReport r = eta_phi_inequality_check(gammas, etas);
    rep.checks.push_back({"eta_phi_inequality", r.pass, false,
                          strprintf("%ld points, max violation %.3g", r.points_checked,
                                    r.max_violation)});
  }

  {
    GridCheckReport r = entropy_sum_check({10, 50, 100, 1000, 100000});
    rep.checks.push_back({"entropy_sum", r.pass, false,
                          strprintf("%ld points, max violation %.3g", r.points_checked,
                                    r.max_violation)});
  }

  {
    bool pass = true;
    double worst = -1e300;
    long points = 0;
    for (double p : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5})
      for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        KlPairBound kl = kl_pair_bound(ModelKind::ErdosRenyi, p, rho);
        worst = std::max(worst, kl.exact - kl.bound);
        pass = pass && kl.exact <= kl.bound + 1e-12;
        ++points;
      }
    rep.checks.push_back({"kl_pair_bound", pass, false,
                          strprintf("%ld points, max excess %.3g", points, worst)});
  }

  {
    std::vector<TailCheck> tails = tail_domination_checks(opt.seed + 1, opt.tail_samples);
    bool pass = true;
    std::string failing;
    for (const TailCheck& t : tails) {
      if (!t.pass) {
        pass = false;
        failing += (failing.empty() ? "" : ", ") + t.name;
      }
    }
    rep.checks.push_back({"tail_domination", pass, false,
                          pass ? strprintf("%zu bounds dominated at %ld samples", tails.size(),
                                           opt.tail_samples)
                               : "violated: " + failing});
  }

  return rep;
}

std::string verify_report_json(const VerifyReport& rep) {
  nlohmann::ordered_json j;
  j["pass"] = rep.all_pass();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckResult& c : rep.checks) {
    nlohmann::ordered_json o;
    o["name"] = c.name;
    o["pass"] = c.pass;
    o["warning"] = c.warning;
    o["detail"] = c.detail;
    checks.push_back(std::move(o));
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

}  // namespace palign
