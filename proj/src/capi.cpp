// extern "C" bridge: every entry point catches, stashes the message in a
// thread-local slot, and returns a flat error code. Heap strings handed to
// callers come from malloc so palign_free stays a plain free.
#include <palign.h>

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "cumulants.hpp"
#include "digraph.hpp"
#include "estimators.hpp"
#include "harness.hpp"
#include "instance_json.hpp"
#include "model.hpp"
#include "thresholds.hpp"
#include "verify.hpp"

using namespace palign;

struct palign_instance {
  PlantedInstance inst;
};

namespace {

thread_local std::string t_last_error = "no error";

int code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
      return PALIGN_EINVAL;
    case ErrorCode::ResourceLimit:
      return PALIGN_ERESOURCE;
    case ErrorCode::VerifyFailed:
      return PALIGN_EVERIFY;
    case ErrorCode::Io:
      return PALIGN_EIO;
    case ErrorCode::Internal:
      return PALIGN_EINTERNAL;
  }
  return PALIGN_EINTERNAL;
}

int invalid(const char* msg) {
  t_last_error = msg;
  return PALIGN_EINVAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    t_last_error = e.what();
    return code_of(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return PALIGN_ERESOURCE;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return PALIGN_EINTERNAL;
  } catch (...) {
    t_last_error = "unrecognized failure";
    return PALIGN_EINTERNAL;
  }
}

int out_string(const std::string& s, char** out) {
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) {
    t_last_error = "out of memory";
    return PALIGN_ERESOURCE;
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
  return PALIGN_OK;
}

}  // namespace

extern "C" {

const char* palign_version(void) { return "0.1.0"; }

const char* palign_last_error(void) { return t_last_error.c_str(); }

void palign_free(char* buf) { std::free(buf); }

int palign_sample_instance(const char* model, int n, int m, double p, double rho,
                           uint64_t seed, palign_instance** out) {
  if (!model) return invalid("model must not be NULL");
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    ModelParams params;
    params.model = parse_model(model);
    params.n = n;
    params.m = m;
    params.p = params.model == ModelKind::ErdosRenyi ? p : 0.0;
    params.rho = rho;
    *out = new palign_instance{sample_instance(params, seed)};
    return PALIGN_OK;
  });
}

int palign_instance_from_json(const char* json_text, palign_instance** out) {
  if (!json_text) return invalid("json_text must not be NULL");
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    *out = new palign_instance{instance_from_json(json_text)};
    return PALIGN_OK;
  });
}

int palign_instance_to_json(const palign_instance* inst, char** out_json) {
  if (!inst) return invalid("inst must not be NULL");
  if (!out_json) return invalid("out_json must not be NULL");
  return guarded([&] { return out_string(instance_to_json(inst->inst), out_json); });
}

void palign_instance_free(palign_instance* inst) { delete inst; }

int palign_align(const palign_instance* inst, const char* score, int m, double budget,
                 int penalized, double lambda, int m_max, char** out_json) {
  if (!inst) return invalid("inst must not be NULL");
  if (!out_json) return invalid("out_json must not be NULL");
  return guarded([&] {
    const PlantedInstance& pi = inst->inst;
    AlignOptions opt;
    opt.score = score ? parse_score(score) : default_score(pi.params.model, pi.params.rho);
    if (opt.score == ScoreKind::MleGauss) opt.rho_for_mle = pi.params.rho;
    opt.budget = budget;

    AlignmentResult res;
    if (penalized) {
      int cap = m_max < 0 ? pi.params.n : m_max;
      res = penalized_align(pi.g1, pi.g2, lambda, cap, opt);
    } else {
      int size = m < 0 ? pi.params.m : m;
      res = branch_and_bound_align(pi.g1, pi.g2, size, opt);
    }

    std::optional<double> ov;
    std::optional<int> dist;
    if (pi.truth.size() > 0) {
      ov = overlap(pi.truth, res.mapping);
      long agreements = std::lround(*ov * double(pi.truth.size()));
      dist = int(long(pi.truth.size()) - agreements);
    }
    return out_string(alignment_result_json(res.mapping, res.score, ov, dist), out_json);
  });
}

int palign_decomposition_json(const palign_instance* inst, const char* mapping_json,
                              char** out_json) {
  if (!inst) return invalid("inst must not be NULL");
  if (!out_json) return invalid("out_json must not be NULL");
  return guarded([&] {
    InjectiveMapping pi =
        mapping_json ? mapping_from_json(mapping_json) : inst->inst.truth;
    RestrictedDecomposition rd = restricted_decomposition(pi, inst->inst.truth);
    return out_string(decomposition_to_json(rd.decomp), out_json);
  });
}

int palign_phi(double gamma, double* out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    *out = phi(gamma);
    return PALIGN_OK;
  });
}

int palign_kappa(const char* model, const char* score, double t, long ell, double p,
                 double rho, const char* component, double* out) {
  if (!model || !score || !component) return invalid("model/score/component must not be NULL");
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    CumulantQuery q;
    q.model = parse_model(model);
    q.score = parse_score(score);
    q.t = t;
    q.ell = ell;
    q.p = p;
    q.rho = rho;
    std::string kind(component);
    ComponentKind ck;
    if (kind == "path")
      ck = ComponentKind::Path;
    else if (kind == "cycle")
      ck = ComponentKind::Cycle;
    else
      fail(ErrorCode::InvalidArgument, "component must be \"path\" or \"cycle\"");
    *out = kappa(q, ck);
    return PALIGN_OK;
  });
}

int palign_chain_upper_bound(const char* model, const char* score, double t, double p,
                             double rho, long total_edges, long self_loops, double* out) {
  if (!model || !score) return invalid("model/score must not be NULL");
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    CumulantQuery q;
    q.model = parse_model(model);
    q.score = parse_score(score);
    q.t = t;
    q.p = p;
    q.rho = rho;
    *out = chain_upper_bound(total_edges, self_loops, q);
    return PALIGN_OK;
  });
}

int palign_threshold_report_json(const char* model, double n, long m, double p, double rho,
                                 double delta, double c0, char** out_json) {
  if (!model) return invalid("model must not be NULL");
  if (!out_json) return invalid("out_json must not be NULL");
  return guarded([&] {
    ThresholdOptions opt;
    opt.delta = delta;
    if (c0 > 0.0) opt.c0 = c0;
    ThresholdReport rep = threshold_report(parse_model(model), n, m, p, rho, opt);
    return out_string(threshold_report_json(rep), out_json);
  });
}

int palign_sweep_emit(const char* config_json, const char* format, int has_seed,
                      uint64_t seed, int has_jobs, int jobs, int has_budget, double budget,
                      char** out) {
  if (!config_json || !format) return invalid("config_json/format must not be NULL");
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    SweepConfig cfg = sweep_config_from_json(config_json);
    if (has_seed) cfg.master_seed = seed;
    if (has_jobs) cfg.jobs = jobs;
    if (has_budget) cfg.budget = budget;
    return out_string(emit_summary(sweep(cfg), parse_emit_format(format)), out);
  });
}

int palign_phase_csv(const char* model, int n, int has_p, double p, const double* rho,
                     size_t rho_count, const int* m, size_t m_count, long trials,
                     double delta, uint64_t seed, double budget, int jobs, char** out) {
  if (!model) return invalid("model must not be NULL");
  if ((!rho && rho_count) || (!m && m_count)) return invalid("rho/m arrays must not be NULL");
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    std::vector<double> rhos(rho, rho + rho_count);
    std::vector<int> ms(m, m + m_count);
    std::optional<double> density;
    if (has_p) density = p;
    return out_string(phase_transition_csv(parse_model(model), n, density, rhos, ms, trials,
                                           delta, seed, budget, jobs),
                      out);
  });
}

int palign_phase_diagram_csv(double step, char** out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    if (!(step > 0.0 && step < 1.0))
      fail(ErrorCode::InvalidArgument, "phase-diagram step must lie in (0,1)");
    std::string csv =
        "a1,a2,a3_partial,log_factor_partial,a3_exact,log_factor_exact\r\n";
    auto factor_name = [](LogFactor f) { return f == LogFactor::LogN ? "logn" : "none"; };
    for (double a1 = step; a1 < 1.0 - 1e-12; a1 += step)
      for (double a2 = step; a2 < 1.0 - 1e-12; a2 += step) {
        PhaseExponent part = phase_diagram_exponent(a1, a2, RecoveryCriterion::Partial);
        PhaseExponent exact = phase_diagram_exponent(a1, a2, RecoveryCriterion::Exact);
        csv += fmt17(a1) + "," + fmt17(a2) + ",";
        csv += fmt17(part.a3) + "," + std::string(factor_name(part.log_factor)) + ",";
        csv += fmt17(exact.a3) + "," + std::string(factor_name(exact.log_factor));
        csv += "\r\n";
      }
    return out_string(csv, out);
  });
}

int palign_verify_cumulants_csv(uint64_t seed, long samples, char** out, int* pass) {
  if (!out || !pass) return invalid("out/pass must not be NULL");
  return guarded([&] {
    std::vector<OracleComparison> rows = er_oracle_comparisons();
    std::vector<OracleComparison> gauss = gaussian_oracle_comparisons(seed, samples);
    rows.insert(rows.end(), gauss.begin(), gauss.end());
    bool ok = true;
    for (const OracleComparison& r : rows) ok = ok && r.pass;
    *pass = ok ? 1 : 0;
    return out_string(oracle_comparisons_csv(rows), out);
  });
}

int palign_verify_all_json(uint64_t seed, long mc_samples, long tail_samples, char** out,
                           int* pass) {
  if (!out || !pass) return invalid("out/pass must not be NULL");
  return guarded([&] {
    VerifyOptions opt;
    opt.seed = seed;
    opt.mc_samples = mc_samples;
    opt.tail_samples = tail_samples;
    VerifyReport rep = verify_all(opt);
    *pass = rep.all_pass() ? 1 : 0;
    return out_string(verify_report_json(rep), out);
  });
}

}  // extern "C"
