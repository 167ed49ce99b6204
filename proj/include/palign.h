/* C interface to the palign library: planted graph-alignment instances,
 * similarity-score estimators, cumulant closed forms, recovery thresholds,
 * and Monte Carlo sweeps.
 *
 * Conventions: every function returning int gives 0 (PALIGN_OK) on success
 * and a nonzero error code otherwise; palign_last_error() then describes the
 * failure for the calling thread. Strings returned through char** out
 * parameters are heap-allocated and must be released with palign_free().
 */
#ifndef PALIGN_H
#define PALIGN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  PALIGN_OK = 0,
  PALIGN_EINVAL = 1,    /* invalid argument or malformed input */
  PALIGN_ERESOURCE = 2, /* an enumeration or node budget was exceeded */
  PALIGN_EVERIFY = 3,   /* a verification check failed */
  PALIGN_EIO = 4,       /* file read/write failure */
  PALIGN_EINTERNAL = 5  /* broken internal invariant; please report */
};

const char* palign_version(void);

/* Message for the most recent failing call on this thread; never NULL. */
const char* palign_last_error(void);

void palign_free(char* buf);

/* ---- planted instances ------------------------------------------------ */

typedef struct palign_instance palign_instance;

/* model is "er" or "gaussian". For "gaussian", p is ignored. */
int palign_sample_instance(const char* model, int n, int m, double p, double rho,
                           uint64_t seed, palign_instance** out);

int palign_instance_from_json(const char* json_text, palign_instance** out);
int palign_instance_to_json(const palign_instance* inst, char** out_json);
void palign_instance_free(palign_instance* inst);

/* Maximizes the similarity score over injections between m-subsets.
 * score: "product", "sqdiff", "mle", or NULL for the model default.
 * m < 0 uses the instance's planted m. With penalized != 0 the size itself
 * is optimized under an lambda |pi|^2 penalty, up to m_max (< 0 means n).
 * budget caps explored search nodes. The result JSON carries the mapping,
 * its score, and overlap/distance against the planted truth. */
int palign_align(const palign_instance* inst, const char* score, int m, double budget,
                 int penalized, double lambda, int m_max, char** out_json);

/* Functional-digraph decomposition of a candidate mapping against the
 * planted truth, over the edge set C(S,2) \ C(F,2). mapping_json NULL
 * decomposes the truth against itself. */
int palign_decomposition_json(const palign_instance* inst, const char* mapping_json,
                              char** out_json);

/* ---- scalar math ------------------------------------------------------ */

/* phi(gamma) = (1+gamma) log(1+gamma) - gamma */
int palign_phi(double gamma, double* out);

/* Log of the component MGF for the tilted edge-score sum.
 * component is "path" or "cycle"; ell is the component length in edges.
 * Valid (model, score) settings: ("er", "product"), ("gaussian", "product"),
 * ("gaussian", "sqdiff"). p is ignored for the Gaussian model. */
int palign_kappa(const char* model, const char* score, double t, long ell, double p,
                 double rho, const char* component, double* out);

/* (|E|/2) kappa_c2 + L (kappa_c1 - kappa_c2/2) for |E| = total_edges and
 * L = self_loops. */
int palign_chain_upper_bound(const char* model, const char* score, double t, double p,
                             double rho, long total_edges, long self_loops, double* out);

/* JSON report of every threshold that applies to the model at (n, m, p, rho);
 * pass c0 <= 0 for the default constant 1. */
int palign_threshold_report_json(const char* model, double n, long m, double p, double rho,
                                 double delta, double c0, char** out_json);

/* ---- experiments ------------------------------------------------------ */

/* Runs the sweep described by config_json and renders it in format "csv",
 * "json", or "svg". The has_seed/has_jobs/has_budget flags override the
 * config's seed, jobs, and budget without editing the file. Identical
 * configs produce byte-identical CSV for any jobs value. */
int palign_sweep_emit(const char* config_json, const char* format, int has_seed,
                      uint64_t seed, int has_jobs, int jobs, int has_budget, double budget,
                      char** out);

/* Recovery-rate grid over (m, rho) at fixed n, as CSV. has_p selects the
 * Erdos-Renyi edge density; pass has_p = 0 for the Gaussian model. */
int palign_phase_csv(const char* model, int n, int has_p, double p, const double* rho,
                     size_t rho_count, const int* m, size_t m_count, long trials,
                     double delta, uint64_t seed, double budget, int jobs, char** out);

/* Exponent table a1 x a2 in (0,1) with the given step: columns
 * a1,a2,a3_partial,log_factor_partial,a3_exact,log_factor_exact. */
int palign_phase_diagram_csv(double step, char** out);

/* Closed forms against their oracles, as CSV; *pass reports the verdict. */
int palign_verify_cumulants_csv(uint64_t seed, long samples, char** out, int* pass);

/* Full self-check battery, as a JSON report; *pass reports the verdict. */
int palign_verify_all_json(uint64_t seed, long mc_samples, long tail_samples, char** out,
                           int* pass);

#ifdef __cplusplus
}
#endif

#endif /* PALIGN_H */
