// Self-checks wiring the closed forms to their independent oracles, plus the
// analytic-inequality grids. The CLI's verify-cumulants and verify-all
// subcommands are thin wrappers over these.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cumulants.hpp"

namespace palign {

struct OracleComparison {
  ModelKind model = ModelKind::ErdosRenyi;
  ScoreKind score = ScoreKind::Product;
  double p = 0.0, rho = 0.0, t = 0.0;
  long ell = 1;
  ComponentKind kind = ComponentKind::Path;
  double closed_form = 0.0;
  double oracle = 0.0;
  double abs_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// ER closed forms against the exact configuration-sum oracle over
// p x rho x t = {0.1,0.3,0.5} x {0.1,0.5,0.9} x {0.1,0.5,1.0}, ell 1..8,
// both component kinds. Tolerance is 1e-12 relative.
std::vector<OracleComparison> er_oracle_comparisons();

// Gaussian closed forms against Monte Carlo at three (rho, t) points per
// score, ell 1..4, both kinds. Tolerance is three standard errors. Points
// sit safely inside the region where exp(tS) has finite variance, so the
// standard errors are meaningful.
std::vector<OracleComparison> gaussian_oracle_comparisons(std::uint64_t seed, long samples);

// model,score,p,rho,t,ell,kind,closed_form,oracle,abs_err,pass
std::string oracle_comparisons_csv(const std::vector<OracleComparison>& rows);

struct TailCheck {
  std::string name;
  double bound_prob = 0.0;  // min(1, exp(analytic log bound))
  double empirical = 0.0;
  double upper99 = 0.0;  // one-sided 99% Wilson upper limit on the frequency
  long samples = 0;
  bool pass = false;
};

// Simulates each tail bound's defining event and demands the empirical
// frequency's 99% upper confidence limit stay below the bound.
std::vector<TailCheck> tail_domination_checks(std::uint64_t seed, long samples);

struct CheckResult {
  std::string name;
  bool pass = true;
  bool warning = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20260816;
  long mc_samples = 100000;    // Gaussian oracle sample count
  long tail_samples = 100000;  // per tail-domination point
  // Fault-injection hook: shifts the kappa_c2 reference in the chain check.
  // Nonzero values must surface as a failed "kappa_chain" check.
  double inject_kappa2_bias = 0.0;
  bool empty_chain_grid = false;  // vacuous-pass hook
};

VerifyReport verify_all(const VerifyOptions& opt = {});

std::string verify_report_json(const VerifyReport& rep);

}  // namespace palign
