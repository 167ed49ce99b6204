// Closed-form moment generating functions of tilted edge-score sums along the
// path and cycle components of the functional digraph, their log versions
// (cumulants), and the chain upper bound that controls an arbitrary
// decomposition through the 2-cycle and 1-cycle cumulants alone.
//
// Three (model, score) settings admit closed forms:
//   ER            product score              t > 0
//   Gaussian      product score              0 < t < 1/(1+rho)
//   Gaussian      -(1/2)(x-y)^2 score        t > 0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "digraph.hpp"
#include "model.hpp"
#include "rng.hpp"

namespace palign {

enum class ScoreKind { Product, NegHalfSquaredDiff, MleGauss };

const char* score_name(ScoreKind s);
ScoreKind parse_score(const std::string& name);

struct CumulantQuery {
  ModelKind model = ModelKind::ErdosRenyi;
  ScoreKind score = ScoreKind::Product;
  double t = 0.0;   // tilt, > 0
  long ell = 1;     // component length in edges, >= 1
  double p = 0.0;   // ER only
  double rho = 0.0;
};

// Throws InvalidArgument unless (model, score, t) is one of the three
// supported settings inside its validity range. Tilts within 1e-9 of the
// Gaussian product boundary 1/(1+rho) are rejected as ill-conditioned.
void validate_query(const CumulantQuery& q);

// Transfer-matrix invariants of the tilted correlated-Bernoulli chain:
// trace T = 1 + p11(e^t - 1), determinant D = rho p (1-p)(e^t - 1).
std::pair<double, double> er_transfer_matrix(double p, double rho, double t);

double er_path_mgf(double p, double rho, double t, long ell);
double er_cycle_mgf(double p, double rho, double t, long ell);
double gauss_product_path_mgf(double rho, double t, long ell);
double gauss_product_cycle_mgf(double rho, double t, long ell);
double gauss_sq_path_mgf(double rho, double t, long ell);
double gauss_sq_cycle_mgf(double rho, double t, long ell);

// Natural log of the component MGF selected by the query. Linear recursion
// up to ell = 50, eigenvalue log form beyond, so any ell is safe.
double kappa(const CumulantQuery& q, ComponentKind component);

// (|E|/2) kappa_c2 + L (kappa_c1 - kappa_c2/2): upper-bounds the log-MGF of
// the full edge sum for every decomposition with |E| edges and L self-loops.
double chain_upper_bound(long total_edges, long self_loops, const CumulantQuery& q);

struct ChainReport {
  bool pass = true;
  double max_violation = 0.0;  // largest lhs - rhs seen; must stay <= 1e-12
  long points_checked = 0;
  bool empty_grid_warning = false;
};

// Checks kappa_p1 <= kappa_c2/2 <= kappa_c1 and, for 2 <= ell <= ell_max,
// kappa_p(ell) <= kappa_c(ell) <= (ell/2) kappa_c2 at every grid point.
// inject_kappa2_bias perturbs kappa_c2 (fault-injection hook for tests).
ChainReport verify_kappa_chain(const std::vector<CumulantQuery>& grid, long ell_max = 8,
                               double inject_kappa2_bias = 0.0);

// Grid covering the three settings at representative parameters.
std::vector<CumulantQuery> default_chain_grid();

// Exact small-ell oracle for the ER setting: sums over all configurations of
// the g2-side chain, integrating the conditional g1 weights analytically.
// ell > 12 raises ResourceLimit.
double brute_force_er_component_mgf(double p, double rho, double t, long ell, ComponentKind kind);

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

// Simulation oracle for any supported setting: the sample mean of
// exp(t * component score) over freshly sampled chains. samples >= 10^4.
McEstimate monte_carlo_component_mgf(const CumulantQuery& q, ComponentKind kind, long samples,
                                     Rng& rng);

}  // namespace palign
