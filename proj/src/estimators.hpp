// Similarity-score maximization: the exact estimator over all injections
// between m-subsets, a branch-and-bound accelerator contracted to return the
// identical result, and the penalized variant for unknown m.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cumulants.hpp"
#include "model.hpp"

namespace palign {

struct AlignmentResult {
  InjectiveMapping mapping;
  double score = 0.0;
  // Filled by callers that know the planted truth; the optimizers do not.
  std::optional<double> overlap_vs_truth;
  std::optional<long> distance_vs_truth;
};

struct AlignOptions {
  ScoreKind score = ScoreKind::Product;
  std::optional<double> rho_for_mle;  // required by the MLE score
  // Brute force checks the mapping cardinality C(n,m)^2 m! against this up
  // front; branch-and-bound charges explored search nodes against it.
  double budget = 1e8;
};

// Edge score f(x, y) for one of the three kinds. Constructing the MLE score
// without a correlation is a parameter error.
class ScoreFn {
public:
  ScoreFn(ScoreKind kind, std::optional<double> rho_for_mle);
  double operator()(double x, double y) const {
    switch (kind_) {
      case ScoreKind::Product: return x * y;
      case ScoreKind::NegHalfSquaredDiff: return -0.5 * (x - y) * (x - y);
      default: return -0.5 * rho_ * (x * x + y * y) + x * y;
    }
  }
  ScoreKind kind() const noexcept { return kind_; }
  double mle_rho() const noexcept { return rho_; }

private:
  ScoreKind kind_;
  double rho_ = 0.0;
};

// Sum of f over all vertex pairs of pi's domain, paired through pi.
double similarity_score(const WeightedGraph& g1, const WeightedGraph& g2,
                        const InjectiveMapping& pi, ScoreKind score,
                        std::optional<double> rho_for_mle = std::nullopt);

// Fraction of truth's domain mapped identically by the candidate. The
// candidate may have any size; an empty truth is a domain error.
double overlap(const InjectiveMapping& truth, const InjectiveMapping& candidate);

// m minus the number of agreeing vertices; requires equal sizes.
long distance(const InjectiveMapping& pi, const InjectiveMapping& pi_prime);

// C(n,m)^2 m! as a double (exact below 2^53, +inf far beyond it).
double count_mappings(int n, int m);

// Advances an ascending m-subset of {0..n-1} to its colex successor.
// Returns false (leaving the subset at the colex maximum) when none is left.
bool next_subset_colex(std::vector<int>& subset, int n);

// Visits every injection in canonical order: source subsets in colex order,
// then target subsets in colex order, then target permutations in lex order.
void for_each_mapping(int n, int m, const std::function<void(const InjectiveMapping&)>& fn);

AlignmentResult brute_force_align(const WeightedGraph& g1, const WeightedGraph& g2, int m,
                                  const AlignOptions& opt);
AlignmentResult branch_and_bound_align(const WeightedGraph& g1, const WeightedGraph& g2, int m,
                                       const AlignOptions& opt);

// Maximizes score(pi) - lambda |pi|^2 over all sizes up to m_max. Ties go to
// the smaller size, then the lexicographically smaller mapping.
AlignmentResult penalized_align(const WeightedGraph& g1, const WeightedGraph& g2, double lambda,
                                int m_max, const AlignOptions& opt);

}  // namespace palign
