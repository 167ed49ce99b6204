// Planted-instance models: a pair of graphs on n vertices whose restrictions
// to a hidden pair of m-subsets are correlated through a hidden bijection.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace palign {

enum class ModelKind { ErdosRenyi, GaussianWigner };
enum class WeightKind { Binary, Real };

const char* model_name(ModelKind m);
ModelKind parse_model(const std::string& s);

struct ModelParams {
  int n = 0;
  int m = 0;
  double p = 0.0;  // ER edge density; unused for the Gaussian model
  double rho = 0.0;
  ModelKind model = ModelKind::ErdosRenyi;

  // What the samplers need: 0 <= m <= n, ER: p in (0,1) and rho in [0,1],
  // Gaussian: rho in [0,1]. Boundary correlations are legitimate inputs here
  // (rho = 1 plants an identical subgraph).
  void validate_for_sampling() const;

  // The stricter regime the threshold formulas are stated for:
  // ER: 0 < p <= 1/2 and 0 < rho < 1; Gaussian: 0 < rho <= 1.
  void validate_standing() const;
};

// Joint pmf of one correlated edge pair (beta1, beta2): marginals Bern(p),
// correlation rho. Cell order is (beta1, beta2).
struct BernoulliPairPmf {
  double p00, p01, p10, p11;
};

BernoulliPairPmf correlated_bernoulli_pmf(double p, double rho);

// Symmetric weighted graph with zero diagonal; only the strict lower triangle
// is stored (row-major: rows u ascending, columns v < u ascending).
class WeightedGraph {
public:
  WeightedGraph() = default;
  WeightedGraph(int n, WeightKind kind);

  int order() const noexcept { return n_; }
  WeightKind kind() const noexcept { return kind_; }

  static std::size_t tri_index(int u, int v) noexcept {  // requires u > v
    return static_cast<std::size_t>(u) * (u - 1) / 2 + v;
  }

  double weight(int u, int v) const;
  void set_weight(int u, int v, double x);

  const std::vector<double>& raw() const noexcept { return w_; }
  std::vector<double>& raw() noexcept { return w_; }

private:
  int n_ = 0;
  WeightKind kind_ = WeightKind::Binary;
  std::vector<double> w_;
};

// Injection from an m-subset of [n] into [n']; pairs kept sorted by source.
struct InjectiveMapping {
  std::vector<std::pair<int, int>> pairs;

  int size() const noexcept { return static_cast<int>(pairs.size()); }
  void canonicalize();
  void validate() const;  // sources strictly increasing, targets distinct, ids >= 0
  // Target of v, or -1 when v is outside the domain.
  int target_of(int v) const noexcept;
  bool operator==(const InjectiveMapping&) const = default;
};

// Lexicographic order on the canonical pair list; the global tie-break rule.
bool lex_less(const InjectiveMapping& a, const InjectiveMapping& b);

struct PlantedInstance {
  ModelParams params;
  std::uint64_t seed = 0;
  InjectiveMapping truth;
  WeightedGraph g1, g2;
};

// Uniform draw from the space of injections between m-subsets of [n]
// (cardinality C(n,m)^2 * m!).
InjectiveMapping sample_truth(int n, int m, Rng& rng);

std::pair<WeightedGraph, WeightedGraph> sample_er_pair(const ModelParams& params,
                                                       const InjectiveMapping& truth, Rng& rng);
std::pair<WeightedGraph, WeightedGraph> sample_wigner_pair(const ModelParams& params,
                                                           const InjectiveMapping& truth, Rng& rng);

// Draw truth and graph pair from a single seed and package them.
PlantedInstance sample_instance(const ModelParams& params, std::uint64_t seed);

}  // namespace palign
