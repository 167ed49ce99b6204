#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "common.hpp"

namespace palign {

const char* model_name(ModelKind m) {
  return m == ModelKind::ErdosRenyi ? "er" : "gaussian";
}

ModelKind parse_model(const std::string& s) {
  if (s == "er" || s == "erdos_renyi" || s == "erdos-renyi") return ModelKind::ErdosRenyi;
  if (s == "gaussian" || s == "wigner" || s == "gaussian_wigner") return ModelKind::GaussianWigner;
  fail(ErrorCode::InvalidArgument, "unknown model '" + s + "' (expected er|gaussian)");
}

void ModelParams::validate_for_sampling() const {
  if (n < 0 || m < 0 || m > n)
    fail(ErrorCode::InvalidArgument, strprintf("need 0 <= m <= n, got n=%d m=%d", n, m));
  if (!(rho >= 0.0 && rho <= 1.0))
    fail(ErrorCode::InvalidArgument, strprintf("rho=%g outside [0,1]", rho));
  if (model == ModelKind::ErdosRenyi && !(p > 0.0 && p < 1.0))
    fail(ErrorCode::InvalidArgument, strprintf("ER density p=%g outside (0,1)", p));
}

void ModelParams::validate_standing() const {
  validate_for_sampling();
  if (model == ModelKind::ErdosRenyi) {
    if (!(p > 0.0 && p <= 0.5))
      fail(ErrorCode::InvalidArgument, strprintf("standing assumption 0 < p <= 1/2 violated: p=%g", p));
    if (!(rho > 0.0 && rho < 1.0))
      fail(ErrorCode::InvalidArgument, strprintf("standing assumption 0 < rho < 1 violated: rho=%g", rho));
  } else {
    if (!(rho > 0.0 && rho <= 1.0))
      fail(ErrorCode::InvalidArgument, strprintf("standing assumption 0 < rho <= 1 violated: rho=%g", rho));
  }
}

BernoulliPairPmf correlated_bernoulli_pmf(double p, double rho) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::InvalidArgument, strprintf("p=%g outside (0,1)", p));
  if (!(rho >= 0.0 && rho <= 1.0))
    fail(ErrorCode::InvalidArgument, strprintf("rho=%g outside [0,1]", rho));
  const double q = p * (1.0 - p);
  BernoulliPairPmf f;
  f.p11 = p * p + rho * q;
  f.p01 = (1.0 - rho) * q;
  f.p10 = f.p01;
  f.p00 = (1.0 - p) * (1.0 - p) + rho * q;
  return f;
}

WeightedGraph::WeightedGraph(int n, WeightKind kind)
    : n_(n), kind_(kind), w_(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "negative graph order");
}

double WeightedGraph::weight(int u, int v) const {
  if (u == v) return 0.0;
  if (u < v) std::swap(u, v);
  if (u >= n_ || v < 0) fail(ErrorCode::InvalidArgument, "vertex out of range");
  return w_[tri_index(u, v)];
}

void WeightedGraph::set_weight(int u, int v, double x) {
  if (u == v) fail(ErrorCode::InvalidArgument, "diagonal weights are fixed at zero");
  if (u < v) std::swap(u, v);
  if (u >= n_ || v < 0) fail(ErrorCode::InvalidArgument, "vertex out of range");
  w_[tri_index(u, v)] = x;
}

void InjectiveMapping::canonicalize() {
  std::sort(pairs.begin(), pairs.end());
}

void InjectiveMapping::validate() const {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].first < 0 || pairs[i].second < 0)
      fail(ErrorCode::InvalidArgument, "negative vertex id in mapping");
    if (i > 0 && pairs[i].first <= pairs[i - 1].first)
      fail(ErrorCode::InvalidArgument, "mapping sources must be strictly increasing");
  }
  std::vector<int> targets;
  targets.reserve(pairs.size());
  for (auto& pr : pairs) targets.push_back(pr.second);
  std::sort(targets.begin(), targets.end());
  if (std::adjacent_find(targets.begin(), targets.end()) != targets.end())
    fail(ErrorCode::InvalidArgument, "mapping targets must be distinct");
}

int InjectiveMapping::target_of(int v) const noexcept {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(v, -1));
  if (it != pairs.end() && it->first == v) return it->second;
  return -1;
}

bool lex_less(const InjectiveMapping& a, const InjectiveMapping& b) {
  return a.pairs < b.pairs;
}

InjectiveMapping sample_truth(int n, int m, Rng& rng) {
  if (m < 0 || m > n) fail(ErrorCode::InvalidArgument, strprintf("need 0 <= m <= n, got n=%d m=%d", n, m));
  // Partial Fisher-Yates: the first draw gives a uniform m-subset for the
  // sources (order discarded), the second a uniform ordered m-tuple of
  // distinct targets. Sorted sources paired with the ordered targets are
  // uniform over all C(n,m)^2 * m! injections.
  std::vector<int> src(n), tgt(n);
  std::iota(src.begin(), src.end(), 0);
  std::iota(tgt.begin(), tgt.end(), 0);
  for (int i = 0; i < m; ++i) {
    std::swap(src[i], src[i + static_cast<int>(rng.below(n - i))]);
    std::swap(tgt[i], tgt[i + static_cast<int>(rng.below(n - i))]);
  }
  std::sort(src.begin(), src.begin() + m);
  InjectiveMapping out;
  out.pairs.reserve(m);
  for (int i = 0; i < m; ++i) out.pairs.emplace_back(src[i], tgt[i]);
  return out;
}

namespace {

// Marks the g2 edges already drawn jointly with a matched g1 edge.
std::vector<char> matched_mask(int n) {
  return std::vector<char>(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
}

}  // namespace

std::pair<WeightedGraph, WeightedGraph> sample_er_pair(const ModelParams& params,
                                                       const InjectiveMapping& truth, Rng& rng) {
  params.validate_for_sampling();
  truth.validate();
  if (truth.size() != params.m)
    fail(ErrorCode::InvalidArgument, "truth size does not match params.m");
  const int n = params.n;
  const BernoulliPairPmf f = correlated_bernoulli_pmf(params.p, params.rho);
  // One uniform decides both coordinates of a matched pair: exact inverse CDF
  // over the four cells in the fixed order (0,0),(0,1),(1,0),(1,1).
  const double c0 = f.p00, c1 = f.p00 + f.p01, c2 = f.p00 + f.p01 + f.p10;

  WeightedGraph g1(n, WeightKind::Binary), g2(n, WeightKind::Binary);
  auto done = matched_mask(n);

  for (int u = 1; u < n; ++u) {
    for (int v = 0; v < u; ++v) {
      const int tu = truth.target_of(u), tv = truth.target_of(v);
      if (tu >= 0 && tv >= 0) {
        const double x = rng.uniform01();
        int b1, b2;
        if (x < c0) {
          b1 = 0; b2 = 0;
        } else if (x < c1) {
          b1 = 0; b2 = 1;
        } else if (x < c2) {
          b1 = 1; b2 = 0;
        } else {
          b1 = 1; b2 = 1;
        }
        g1.set_weight(u, v, b1);
        g2.set_weight(tu, tv, b2);
        done[WeightedGraph::tri_index(std::max(tu, tv), std::min(tu, tv))] = 1;
      } else {
        g1.set_weight(u, v, rng.uniform01() < params.p ? 1.0 : 0.0);
      }
    }
  }
  for (int u = 1; u < n; ++u)
    for (int v = 0; v < u; ++v)
      if (!done[WeightedGraph::tri_index(u, v)])
        g2.set_weight(u, v, rng.uniform01() < params.p ? 1.0 : 0.0);
  return {std::move(g1), std::move(g2)};
}

std::pair<WeightedGraph, WeightedGraph> sample_wigner_pair(const ModelParams& params,
                                                           const InjectiveMapping& truth, Rng& rng) {
  params.validate_for_sampling();
  truth.validate();
  if (truth.size() != params.m)
    fail(ErrorCode::InvalidArgument, "truth size does not match params.m");
  const int n = params.n;
  const double rho = params.rho;
  const double noise = std::sqrt(1.0 - rho * rho);

  WeightedGraph g1(n, WeightKind::Real), g2(n, WeightKind::Real);
  auto done = matched_mask(n);

  for (int u = 1; u < n; ++u) {
    for (int v = 0; v < u; ++v) {
      const double a = rng.normal();
      g1.set_weight(u, v, a);
      const int tu = truth.target_of(u), tv = truth.target_of(v);
      if (tu >= 0 && tv >= 0) {
        const double z = rng.normal();
        g2.set_weight(tu, tv, rho * a + noise * z);
        done[WeightedGraph::tri_index(std::max(tu, tv), std::min(tu, tv))] = 1;
      }
    }
  }
  for (int u = 1; u < n; ++u)
    for (int v = 0; v < u; ++v)
      if (!done[WeightedGraph::tri_index(u, v)]) g2.set_weight(u, v, rng.normal());
  return {std::move(g1), std::move(g2)};
}

PlantedInstance sample_instance(const ModelParams& params, std::uint64_t seed) {
  params.validate_for_sampling();
  Rng rng(seed);
  PlantedInstance inst;
  inst.params = params;
  inst.seed = seed;
  inst.truth = sample_truth(params.n, params.m, rng);
  auto gg = params.model == ModelKind::ErdosRenyi ? sample_er_pair(params, inst.truth, rng)
                                                  : sample_wigner_pair(params, inst.truth, rng);
  inst.g1 = std::move(gg.first);
  inst.g2 = std::move(gg.second);
  return inst;
}

}  // namespace palign
