#include "estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "common.hpp"

namespace palign {

ScoreFn::ScoreFn(ScoreKind kind, std::optional<double> rho_for_mle) : kind_(kind) {
  if (kind == ScoreKind::MleGauss) {
    if (!rho_for_mle)
      fail(ErrorCode::InvalidArgument, "the MLE score needs the model correlation rho");
    rho_ = *rho_for_mle;
    if (!std::isfinite(rho_) || rho_ <= 0.0 || rho_ > 1.0)
      fail(ErrorCode::InvalidArgument, "the MLE correlation must lie in (0, 1]");
  }
}

namespace {

void check_pi_fits(const WeightedGraph& g1, const WeightedGraph& g2, const InjectiveMapping& pi) {
  pi.validate();
  for (auto [s, t] : pi.pairs) {
    if (s >= g1.order()) fail(ErrorCode::InvalidArgument, "mapping source outside g1");
    if (t >= g2.order()) fail(ErrorCode::InvalidArgument, "mapping target outside g2");
  }
}

// Full symmetric matrix copy; hot loops read this instead of calling
// weight() so the summands are the identical doubles.
std::vector<double> dense_weights(const WeightedGraph& g) {
  int n = g.order();
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (int u = 1; u < n; ++u)
    for (int v = 0; v < u; ++v) w[u * n + v] = w[v * n + u] = g.weight(u, v);
  return w;
}

}  // namespace

double similarity_score(const WeightedGraph& g1, const WeightedGraph& g2,
                        const InjectiveMapping& pi, ScoreKind score,
                        std::optional<double> rho_for_mle) {
  ScoreFn f(score, rho_for_mle);
  check_pi_fits(g1, g2, pi);
  int m = pi.size();
  double s = 0.0;
  for (int j = 1; j < m; ++j)
    for (int i = 0; i < j; ++i)
      s += f(g1.weight(pi.pairs[i].first, pi.pairs[j].first),
             g2.weight(pi.pairs[i].second, pi.pairs[j].second));
  return s;
}

double overlap(const InjectiveMapping& truth, const InjectiveMapping& candidate) {
  truth.validate();
  candidate.validate();
  if (truth.size() == 0)
    fail(ErrorCode::InvalidArgument, "overlap against an empty truth is undefined");
  long agree = 0;
  for (auto [s, t] : truth.pairs)
    if (candidate.target_of(s) == t) ++agree;
  return static_cast<double>(agree) / truth.size();
}

long distance(const InjectiveMapping& pi, const InjectiveMapping& pi_prime) {
  pi.validate();
  pi_prime.validate();
  if (pi.size() != pi_prime.size())
    fail(ErrorCode::InvalidArgument, "distance needs mappings of equal size");
  long agree = 0;
  for (auto [s, t] : pi.pairs)
    if (pi_prime.target_of(s) == t) ++agree;
  return pi.size() - agree;
}

double count_mappings(int n, int m) {
  if (n < 0 || m < 0 || m > n) fail(ErrorCode::InvalidArgument, "need 0 <= m <= n");
  double binom = 1.0, fact = 1.0;
  for (int i = 1; i <= m; ++i) {
    binom = binom * (n - m + i) / i;
    fact *= i;
  }
  return binom * binom * fact;
}

bool next_subset_colex(std::vector<int>& subset, int n) {
  int m = static_cast<int>(subset.size());
  for (int i = 0; i < m; ++i) {
    int cap = i + 1 < m ? subset[i + 1] : n;
    if (subset[i] + 1 < cap) {
      ++subset[i];
      for (int j = 0; j < i; ++j) subset[j] = j;
      return true;
    }
  }
  return false;
}

void for_each_mapping(int n, int m, const std::function<void(const InjectiveMapping&)>& fn) {
  if (n < 0 || m < 0 || m > n) fail(ErrorCode::InvalidArgument, "need 0 <= m <= n");
  std::vector<int> dom(m);
  std::iota(dom.begin(), dom.end(), 0);
  InjectiveMapping pi;
  pi.pairs.resize(m);
  while (true) {
    std::vector<int> tgt(m);
    std::iota(tgt.begin(), tgt.end(), 0);
    while (true) {
      std::vector<int> perm = tgt;
      do {
        for (int i = 0; i < m; ++i) pi.pairs[i] = {dom[i], perm[i]};
        fn(pi);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!next_subset_colex(tgt, n)) break;
    }
    if (!next_subset_colex(dom, n)) break;
  }
}

namespace {

void check_align_inputs(const WeightedGraph& g1, const WeightedGraph& g2, int m) {
  if (g1.order() != g2.order())
    fail(ErrorCode::InvalidArgument, "alignment needs graphs on the same vertex count");
  if (m < 0 || m > g1.order()) fail(ErrorCode::InvalidArgument, "need 0 <= m <= n");
}

}  // namespace

AlignmentResult brute_force_align(const WeightedGraph& g1, const WeightedGraph& g2, int m,
                                  const AlignOptions& opt) {
  ScoreFn f(opt.score, opt.rho_for_mle);
  check_align_inputs(g1, g2, m);
  int n = g1.order();
  double cardinality = count_mappings(n, m);
  if (!(cardinality <= opt.budget))
    fail(ErrorCode::ResourceLimit,
         strprintf("enumerating %.17g mappings exceeds the budget %.17g", cardinality,
                   opt.budget));

  std::vector<double> w1 = dense_weights(g1), w2 = dense_weights(g2);
  AlignmentResult best;
  bool have = false;
  InjectiveMapping cand;
  cand.pairs.resize(m);
  std::vector<int> dom(m);
  std::iota(dom.begin(), dom.end(), 0);
  while (true) {
    std::vector<int> tgt(m);
    std::iota(tgt.begin(), tgt.end(), 0);
    while (true) {
      std::vector<int> perm = tgt;
      do {
        double s = 0.0;
        for (int j = 1; j < m; ++j)
          for (int i = 0; i < j; ++i) s += f(w1[dom[i] * n + dom[j]], w2[perm[i] * n + perm[j]]);
        bool take = !have || s > best.score;
        if (!take && s == best.score) {
          for (int i = 0; i < m; ++i) cand.pairs[i] = {dom[i], perm[i]};
          take = lex_less(cand, best.mapping);
        }
        if (take) {
          for (int i = 0; i < m; ++i) cand.pairs[i] = {dom[i], perm[i]};
          best.mapping = cand;
          best.score = s;
          have = true;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!next_subset_colex(tgt, n)) break;
    }
    if (!next_subset_colex(dom, n)) break;
  }
  return best;
}

namespace {

// Depth-first exact search with skip-or-assign branching. Internally g1's
// vertices are relabeled so the heaviest rows are decided first, which makes
// the optimistic bound discriminate early; leaves are rescored in the
// canonical source-sorted order, so scores are bit-identical to brute
// force's. A subtree is cut only when its optimistic bound sits a safety
// margin below the incumbent, which keeps the tie set intact; incumbent
// replacement (strictly better score, or equal score and lexicographically
// smaller mapping) is order-independent, so the result matches brute force
// no matter how the tree is walked.
class BnbSearch {
public:
  BnbSearch(const WeightedGraph& g1, const WeightedGraph& g2, int m, const AlignOptions& opt,
            double* nodes_used)
      : f_(opt.score, opt.rho_for_mle),
        n_(g1.order()),
        m_(m),
        budget_(opt.budget),
        nodes_used_(nodes_used),
        w2_(dense_weights(g2)) {
    check_align_inputs(g1, g2, m);

    // Strongest g1 vertices first; ties go to the lower id so the traversal
    // is deterministic.
    std::vector<double> raw = dense_weights(g1);
    std::vector<double> strength(n_, 0.0);
    for (int v = 0; v < n_; ++v)
      for (int u = 0; u < n_; ++u) strength[v] += std::fabs(raw[v * n_ + u]);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (strength[a] != strength[b]) return strength[a] > strength[b];
      return a < b;
    });
    inv_order_.resize(n_);
    for (int pos = 0; pos < n_; ++pos) inv_order_[order_[pos]] = pos;
    w1_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) w1_[a * n_ + b] = raw[order_[a] * n_ + order_[b]];

    cross_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    delta_stack_.assign(static_cast<std::size_t>(std::max(m_, 1)) * n_ * n_, 0.0);
    target_used_.assign(n_, 0);
    children_stack_.assign(std::max(m_, 1), {});
    for (auto& c : children_stack_) c.reserve(n_);
    srcs_.reserve(m_);
    tgts_.reserve(m_);
    // Per-edge cap on f by score kind: xy <= |x||y|; the MLE score obeys
    // f <= -(rho/2)(|x|-|y|)^2 + (1-rho)|x||y| <= (1-rho)|x||y|; squared
    // differences never exceed zero.
    double cap = 0.0;
    if (opt.score == ScoreKind::Product) cap = 1.0;
    if (opt.score == ScoreKind::MleGauss) cap = 1.0 - f_.mle_rho();
    if (cap > 0.0) build_prefix_products(cap);
  }

  AlignmentResult run() {
    dfs(0, 0, 0.0);
    return std::move(best_);
  }

private:
  // Rearrangement caps for the edges still undecided at position pos: the
  // largest achievable sum of j products pairs the biggest |w1| magnitudes
  // among positions {pos..n-1} with the biggest |w2| magnitudes overall,
  // scaled by the per-edge cap factor. ff(pos, j) is that cap; one row per
  // position.
  void build_prefix_products(double cap) {
    std::size_t edges = static_cast<std::size_t>(n_) * (n_ - 1) / 2;
    std::vector<double> s2;
    s2.reserve(edges);
    for (int u = 1; u < n_; ++u)
      for (int v = 0; v < u; ++v) s2.push_back(std::fabs(w2_[u * n_ + v]));
    std::sort(s2.rbegin(), s2.rend());

    ff_stride_ = edges + 1;
    ff_.assign(static_cast<std::size_t>(n_ + 1) * ff_stride_, 0.0);
    std::vector<double> s1;
    for (int pos = n_ - 1; pos >= 0; --pos) {
      s1.clear();
      for (int a = pos + 1; a < n_; ++a)
        for (int b = pos; b < a; ++b) s1.push_back(std::fabs(w1_[a * n_ + b]));
      std::sort(s1.rbegin(), s1.rend());
      double* row = &ff_[static_cast<std::size_t>(pos) * ff_stride_];
      for (std::size_t i = 0; i < s1.size(); ++i) row[i + 1] = row[i] + cap * s1[i] * s2[i];
      for (std::size_t i = s1.size() + 1; i < ff_stride_; ++i) row[i] = row[i - 1];
    }
  }

  double future_future(int pos, long r) const {
    if (ff_.empty()) return 0.0;  // squared-difference scores never gain
    return ff_[static_cast<std::size_t>(pos) * ff_stride_ +
               static_cast<std::size_t>(r) * (r - 1) / 2];
  }

  double margin() const { return 1e-9 * (1.0 + std::fabs(best_.score)); }

  void spend_node() {
    *nodes_used_ += 1.0;
    if (*nodes_used_ > budget_)
      fail(ErrorCode::ResourceLimit,
           strprintf("branch-and-bound explored %.17g nodes, exceeding the budget %.17g",
                     *nodes_used_, budget_));
  }

  void offer_leaf() {
    InjectiveMapping cand;
    cand.pairs.reserve(m_);
    for (int i = 0; i < m_; ++i) cand.pairs.emplace_back(order_[srcs_[i]], tgts_[i]);
    std::sort(cand.pairs.begin(), cand.pairs.end());
    // Rescore in the canonical order so equal mappings carry equal doubles.
    double s = 0.0;
    for (int j = 1; j < m_; ++j)
      for (int i = 0; i < j; ++i)
        s += f_(g1_weight(cand.pairs[i].first, cand.pairs[j].first),
                w2_[cand.pairs[i].second * n_ + cand.pairs[j].second]);
    bool take = !have_ || s > best_.score ||
                (s == best_.score && lex_less(cand, best_.mapping));
    if (take) {
      best_.mapping = std::move(cand);
      best_.score = s;
      have_ = true;
    }
  }

  double g1_weight(int orig_u, int orig_v) const {
    return w1_[inv_order_[orig_u] * n_ + inv_order_[orig_v]];
  }

  void push(int pos, int w, int k) {
    target_used_[w] = 1;
    srcs_.push_back(pos);
    tgts_.push_back(w);
    double* delta = &delta_stack_[static_cast<std::size_t>(k) * n_ * n_];
    for (int u = pos + 1; u < n_; ++u) {
      double x = w1_[pos * n_ + u];
      for (int ww = 0; ww < n_; ++ww) {
        double d = f_(x, w2_[w * n_ + ww]);
        delta[u * n_ + ww] = d;
        cross_[u * n_ + ww] += d;
      }
    }
  }

  void pop(int pos, int w, int k) {
    const double* delta = &delta_stack_[static_cast<std::size_t>(k) * n_ * n_];
    for (int u = pos + 1; u < n_; ++u)
      for (int ww = 0; ww < n_; ++ww) cross_[u * n_ + ww] -= delta[u * n_ + ww];
    target_used_[w] = 0;
    srcs_.pop_back();
    tgts_.pop_back();
  }

  // Optimistic completion value for the subtree rooted at (pos, k): the
  // partial score plus the smaller of two admissible caps on the
  // assigned-to-future cross edges (each future vertex's best free target,
  // and symmetrically each free target's best future vertex, top r of
  // either) plus the rearrangement cap on future-future edges.
  double bound(int pos, int k, double partial) {
    int r = m_ - k;
    pool_best_.assign(static_cast<std::size_t>(n_ - pos), kNegInf);
    target_best_.assign(static_cast<std::size_t>(n_), kNegInf);
    for (int u = pos; u < n_; ++u) {
      const double* row = &cross_[static_cast<std::size_t>(u) * n_];
      double best_u = kNegInf;
      for (int w = 0; w < n_; ++w) {
        if (target_used_[w]) continue;
        double c = row[w];
        if (c > best_u) best_u = c;
        if (c > target_best_[w]) target_best_[w] = c;
      }
      pool_best_[u - pos] = best_u;
    }
    double by_vertex = top_r_sum(pool_best_, r);
    // Drop used targets before ranking the target-side column maxima.
    int free_count = 0;
    for (int w = 0; w < n_; ++w)
      if (!target_used_[w]) target_best_[free_count++] = target_best_[w];
    target_best_.resize(free_count);
    double by_target = top_r_sum(target_best_, r);
    return partial + std::min(by_vertex, by_target) + future_future(pos, r);
  }

  double top_r_sum(std::vector<double>& vals, int r) {
    std::nth_element(vals.begin(), vals.begin() + (r - 1), vals.end(), std::greater<double>());
    double s = 0.0;
    for (int i = 0; i < r; ++i) s += vals[i];
    return s;
  }

  void dfs(int pos, int k, double partial) {
    spend_node();
    if (k == m_) {
      // The incremental sum equals the true score up to rounding noise far
      // below the margin, so cold leaves can skip the canonical rescore.
      if (!have_ || partial >= best_.score - margin()) offer_leaf();
      return;
    }
    if (have_ && bound(pos, k, partial) < best_.score - margin()) return;
    auto& children = children_stack_[k];  // (-gain, target): best first
    children.clear();
    const double* row = &cross_[static_cast<std::size_t>(pos) * n_];
    for (int w = 0; w < n_; ++w)
      if (!target_used_[w]) children.emplace_back(-row[w], w);
    std::sort(children.begin(), children.end());
    for (auto [neg_gain, w] : children) {
      push(pos, w, k);
      dfs(pos + 1, k + 1, partial - neg_gain);
      pop(pos, w, k);
    }
    if (n_ - pos - 1 >= m_ - k) dfs(pos + 1, k, partial);
  }

  static constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  ScoreFn f_;
  int n_, m_;
  double budget_;
  double* nodes_used_;
  std::vector<double> w1_, w2_;  // w1_ lives in search positions, w2_ in ids
  std::vector<int> order_, inv_order_;  // position <-> original g1 vertex id
  std::vector<double> cross_, delta_stack_, ff_;
  std::size_t ff_stride_ = 0;
  std::vector<char> target_used_;
  std::vector<int> srcs_, tgts_;  // positions / target ids, in push order
  std::vector<std::vector<std::pair<double, int>>> children_stack_;
  std::vector<double> pool_best_, target_best_;
  AlignmentResult best_;
  bool have_ = false;
};

}  // namespace

AlignmentResult branch_and_bound_align(const WeightedGraph& g1, const WeightedGraph& g2, int m,
                                       const AlignOptions& opt) {
  double nodes_used = 0.0;
  return BnbSearch(g1, g2, m, opt, &nodes_used).run();
}

AlignmentResult penalized_align(const WeightedGraph& g1, const WeightedGraph& g2, double lambda,
                                int m_max, const AlignOptions& opt) {
  if (!std::isfinite(lambda) || lambda < 0.0)
    fail(ErrorCode::InvalidArgument, "the penalty weight lambda must be >= 0");
  check_align_inputs(g1, g2, m_max);
  double nodes_used = 0.0;
  AlignmentResult best;
  double best_objective = 0.0;
  bool have = false;
  for (int m = 0; m <= m_max; ++m) {
    AlignmentResult res = BnbSearch(g1, g2, m, opt, &nodes_used).run();
    double objective = res.score - lambda * static_cast<double>(m) * m;
    if (!have || objective > best_objective) {
      best = std::move(res);
      best_objective = objective;
      have = true;
    }
  }
  return best;
}

}  // namespace palign
