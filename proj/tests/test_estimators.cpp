#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "../src/common.hpp"
#include "../src/estimators.hpp"
#include "../src/model.hpp"
#include "../src/rng.hpp"

using namespace palign;

namespace {

InjectiveMapping mapping_of(std::vector<std::pair<int, int>> pairs) {
  InjectiveMapping pi;
  pi.pairs = std::move(pairs);
  pi.canonicalize();
  pi.validate();
  return pi;
}

WeightedGraph graph_of(int n, WeightKind kind,
                       const std::vector<std::tuple<int, int, double>>& edges) {
  WeightedGraph g(n, kind);
  for (auto [u, v, w] : edges) g.set_weight(u, v, w);
  return g;
}

// A fixed weighted pair used by the hand-computed score checks. Every weight
// is dyadic, so the expected sums below are exact doubles, not approximations.
struct WorkedPair {
  WeightedGraph g1 = graph_of(3, WeightKind::Real,
                              {{0, 1, 0.5}, {0, 2, -1.0}, {1, 2, 2.0}});
  WeightedGraph g2 = graph_of(3, WeightKind::Real,
                              {{0, 1, 1.5}, {0, 2, 0.25}, {1, 2, -0.5}});
};

InjectiveMapping random_mapping(int n, int m, Rng& rng) {
  std::vector<int> src(n), tgt(n);
  for (int i = 0; i < n; ++i) src[i] = tgt[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(src[i], src[rng.below(i + 1)]);
  for (int i = n - 1; i > 0; --i) std::swap(tgt[i], tgt[rng.below(i + 1)]);
  InjectiveMapping pi;
  for (int i = 0; i < m; ++i) pi.pairs.emplace_back(src[i], tgt[i]);
  pi.canonicalize();
  return pi;
}

}  // namespace

TEST_CASE("scores of tiny mappings and hand-worked sums") {
  WorkedPair wp;

  CHECK(similarity_score(wp.g1, wp.g2, mapping_of({}), ScoreKind::Product) == 0.0);
  CHECK(similarity_score(wp.g1, wp.g2, mapping_of({{1, 2}}), ScoreKind::NegHalfSquaredDiff) ==
        0.0);

  InjectiveMapping id3 = mapping_of({{0, 0}, {1, 1}, {2, 2}});
  // Product: 0.5*1.5 + (-1)*0.25 + 2*(-0.5)
  CHECK(similarity_score(wp.g1, wp.g2, id3, ScoreKind::Product) == -0.5);
  // Squared differences: -(1 + 1.5625 + 6.25)/2
  CHECK(similarity_score(wp.g1, wp.g2, id3, ScoreKind::NegHalfSquaredDiff) == -4.40625);
  // MLE at rho = 1/2: per edge -(x^2+y^2)/4 + xy
  CHECK(similarity_score(wp.g1, wp.g2, id3, ScoreKind::MleGauss, 0.5) == -2.453125);

  // A non-identity injection reads g2 through the mapped pair, not the raw one.
  InjectiveMapping tw = mapping_of({{0, 2}, {1, 0}, {2, 1}});
  CHECK(similarity_score(wp.g1, wp.g2, tw, ScoreKind::Product) == 3.625);
}

TEST_CASE("binary triangle overlap count comes out of the product score") {
  WeightedGraph tri = graph_of(3, WeightKind::Binary, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  InjectiveMapping id3 = mapping_of({{0, 0}, {1, 1}, {2, 2}});
  CHECK(similarity_score(tri, tri, id3, ScoreKind::Product) == 3.0);
  // With itself under squared differences every summand vanishes.
  CHECK(similarity_score(tri, tri, id3, ScoreKind::NegHalfSquaredDiff) == 0.0);
}

TEST_CASE("score argument errors") {
  WorkedPair wp;
  InjectiveMapping id2 = mapping_of({{0, 0}, {1, 1}});
  CHECK_THROWS_AS(similarity_score(wp.g1, wp.g2, id2, ScoreKind::MleGauss), Error);
  CHECK_THROWS_AS(similarity_score(wp.g1, wp.g2, id2, ScoreKind::MleGauss, 0.0), Error);
  CHECK_THROWS_AS(similarity_score(wp.g1, wp.g2, id2, ScoreKind::MleGauss, 1.5), Error);
  CHECK_NOTHROW(similarity_score(wp.g1, wp.g2, id2, ScoreKind::MleGauss, 1.0));

  InjectiveMapping off = mapping_of({{0, 0}, {5, 1}});
  CHECK_THROWS_AS(similarity_score(wp.g1, wp.g2, off, ScoreKind::Product), Error);
}

TEST_CASE("overlap and distance basics") {
  InjectiveMapping truth = mapping_of({{0, 1}, {1, 2}, {2, 0}});
  CHECK(overlap(truth, truth) == 1.0);
  CHECK(overlap(truth, mapping_of({{0, 1}, {1, 0}, {2, 2}})) == doctest::Approx(1.0 / 3));
  // Candidates of a different size are legal; agreement is counted on truth's
  // domain only.
  CHECK(overlap(truth, mapping_of({{0, 1}})) == doctest::Approx(1.0 / 3));
  CHECK(overlap(truth, mapping_of({})) == 0.0);
  CHECK_THROWS_AS(overlap(mapping_of({}), truth), Error);

  CHECK(distance(truth, truth) == 0);
  CHECK(distance(truth, mapping_of({{0, 2}, {1, 1}, {2, 0}})) == 2);
  CHECK_THROWS_AS(distance(truth, mapping_of({{0, 1}})), Error);
}

TEST_CASE("agreement splits between overlap and distance") {
  // For equal sizes m * overlap + distance = m, whatever the mappings are.
  Rng rng(771);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 2 + static_cast<int>(rng.below(5));
    int m = 1 + static_cast<int>(rng.below(n));
    InjectiveMapping a = random_mapping(n, m, rng);
    InjectiveMapping b = random_mapping(n, m, rng);
    double lhs = m * overlap(a, b) + static_cast<double>(distance(a, b));
    CHECK(lhs == doctest::Approx(static_cast<double>(m)).epsilon(1e-12));
    CHECK(distance(a, b) == distance(b, a));
  }
}

TEST_CASE("mapping counts") {
  CHECK(count_mappings(4, 2) == 72.0);
  CHECK(count_mappings(3, 0) == 1.0);
  CHECK(count_mappings(5, 5) == 120.0);
  CHECK(count_mappings(6, 3) == 2400.0);  // 20^2 * 6
  CHECK(std::isinf(count_mappings(2000, 100)));
  CHECK_THROWS_AS(count_mappings(3, 4), Error);
  CHECK_THROWS_AS(count_mappings(-1, 0), Error);
  CHECK_THROWS_AS(count_mappings(3, -2), Error);
}

TEST_CASE("colex successor walks the documented order") {
  std::vector<int> s = {0, 1};
  std::vector<std::vector<int>> seen = {s};
  while (next_subset_colex(s, 4)) seen.push_back(s);
  std::vector<std::vector<int>> want = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
  CHECK(seen == want);
  CHECK(s == std::vector<int>{2, 3});  // parked at the colex maximum

  std::vector<int> empty;
  CHECK(!next_subset_colex(empty, 5));
}

TEST_CASE("mapping enumeration is canonical, complete, and duplicate free") {
  std::vector<InjectiveMapping> visited;
  for_each_mapping(3, 2, [&](const InjectiveMapping& pi) { visited.push_back(pi); });
  REQUIRE(visited.size() == 18);
  CHECK(visited.size() == static_cast<std::size_t>(count_mappings(3, 2)));
  CHECK(visited[0].pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  CHECK(visited[1].pairs == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
  CHECK(visited[2].pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 2}});
  CHECK(visited[3].pairs == std::vector<std::pair<int, int>>{{0, 2}, {1, 0}});
  CHECK(visited[4].pairs == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(visited[5].pairs == std::vector<std::pair<int, int>>{{0, 2}, {1, 1}});

  std::set<std::vector<std::pair<int, int>>> uniq;
  for (const InjectiveMapping& pi : visited) {
    pi.validate();
    CHECK(std::is_sorted(pi.pairs.begin(), pi.pairs.end()));
    uniq.insert(pi.pairs);
  }
  CHECK(uniq.size() == visited.size());

  // m = 0 yields exactly the empty mapping.
  int calls = 0;
  for_each_mapping(4, 0, [&](const InjectiveMapping& pi) {
    ++calls;
    CHECK(pi.size() == 0);
  });
  CHECK(calls == 1);

  CHECK_THROWS_AS(for_each_mapping(2, 3, [](const InjectiveMapping&) {}), Error);
}

TEST_CASE("brute force finds the path embedding and certifies it") {
  // Path 0-1-2 plus the isolated vertex 3, matched against itself. The best
  // product score is both path edges, and the identity attains it first in
  // lexicographic order.
  WeightedGraph path = graph_of(4, WeightKind::Binary, {{0, 1, 1}, {1, 2, 1}});
  AlignOptions opt;
  AlignmentResult res = brute_force_align(path, path, 3, opt);
  CHECK(res.score == 2.0);
  CHECK(res.mapping.pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}});

  // Certificate: no injection beats it, and the count of injections matches.
  int seen = 0;
  for_each_mapping(4, 3, [&](const InjectiveMapping& pi) {
    ++seen;
    CHECK(similarity_score(path, path, pi, ScoreKind::Product) <= res.score);
  });
  CHECK(seen == 96);
}

TEST_CASE("self alignment with distinct weights is the identity at score zero") {
  Rng rng(9021);
  WeightedGraph g(4, WeightKind::Real);
  for (int u = 1; u < 4; ++u)
    for (int v = 0; v < u; ++v) g.set_weight(u, v, rng.normal());

  AlignOptions opt;
  opt.score = ScoreKind::NegHalfSquaredDiff;
  for (int m : {3, 4}) {
    AlignmentResult bf = brute_force_align(g, g, m, opt);
    AlignmentResult bb = branch_and_bound_align(g, g, m, opt);
    CHECK(bf.score == 0.0);
    CHECK(bb.score == 0.0);
    std::vector<std::pair<int, int>> want;
    for (int i = 0; i < m; ++i) want.emplace_back(i, i);
    CHECK(bf.mapping.pairs == want);
    CHECK(bb.mapping.pairs == want);
  }
}

TEST_CASE("ties break toward the lexicographically smallest mapping") {
  // All-ones K4: every size-2 injection scores exactly 1.
  WeightedGraph k4 = graph_of(
      4, WeightKind::Binary,
      {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  AlignOptions opt;
  AlignmentResult bf = brute_force_align(k4, k4, 2, opt);
  AlignmentResult bb = branch_and_bound_align(k4, k4, 2, opt);
  CHECK(bf.score == 1.0);
  CHECK(bf.mapping.pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  CHECK(bb.score == 1.0);
  CHECK(bb.mapping.pairs == bf.mapping.pairs);
}

TEST_CASE("alignment argument and budget errors") {
  WeightedGraph a(4, WeightKind::Binary), b(5, WeightKind::Binary);
  AlignOptions opt;
  CHECK_THROWS_AS(brute_force_align(a, b, 2, opt), Error);
  CHECK_THROWS_AS(branch_and_bound_align(a, b, 2, opt), Error);
  WeightedGraph c(4, WeightKind::Binary);
  CHECK_THROWS_AS(brute_force_align(a, c, 5, opt), Error);
  CHECK_THROWS_AS(brute_force_align(a, c, -1, opt), Error);

  // C(4,2)^2 2! = 72 mappings exceed a budget of 10 before any work starts.
  opt.budget = 10;
  try {
    brute_force_align(a, c, 2, opt);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResourceLimit);
    CHECK(std::string(e.what()).find("budget") != std::string::npos);
  }

  // Branch and bound charges explored nodes instead; 3 is never enough here.
  PlantedInstance inst = sample_instance({6, 3, 0.0, 0.6, ModelKind::GaussianWigner}, 41);
  AlignOptions tiny;
  tiny.budget = 3;
  try {
    branch_and_bound_align(inst.g1, inst.g2, 3, tiny);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResourceLimit);
  }
}

TEST_CASE("degenerate alignment sizes") {
  WeightedGraph g(3, WeightKind::Binary);
  AlignOptions opt;
  for (auto align : {brute_force_align, branch_and_bound_align}) {
    AlignmentResult r = align(g, g, 0, opt);
    CHECK(r.score == 0.0);
    CHECK(r.mapping.size() == 0);
    r = align(g, g, 1, opt);
    CHECK(r.score == 0.0);
    CHECK(r.mapping.pairs == std::vector<std::pair<int, int>>{{0, 0}});
  }
}

TEST_CASE("branch and bound replays brute force bit for bit") {
  // Mixed models, scores, and sizes; scores and mappings must agree exactly,
  // including which of several tied maximizers is reported.
  int checked = 0;
  for (unsigned seed = 100; seed < 160; ++seed) {
    int n = 3 + static_cast<int>(seed % 5);
    int m = static_cast<int>(seed % (n + 1));
    ModelParams mp;
    mp.n = n;
    mp.m = std::min(m, n);
    if (seed % 2 == 0) {
      mp.model = ModelKind::ErdosRenyi;
      mp.p = 0.3;
      mp.rho = 0.6;
    } else {
      mp.model = ModelKind::GaussianWigner;
      mp.p = 0.0;
      mp.rho = 0.5;
    }
    PlantedInstance inst = sample_instance(mp, seed);
    AlignOptions opt;
    switch (seed % 3) {
      case 0: opt.score = ScoreKind::Product; break;
      case 1: opt.score = ScoreKind::NegHalfSquaredDiff; break;
      default:
        opt.score = ScoreKind::MleGauss;
        opt.rho_for_mle = 0.5;
    }
    AlignmentResult bf = brute_force_align(inst.g1, inst.g2, m, opt);
    AlignmentResult bb = branch_and_bound_align(inst.g1, inst.g2, m, opt);
    CHECK(bf.score == bb.score);
    CHECK(bf.mapping.pairs == bb.mapping.pairs);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("optimum is invariant under relabeling the first graph") {
  PlantedInstance inst = sample_instance({6, 4, 0.0, 0.8, ModelKind::GaussianWigner}, 314);
  AlignOptions opt;
  opt.score = ScoreKind::Product;
  double base = branch_and_bound_align(inst.g1, inst.g2, 4, opt).score;

  // Relabel g1 by a fixed permutation; the achievable score set is identical.
  std::vector<int> perm = {3, 5, 0, 2, 4, 1};
  WeightedGraph shuffled(6, WeightKind::Real);
  for (int u = 1; u < 6; ++u)
    for (int v = 0; v < u; ++v) shuffled.set_weight(perm[u], perm[v], inst.g1.weight(u, v));
  CHECK(branch_and_bound_align(shuffled, inst.g2, 4, opt).score == base);
}

TEST_CASE("search beats random injections and the planted truth") {
  PlantedInstance inst = sample_instance({12, 5, 0.0, 0.9, ModelKind::GaussianWigner}, 808);
  AlignOptions opt;
  opt.score = ScoreKind::Product;
  AlignmentResult res = branch_and_bound_align(inst.g1, inst.g2, 5, opt);

  CHECK(res.score >= similarity_score(inst.g1, inst.g2, inst.truth, ScoreKind::Product));
  Rng rng(808);
  for (int rep = 0; rep < 10000; ++rep) {
    InjectiveMapping pi = random_mapping(12, 5, rng);
    CHECK(similarity_score(inst.g1, inst.g2, pi, ScoreKind::Product) <= res.score);
  }
}

TEST_CASE("penalized alignment tracks the per-size optima") {
  PlantedInstance inst = sample_instance({5, 3, 0.3, 0.8, ModelKind::ErdosRenyi}, 99);
  AlignOptions opt;
  for (double lambda : {0.0, 0.05, 0.5}) {
    AlignmentResult res = penalized_align(inst.g1, inst.g2, lambda, 5, opt);
    double res_obj =
        res.score - lambda * static_cast<double>(res.mapping.size()) * res.mapping.size();
    double best_obj = 0.0;
    int best_m = 0;
    bool have = false;
    for (int m = 0; m <= 5; ++m) {
      double s = branch_and_bound_align(inst.g1, inst.g2, m, opt).score;
      double obj = s - lambda * static_cast<double>(m) * m;
      if (!have || obj > best_obj) {
        best_obj = obj;
        best_m = m;
        have = true;
      }
    }
    CHECK(res_obj == best_obj);
    // Ties go to the smaller size, which the scan above reproduces by
    // requiring a strict improvement to move on.
    CHECK(res.mapping.size() == best_m);
  }
}

TEST_CASE("penalized alignment collapses under a heavy penalty") {
  PlantedInstance inst = sample_instance({5, 3, 0.3, 0.8, ModelKind::ErdosRenyi}, 99);
  AlignOptions opt;
  AlignmentResult res = penalized_align(inst.g1, inst.g2, 1e9, 5, opt);
  CHECK(res.mapping.size() == 0);
  CHECK(res.score == 0.0);

  // Squared differences never score above zero, so even unpenalized the empty
  // mapping wins ties at size zero.
  AlignOptions sq;
  sq.score = ScoreKind::NegHalfSquaredDiff;
  res = penalized_align(inst.g1, inst.g2, 0.0, 5, sq);
  CHECK(res.mapping.size() == 0);

  CHECK_THROWS_AS(penalized_align(inst.g1, inst.g2, -0.1, 5, opt), Error);
  double bad = std::nan("");
  CHECK_THROWS_AS(penalized_align(inst.g1, inst.g2, bad, 5, opt), Error);
  CHECK_THROWS_AS(penalized_align(inst.g1, inst.g2, 0.0, 6, opt), Error);
}

TEST_CASE("recovered overlap improves with the planted size") {
  // More planted vertices mean quadratically more signal edges. With the
  // seeds pinned this is a deterministic regression check on the trend, not
  // a statistical assertion.
  auto mean_overlap = [](int m) {
    double acc = 0.0;
    int trials = 100;
    for (int t = 0; t < trials; ++t) {
      PlantedInstance inst =
          sample_instance({6, m, 0.4, 0.9, ModelKind::ErdosRenyi}, mix_seed(4100 + m, t));
      AlignOptions opt;
      AlignmentResult res = branch_and_bound_align(inst.g1, inst.g2, m, opt);
      acc += overlap(inst.truth, res.mapping);
    }
    return acc / trials;
  };
  double at2 = mean_overlap(2);
  double at5 = mean_overlap(5);
  CHECK(at5 > at2 + 0.05);
}
