#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "../src/common.hpp"
#include "../src/instance_json.hpp"
#include "../src/model.hpp"

using namespace palign;

namespace {

ModelParams er_params(int n, int m, double p, double rho) {
  ModelParams mp;
  mp.n = n;
  mp.m = m;
  mp.p = p;
  mp.rho = rho;
  mp.model = ModelKind::ErdosRenyi;
  return mp;
}

ModelParams gauss_params(int n, int m, double rho) {
  ModelParams mp;
  mp.n = n;
  mp.m = m;
  mp.rho = rho;
  mp.model = ModelKind::GaussianWigner;
  return mp;
}

}  // namespace

TEST_CASE("correlated bernoulli pmf worked examples") {
  BernoulliPairPmf a = correlated_bernoulli_pmf(0.5, 0.0);
  CHECK(a.p00 == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(a.p01 == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(a.p10 == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(a.p11 == doctest::Approx(0.25).epsilon(1e-14));

  BernoulliPairPmf b = correlated_bernoulli_pmf(0.5, 1.0);
  CHECK(b.p00 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(b.p01 == 0.0);
  CHECK(b.p10 == 0.0);
  CHECK(b.p11 == doctest::Approx(0.5).epsilon(1e-14));

  BernoulliPairPmf c = correlated_bernoulli_pmf(0.3, 0.5);
  CHECK(c.p00 == doctest::Approx(0.595).epsilon(1e-14));
  CHECK(c.p01 == doctest::Approx(0.105).epsilon(1e-14));
  CHECK(c.p10 == doctest::Approx(0.105).epsilon(1e-14));
  CHECK(c.p11 == doctest::Approx(0.195).epsilon(1e-14));
}

TEST_CASE("pmf cells sum to one with Bernoulli(p) marginals") {
  for (double p : {0.05, 0.2, 0.35, 0.5})
    for (double rho : {0.0, 0.1, 0.5, 0.9, 1.0}) {
      BernoulliPairPmf f = correlated_bernoulli_pmf(p, rho);
      CHECK(f.p00 + f.p01 + f.p10 + f.p11 == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(f.p10 + f.p11 == doctest::Approx(p).epsilon(1e-13));  // first marginal
      CHECK(f.p01 + f.p11 == doctest::Approx(p).epsilon(1e-13));  // second marginal
      CHECK(f.p00 >= 0.0);
      CHECK(f.p01 >= 0.0);
      CHECK(f.p10 >= 0.0);
      CHECK(f.p11 >= 0.0);
    }
}

TEST_CASE("pmf rejects out-of-range parameters") {
  CHECK_THROWS_AS(correlated_bernoulli_pmf(0.0, 0.5), Error);
  CHECK_THROWS_AS(correlated_bernoulli_pmf(1.0, 0.5), Error);
  CHECK_THROWS_AS(correlated_bernoulli_pmf(0.3, -0.1), Error);
  CHECK_THROWS_AS(correlated_bernoulli_pmf(0.3, 1.1), Error);
}

TEST_CASE("sample_truth is uniform over the 72 injections of S_{4,2}") {
  Rng rng(2024);
  std::map<std::vector<int>, long> counts;
  const long draws = 72000;
  for (long i = 0; i < draws; ++i) {
    InjectiveMapping pi = sample_truth(4, 2, rng);
    pi.validate();
    REQUIRE(pi.size() == 2);
    std::vector<int> key;
    for (auto [s, t] : pi.pairs) {
      key.push_back(s);
      key.push_back(t);
    }
    ++counts[key];
  }
  // C(4,2)^2 * 2! = 72 distinct mappings; expected 1000 per cell, sd ~ 31.
  CHECK(counts.size() == 72);
  for (auto& [key, c] : counts) {
    CHECK(c > 1000 - 160);
    CHECK(c < 1000 + 160);
  }
}

TEST_CASE("sample_truth edge cases") {
  Rng rng(7);
  InjectiveMapping empty = sample_truth(5, 0, rng);
  CHECK(empty.size() == 0);
  InjectiveMapping full = sample_truth(3, 3, rng);
  CHECK(full.size() == 3);
  CHECK_THROWS_AS(sample_truth(3, 4, rng), Error);
}

TEST_CASE("er sampler hits the joint matched-pair frequencies") {
  // One large instance gives C(400,2) matched pairs at once.
  ModelParams mp = er_params(400, 400, 0.3, 0.5);
  PlantedInstance inst = sample_instance(mp, 99);
  long n11 = 0, n10 = 0, n01 = 0, total = 0;
  for (int u = 1; u < 400; ++u)
    for (int v = 0; v < u; ++v) {
      int a = inst.g1.weight(u, v) > 0.5 ? 1 : 0;
      int tu = inst.truth.target_of(u), tv = inst.truth.target_of(v);
      int b = inst.g2.weight(std::max(tu, tv), std::min(tu, tv)) > 0.5 ? 1 : 0;
      n11 += a & b;
      n10 += a & !b;
      n01 += !a & b;
      ++total;
    }
  double f11 = double(n11) / total;
  // 79800 pairs: sd of the (1,1) frequency is sqrt(.195*.805/79800) ~ 0.0014
  CHECK(std::fabs(f11 - 0.195) < 3 * 0.0014);
  CHECK(std::fabs(double(n10) / total - 0.105) < 3 * 0.0011);
  CHECK(std::fabs(double(n01) / total - 0.105) < 3 * 0.0011);
}

TEST_CASE("er sampler at rho=1 copies matched edges") {
  ModelParams mp = er_params(60, 60, 0.5, 1.0);
  PlantedInstance inst = sample_instance(mp, 5);
  for (int u = 1; u < 60; ++u)
    for (int v = 0; v < u; ++v) {
      int tu = inst.truth.target_of(u), tv = inst.truth.target_of(v);
      REQUIRE(inst.g1.weight(u, v) ==
              inst.g2.weight(std::max(tu, tv), std::min(tu, tv)));
    }
}

TEST_CASE("er sampler at rho=0 decorrelates matched edges") {
  ModelParams mp = er_params(450, 450, 0.4, 0.0);
  PlantedInstance inst = sample_instance(mp, 31);
  double sab = 0, sa = 0, sb = 0, saa = 0, sbb = 0;
  long total = 0;
  for (int u = 1; u < 450; ++u)
    for (int v = 0; v < u; ++v) {
      double a = inst.g1.weight(u, v);
      int tu = inst.truth.target_of(u), tv = inst.truth.target_of(v);
      double b = inst.g2.weight(std::max(tu, tv), std::min(tu, tv));
      sab += a * b;
      sa += a;
      sb += b;
      saa += a * a;
      sbb += b * b;
      ++total;
    }
  double corr = (sab / total - (sa / total) * (sb / total)) /
                std::sqrt((saa / total - sq(sa / total)) * (sbb / total - sq(sb / total)));
  CHECK(std::fabs(corr) < 3.0 / std::sqrt(double(total)));
}

TEST_CASE("gaussian sampler correlation and marginals") {
  ModelParams mp = gauss_params(400, 400, 0.6);
  PlantedInstance inst = sample_instance(mp, 12);
  double sab = 0, saa = 0, sbb = 0;
  long total = 0;
  for (int u = 1; u < 400; ++u)
    for (int v = 0; v < u; ++v) {
      double a = inst.g1.weight(u, v);
      int tu = inst.truth.target_of(u), tv = inst.truth.target_of(v);
      double b = inst.g2.weight(std::max(tu, tv), std::min(tu, tv));
      sab += a * b;
      saa += a * a;
      sbb += b * b;
      ++total;
    }
  CHECK(std::fabs(sab / total - 0.6) < 0.01);  // sd ~ sqrt((1+rho^2)/N) ~ 0.004
  CHECK(std::fabs(saa / total - 1.0) < 0.02);
  CHECK(std::fabs(sbb / total - 1.0) < 0.02);
}

TEST_CASE("gaussian sampler at rho=1 plants an identical subgraph") {
  ModelParams mp = gauss_params(30, 20, 1.0);
  PlantedInstance inst = sample_instance(mp, 3);
  std::vector<int> dom;
  for (auto [s, t] : inst.truth.pairs) dom.push_back(s);
  for (std::size_t j = 1; j < dom.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      int u = dom[i], v = dom[j];
      int tu = inst.truth.target_of(u), tv = inst.truth.target_of(v);
      REQUIRE(inst.g1.weight(std::max(u, v), std::min(u, v)) ==
              inst.g2.weight(std::max(tu, tv), std::min(tu, tv)));
    }
}

TEST_CASE("instances are reproducible from their seed") {
  ModelParams mp = er_params(25, 10, 0.3, 0.7);
  PlantedInstance a = sample_instance(mp, 4242);
  PlantedInstance b = sample_instance(mp, 4242);
  CHECK(a.truth == b.truth);
  CHECK(a.g1.raw() == b.g1.raw());
  CHECK(a.g2.raw() == b.g2.raw());
  PlantedInstance c = sample_instance(mp, 4243);
  CHECK(a.g1.raw() != c.g1.raw());
}

TEST_CASE("weighted graph storage is symmetric with zero diagonal") {
  WeightedGraph g(5, WeightKind::Real);
  g.set_weight(3, 1, -2.5);
  CHECK(g.weight(3, 1) == -2.5);
  CHECK(g.weight(1, 3) == -2.5);
  CHECK(g.weight(2, 2) == 0.0);
  CHECK(WeightedGraph::tri_index(1, 0) == 0);
  CHECK(WeightedGraph::tri_index(4, 2) == 8);
  CHECK_THROWS_AS(g.set_weight(2, 2, 1.0), Error);
  CHECK_THROWS_AS(g.weight(5, 0), Error);
}

TEST_CASE("mapping validation catches duplicates and disorder") {
  InjectiveMapping ok;
  ok.pairs = {{0, 3}, {2, 1}};
  ok.validate();
  CHECK(ok.target_of(0) == 3);
  CHECK(ok.target_of(1) == -1);

  InjectiveMapping dup_target;
  dup_target.pairs = {{0, 3}, {2, 3}};
  CHECK_THROWS_AS(dup_target.validate(), Error);

  InjectiveMapping unsorted;
  unsorted.pairs = {{2, 1}, {0, 3}};
  CHECK_THROWS_AS(unsorted.validate(), Error);
  unsorted.canonicalize();
  unsorted.validate();
  CHECK(unsorted.pairs.front().first == 0);
}

TEST_CASE("lex_less orders canonical pair lists") {
  InjectiveMapping a, b;
  a.pairs = {{0, 0}, {1, 1}};
  b.pairs = {{0, 0}, {1, 2}};
  CHECK(lex_less(a, b));
  CHECK(!lex_less(b, a));
  CHECK(!lex_less(a, a));
}

TEST_CASE("validation split: sampling-level vs standing assumptions") {
  // Boundary correlations sample fine but sit outside the standing regime.
  ModelParams boundary = er_params(10, 4, 0.3, 1.0);
  boundary.validate_for_sampling();
  CHECK_THROWS_AS(boundary.validate_standing(), Error);

  ModelParams dense = er_params(10, 4, 0.8, 0.5);
  dense.validate_for_sampling();  // p in (0,1) is samplable
  CHECK_THROWS_AS(dense.validate_standing(), Error);  // but p > 1/2 is not standing

  ModelParams bad_m = er_params(4, 6, 0.3, 0.5);
  CHECK_THROWS_AS(bad_m.validate_for_sampling(), Error);

  ModelParams gauss = gauss_params(10, 4, 1.0);
  gauss.validate_for_sampling();
  gauss.validate_standing();  // Gaussian standing admits rho = 1
  ModelParams gauss0 = gauss_params(10, 4, 0.0);
  gauss0.validate_for_sampling();
  CHECK_THROWS_AS(gauss0.validate_standing(), Error);
}

TEST_CASE("model names round-trip") {
  CHECK(parse_model("er") == ModelKind::ErdosRenyi);
  CHECK(parse_model("gaussian") == ModelKind::GaussianWigner);
  CHECK(parse_model(model_name(ModelKind::ErdosRenyi)) == ModelKind::ErdosRenyi);
  CHECK_THROWS_AS(parse_model("wigner-ish"), Error);
}

TEST_CASE("instance json round-trips exactly") {
  ModelParams mp = gauss_params(9, 4, 0.8);
  PlantedInstance inst = sample_instance(mp, 321);
  std::string text = instance_to_json(inst);
  PlantedInstance back = instance_from_json(text);
  CHECK(back.params.n == 9);
  CHECK(back.params.m == 4);
  CHECK(back.params.rho == 0.8);
  CHECK(back.params.model == ModelKind::GaussianWigner);
  CHECK(back.seed == 321);
  CHECK(back.truth == inst.truth);
  CHECK(back.g1.raw() == inst.g1.raw());  // 17-digit emission is lossless
  CHECK(back.g2.raw() == inst.g2.raw());

  CHECK_THROWS_AS(instance_from_json("{"), Error);
  CHECK_THROWS_AS(instance_from_json("{\"model\":\"er\"}"), Error);
}
