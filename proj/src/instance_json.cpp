#include "instance_json.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "common.hpp"

namespace palign {

namespace {

using nlohmann::json;

// Writers are hand-rolled so reals are always printed with 17 significant
// digits; readers go through nlohmann::json.

void append_weights(std::string& out, const WeightedGraph& g) {
  out += '[';
  const auto& w = g.raw();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    if (g.kind() == WeightKind::Binary)
      out += w[i] != 0.0 ? '1' : '0';
    else
      out += fmt17(w[i]);
  }
  out += ']';
}

void append_pairs(std::string& out, const InjectiveMapping& pi) {
  out += '[';
  for (int i = 0; i < pi.size(); ++i) {
    if (i) out += ',';
    out += strprintf("[%d,%d]", pi.pairs[i].first, pi.pairs[i].second);
  }
  out += ']';
}

WeightedGraph weights_from_json(const json& arr, int n, WeightKind kind) {
  const std::size_t want = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (!arr.is_array() || arr.size() != want)
    fail(ErrorCode::InvalidArgument,
         strprintf("weight list must have n(n-1)/2 = %zu entries, got %zu", want,
                   arr.is_array() ? arr.size() : 0));
  WeightedGraph g(n, kind);
  auto& w = g.raw();
  for (std::size_t i = 0; i < want; ++i) {
    double x = arr[i].get<double>();
    if (kind == WeightKind::Binary && x != 0.0 && x != 1.0)
      fail(ErrorCode::InvalidArgument, "binary instance weights must be 0 or 1");
    w[i] = x;
  }
  return g;
}

InjectiveMapping pairs_from_json(const json& arr) {
  if (!arr.is_array()) fail(ErrorCode::InvalidArgument, "mapping must be a list of [source,target]");
  InjectiveMapping pi;
  pi.pairs.reserve(arr.size());
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2)
      fail(ErrorCode::InvalidArgument, "mapping entries must be [source,target] pairs");
    pi.pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  pi.canonicalize();
  pi.validate();
  return pi;
}

}  // namespace

std::string instance_to_json(const PlantedInstance& inst) {
  std::string out;
  out.reserve(64 + inst.g1.raw().size() * 8);
  out += "{\"model\":\"";
  out += model_name(inst.params.model);
  out += strprintf("\",\"n\":%d,\"m\":%d", inst.params.n, inst.params.m);
  if (inst.params.model == ModelKind::ErdosRenyi) out += ",\"p\":" + fmt17(inst.params.p);
  out += ",\"rho\":" + fmt17(inst.params.rho);
  out += strprintf(",\"seed\":%llu", static_cast<unsigned long long>(inst.seed));
  out += ",\"truth\":";
  append_pairs(out, inst.truth);
  out += ",\"g1\":";
  append_weights(out, inst.g1);
  out += ",\"g2\":";
  append_weights(out, inst.g2);
  out += '}';
  return out;
}

PlantedInstance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("instance JSON parse error: ") + e.what());
  }
  PlantedInstance inst;
  try {
    inst.params.model = parse_model(j.at("model").get<std::string>());
    inst.params.n = j.at("n").get<int>();
    inst.params.m = j.at("m").get<int>();
    inst.params.rho = j.at("rho").get<double>();
    if (inst.params.model == ModelKind::ErdosRenyi) inst.params.p = j.at("p").get<double>();
    inst.seed = j.value("seed", std::uint64_t{0});
    inst.truth = pairs_from_json(j.at("truth"));
    const WeightKind kind =
        inst.params.model == ModelKind::ErdosRenyi ? WeightKind::Binary : WeightKind::Real;
    inst.g1 = weights_from_json(j.at("g1"), inst.params.n, kind);
    inst.g2 = weights_from_json(j.at("g2"), inst.params.n, kind);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("malformed instance JSON: ") + e.what());
  }
  inst.params.validate_for_sampling();
  if (inst.truth.size() != inst.params.m)
    fail(ErrorCode::InvalidArgument, "truth length disagrees with m");
  for (auto& pr : inst.truth.pairs)
    if (pr.first >= inst.params.n || pr.second >= inst.params.n)
      fail(ErrorCode::InvalidArgument, "truth vertex id out of range");
  return inst;
}

std::string mapping_to_json(const InjectiveMapping& pi) {
  std::string out;
  append_pairs(out, pi);
  return out;
}

InjectiveMapping mapping_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("mapping JSON parse error: ") + e.what());
  }
  // Accept either the bare pair list or {"mapping": [...]}.
  if (j.is_object() && j.contains("mapping")) return pairs_from_json(j["mapping"]);
  return pairs_from_json(j);
}

std::string alignment_result_json(const InjectiveMapping& mapping, double score,
                                  std::optional<double> overlap, std::optional<int> distance) {
  std::string out = "{\"mapping\":";
  append_pairs(out, mapping);
  out += ",\"score\":" + fmt17(score);
  out += ",\"overlap\":";
  out += overlap ? fmt17(*overlap) : "null";
  out += ",\"distance\":";
  out += distance ? strprintf("%d", *distance) : "null";
  out += '}';
  return out;
}

}  // namespace palign
