#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "common.hpp"
#include "rng.hpp"
#include "thresholds.hpp"

namespace palign {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void config_fail(const std::string& msg) {
  fail(ErrorCode::InvalidArgument, "sweep config: " + msg);
}

const json* find_key(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double as_number(const json& v, const char* key) {
  if (!v.is_number()) config_fail(strprintf("\"%s\" must be a number", key));
  return v.get<double>();
}

long as_integer(const json& v, const char* key) {
  if (!v.is_number_integer()) config_fail(strprintf("\"%s\" must be an integer", key));
  return v.get<long>();
}

std::vector<int> as_int_list(const json& v, const char* key) {
  if (!v.is_array()) config_fail(strprintf("\"%s\" must be an array of integers", key));
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer())
      config_fail(strprintf("\"%s\" must contain only integers", key));
    out.push_back(x.get<int>());
  }
  return out;
}

std::vector<double> as_num_list(const json& v, const char* key) {
  if (!v.is_array()) config_fail(strprintf("\"%s\" must be an array of numbers", key));
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) config_fail(strprintf("\"%s\" must contain only numbers", key));
    out.push_back(x.get<double>());
  }
  return out;
}

// m over the recovery threshold the model admits; NaN when the point sits
// outside the threshold's domain (e.g. rho = 1), 0 when the threshold is
// infinite.
double threshold_ratio_for(const ModelParams& mp, double delta) {
  try {
    double thr = mp.model == ModelKind::ErdosRenyi
                     ? partial_threshold_er(double(mp.n), mp.p, mp.rho, delta).value
                     : gaussian_threshold(double(mp.n), mp.rho);
    return double(mp.m) / thr;
  } catch (const Error&) {
    return kNan;
  }
}

}  // namespace

ScoreKind default_score(ModelKind model, double rho) {
  if (model == ModelKind::ErdosRenyi) return ScoreKind::Product;
  return rho <= 1.0 - std::exp(-12.0) ? ScoreKind::Product : ScoreKind::NegHalfSquaredDiff;
}

SweepConfig sweep_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    config_fail(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) config_fail("top level must be an object");

  static const std::set<std::string> allowed = {"model", "score", "n",      "m",
                                                "p",     "rho",   "trials", "delta",
                                                "seed",  "budget", "jobs",  "estimator",
                                                "lambda", "m_max"};
  for (const auto& item : j.items())
    if (!allowed.count(item.key())) config_fail("unknown key \"" + item.key() + "\"");

  SweepConfig cfg;
  const json* v = find_key(j, "model");
  if (!v) config_fail("missing required key \"model\"");
  if (!v->is_string()) config_fail("\"model\" must be a string");
  cfg.model = parse_model(v->get<std::string>());

  if ((v = find_key(j, "score"))) {
    if (!v->is_string()) config_fail("\"score\" must be a string");
    cfg.score = parse_score(v->get<std::string>());
  }

  for (const char* key : {"n", "m", "rho"})
    if (!find_key(j, key)) config_fail(strprintf("missing required key \"%s\"", key));
  cfg.n = as_int_list(j["n"], "n");
  cfg.m = as_int_list(j["m"], "m");
  cfg.rho = as_num_list(j["rho"], "rho");

  if ((v = find_key(j, "p"))) cfg.p = as_num_list(*v, "p");
  if (cfg.model == ModelKind::ErdosRenyi) {
    if (!find_key(j, "p")) config_fail("the Erdos-Renyi model needs an edge density list \"p\"");
  } else if (!cfg.p.empty()) {
    config_fail("the Gaussian model takes no edge density list \"p\"");
  }

  if ((v = find_key(j, "trials"))) {
    cfg.trials = as_integer(*v, "trials");
    if (cfg.trials < 1) config_fail("\"trials\" must be at least 1");
  }
  if ((v = find_key(j, "delta"))) {
    cfg.delta = as_number(*v, "delta");
    if (!(cfg.delta > 0.0 && cfg.delta <= 1.0))
      config_fail("\"delta\" must lie in (0, 1]");
  }
  if ((v = find_key(j, "seed"))) {
    if (!v->is_number_integer()) config_fail("\"seed\" must be an integer");
    cfg.master_seed = v->get<std::uint64_t>();
  }
  if ((v = find_key(j, "budget"))) {
    cfg.budget = as_number(*v, "budget");
    if (!(cfg.budget > 0.0)) config_fail("\"budget\" must be positive");
  }
  if ((v = find_key(j, "jobs"))) {
    long jobs = as_integer(*v, "jobs");
    if (jobs < 1) config_fail("\"jobs\" must be at least 1");
    cfg.jobs = int(jobs);
  }
  if ((v = find_key(j, "estimator"))) {
    if (!v->is_string()) config_fail("\"estimator\" must be a string");
    std::string name = v->get<std::string>();
    if (name == "penalized")
      cfg.use_penalized = true;
    else if (name != "bnb")
      config_fail("\"estimator\" must be \"bnb\" or \"penalized\"");
  }
  if ((v = find_key(j, "lambda"))) {
    cfg.lambda = as_number(*v, "lambda");
    if (!(cfg.lambda >= 0.0)) config_fail("\"lambda\" must be nonnegative");
  }
  if ((v = find_key(j, "m_max"))) {
    long cap = as_integer(*v, "m_max");
    if (cap < 0) config_fail("\"m_max\" must be nonnegative");
    cfg.m_max = int(cap);
  }
  return cfg;
}

std::vector<GridPoint> expand_grid(const SweepConfig& cfg) {
  const std::vector<double>& ps =
      cfg.model == ModelKind::ErdosRenyi ? cfg.p : std::vector<double>{0.0};
  std::vector<GridPoint> points;
  long id = 0;
  for (int n : cfg.n)
    for (int m : cfg.m)
      for (double p : ps)
        for (double rho : cfg.rho) {
          GridPoint pt;
          pt.point_id = id++;
          pt.params = ModelParams{n, m, p, rho, cfg.model};
          pt.params.validate_for_sampling();
          if (m < 1)
            config_fail("sweep points need m >= 1 so recovery rates are defined");
          pt.score = cfg.score ? *cfg.score : default_score(cfg.model, rho);
          if (pt.score == ScoreKind::MleGauss && !(rho > 0.0))
            config_fail("the MLE score needs rho > 0 at every grid point");
          pt.delta = cfg.delta;
          points.push_back(std::move(pt));
        }
  return points;
}

std::uint64_t point_hash(const ModelParams& params) {
  // Hash the distribution parameters by value, not the grid position, so a
  // point's trial seeds survive re-gridding.
  std::uint64_t h = params.model == ModelKind::ErdosRenyi ? 0x4552u : 0x4757u;
  h = mix_seed(h, std::uint64_t(params.n));
  h = mix_seed(h, std::uint64_t(params.m));
  h = mix_seed(h, std::bit_cast<std::uint64_t>(params.p));
  h = mix_seed(h, std::bit_cast<std::uint64_t>(params.rho));
  return h;
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t point_hash_value,
                                long trial_index) {
  return mix_seed(master_seed, point_hash_value, std::uint64_t(trial_index));
}

TrialRecord run_trial(const GridPoint& point, std::uint64_t trial_seed,
                      const TrialOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  PlantedInstance inst = sample_instance(point.params, trial_seed);

  AlignOptions ao;
  ao.score = point.score;
  if (point.score == ScoreKind::MleGauss) ao.rho_for_mle = point.params.rho;
  ao.budget = opt.budget;

  AlignmentResult res;
  if (opt.use_penalized) {
    int cap = opt.m_max ? *opt.m_max : point.params.n;
    res = penalized_align(inst.g1, inst.g2, opt.lambda, cap, ao);
  } else {
    res = branch_and_bound_align(inst.g1, inst.g2, point.params.m, ao);
  }

  TrialRecord rec;
  rec.point_id = point.point_id;
  rec.overlap = overlap(inst.truth, res.mapping);
  // overlap = agreements / |truth| with agreements integral, so this rounding
  // is exact; it also covers penalized runs where |pi| != |truth|.
  long agreements = std::lround(rec.overlap * double(inst.truth.size()));
  rec.distance = long(inst.truth.size()) - agreements;
  rec.exact_success = rec.overlap == 1.0;
  rec.partial_success = rec.overlap >= point.delta;
  rec.score = res.score;
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::pair<double, double> wilson_interval(long successes, long trials, double z) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "Wilson interval needs at least one trial");
  if (successes < 0 || successes > trials)
    fail(ErrorCode::InvalidArgument, "successes must lie in [0, trials]");
  if (!(z > 0.0) || !std::isfinite(z))
    fail(ErrorCode::InvalidArgument, "Wilson z must be a positive finite quantile");
  double n = double(trials);
  double ph = double(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (ph + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

// 95% two-sided normal quantile, frozen so intervals never drift with a
// library's erf implementation.
constexpr double kWilsonZ95 = 1.959963984540054;

struct SweepState {
  const std::vector<GridPoint>* points = nullptr;
  const TrialOptions* opt = nullptr;
  const SweepConfig* cfg = nullptr;
  std::vector<TrialRecord>* records = nullptr;
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mu;
  std::exception_ptr first_error;
};

void sweep_worker(SweepState& st) {
  size_t total = st.records->size();
  long trials = st.cfg->trials;
  for (;;) {
    size_t i = st.next.fetch_add(1);
    if (i >= total || st.failed.load()) return;
    const GridPoint& pt = (*st.points)[i / size_t(trials)];
    long tr = long(i % size_t(trials));
    try {
      std::uint64_t seed = derive_trial_seed(st.cfg->master_seed, point_hash(pt.params), tr);
      TrialRecord rec = run_trial(pt, seed, *st.opt);
      rec.trial_index = tr;
      (*st.records)[i] = rec;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ResourceLimit) {
        TrialRecord rec;
        rec.point_id = pt.point_id;
        rec.trial_index = tr;
        rec.skipped = true;
        (*st.records)[i] = rec;
      } else {
        std::lock_guard<std::mutex> lk(st.error_mu);
        if (!st.first_error) st.first_error = std::current_exception();
        st.failed.store(true);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(st.error_mu);
      if (!st.first_error) st.first_error = std::current_exception();
      st.failed.store(true);
    }
  }
}

}  // namespace

std::vector<SummaryRow> sweep(const SweepConfig& cfg) {
  std::vector<GridPoint> points = expand_grid(cfg);
  TrialOptions opt{cfg.budget, cfg.use_penalized, cfg.lambda, cfg.m_max};

  // Every (point, trial) result lands in its own slot, and aggregation walks
  // the slots in index order afterwards. Worker count therefore cannot change
  // a single output bit.
  std::vector<TrialRecord> records(points.size() * size_t(cfg.trials));
  SweepState st;
  st.points = &points;
  st.opt = &opt;
  st.cfg = &cfg;
  st.records = &records;

  int workers = std::max(1, cfg.jobs);
  if (workers == 1 || records.size() <= 1) {
    sweep_worker(st);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(size_t(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back([&st] { sweep_worker(st); });
    for (auto& t : pool) t.join();
  }
  if (st.first_error) std::rethrow_exception(st.first_error);

  std::vector<SummaryRow> rows;
  rows.reserve(points.size());
  for (const GridPoint& pt : points) {
    SummaryRow row;
    row.point_id = pt.point_id;
    row.model = pt.params.model;
    row.score = pt.score;
    row.n = pt.params.n;
    row.m = pt.params.m;
    row.p = pt.params.p;
    row.rho = pt.params.rho;
    row.delta = pt.delta;
    row.trials = cfg.trials;

    double overlap_sum = 0.0;
    for (long tr = 0; tr < cfg.trials; ++tr) {
      const TrialRecord& rec = records[size_t(pt.point_id) * size_t(cfg.trials) + size_t(tr)];
      if (rec.skipped) {
        ++row.skipped;
        continue;
      }
      row.partial_successes += rec.partial_success ? 1 : 0;
      row.exact_successes += rec.exact_success ? 1 : 0;
      overlap_sum += rec.overlap;
    }
    long completed = cfg.trials - row.skipped;
    if (completed > 0) {
      row.partial_rate = double(row.partial_successes) / double(completed);
      row.exact_rate = double(row.exact_successes) / double(completed);
      std::tie(row.partial_lo, row.partial_hi) =
          wilson_interval(row.partial_successes, completed, kWilsonZ95);
      std::tie(row.exact_lo, row.exact_hi) =
          wilson_interval(row.exact_successes, completed, kWilsonZ95);
      row.mean_overlap = overlap_sum / double(completed);
    } else {
      row.partial_rate = row.partial_lo = row.partial_hi = kNan;
      row.exact_rate = row.exact_lo = row.exact_hi = kNan;
      row.mean_overlap = kNan;
    }
    row.threshold_ratio = threshold_ratio_for(pt.params, pt.delta);
    rows.push_back(row);
  }
  return rows;
}

namespace {

const char kCsvHeader[] =
    "point_id,model,score,n,m,p,rho,delta,trials,skipped,partial_successes,partial_rate,"
    "partial_lo,partial_hi,exact_successes,exact_rate,exact_lo,exact_hi,mean_overlap,"
    "threshold_ratio";

std::string emit_csv(const std::vector<SummaryRow>& rows) {
  std::string out(kCsvHeader);
  out += "\r\n";  // RFC 4180 line endings throughout
  for (const SummaryRow& r : rows) {
    out += strprintf("%ld,%s,%s,%d,%d,", r.point_id, model_name(r.model), score_name(r.score),
                     r.n, r.m);
    out += fmt17(r.p) + "," + fmt17(r.rho) + "," + fmt17(r.delta) + ",";
    out += strprintf("%ld,%ld,%ld,", r.trials, r.skipped, r.partial_successes);
    out += fmt17(r.partial_rate) + "," + fmt17(r.partial_lo) + "," + fmt17(r.partial_hi) + ",";
    out += strprintf("%ld,", r.exact_successes);
    out += fmt17(r.exact_rate) + "," + fmt17(r.exact_lo) + "," + fmt17(r.exact_hi) + ",";
    out += fmt17(r.mean_overlap) + "," + fmt17(r.threshold_ratio);
    out += "\r\n";
  }
  return out;
}

void put_number(ordered_json& obj, const char* key, double v) {
  if (std::isnan(v))
    obj[key] = nullptr;
  else
    obj[key] = v;
}

std::string emit_json(const std::vector<SummaryRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const SummaryRow& r : rows) {
    ordered_json o;
    o["point_id"] = r.point_id;
    o["model"] = model_name(r.model);
    o["score"] = score_name(r.score);
    o["n"] = r.n;
    o["m"] = r.m;
    o["p"] = r.p;
    o["rho"] = r.rho;
    o["delta"] = r.delta;
    o["trials"] = r.trials;
    o["skipped"] = r.skipped;
    o["partial_successes"] = r.partial_successes;
    put_number(o, "partial_rate", r.partial_rate);
    put_number(o, "partial_lo", r.partial_lo);
    put_number(o, "partial_hi", r.partial_hi);
    o["exact_successes"] = r.exact_successes;
    put_number(o, "exact_rate", r.exact_rate);
    put_number(o, "exact_lo", r.exact_lo);
    put_number(o, "exact_hi", r.exact_hi);
    put_number(o, "mean_overlap", r.mean_overlap);
    put_number(o, "threshold_ratio", r.threshold_ratio);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string heat_color(double rate) {
  if (std::isnan(rate)) return "#9e9e9e";
  rate = std::clamp(rate, 0.0, 1.0);
  // Diverging blue -> white -> red, pivoting at rate 1/2.
  auto lerp = [](int a, int b, double t) { return int(std::lround(a + (b - a) * t)); };
  int r, g, b;
  if (rate < 0.5) {
    double t = rate / 0.5;
    r = lerp(49, 247, t);
    g = lerp(54, 247, t);
    b = lerp(149, 247, t);
  } else {
    double t = (rate - 0.5) / 0.5;
    r = lerp(247, 165, t);
    g = lerp(247, 0, t);
    b = lerp(247, 38, t);
  }
  return strprintf("#%02x%02x%02x", r, g, b);
}

std::string emit_svg(const std::vector<SummaryRow>& rows) {
  if (rows.empty())
    fail(ErrorCode::InvalidArgument, "the SVG scatter needs at least one summary row");

  std::vector<double> ms, rhos;
  for (const SummaryRow& r : rows) {
    ms.push_back(double(r.m));
    rhos.push_back(r.rho);
  }
  auto [m_lo, m_hi] = std::minmax_element(ms.begin(), ms.end());
  auto [r_lo, r_hi] = std::minmax_element(rhos.begin(), rhos.end());
  double mspan = *m_hi - *m_lo, rspan = *r_hi - *r_lo;

  const double width = 640, height = 480, margin = 64;
  auto xpos = [&](double m) {
    if (mspan == 0.0) return width / 2.0;
    return margin + (m - *m_lo) / mspan * (width - 2 * margin);
  };
  auto ypos = [&](double rho) {
    if (rspan == 0.0) return height / 2.0;
    // rho grows upward
    return height - margin - (rho - *r_lo) / rspan * (height - 2 * margin);
  };

  std::string svg = strprintf(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
      "viewBox=\"0 0 %g %g\">\n",
      width, height, width, height);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += strprintf(
      "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", margin,
      height - margin, width - margin, height - margin);
  svg += strprintf(
      "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", margin, margin,
      margin, height - margin);
  svg += strprintf(
      "<text x=\"%g\" y=\"%g\" font-size=\"14\" text-anchor=\"middle\">m</text>\n", width / 2,
      height - margin / 3);
  svg += strprintf(
      "<text x=\"%g\" y=\"%g\" font-size=\"14\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 %g %g)\">rho</text>\n",
      margin / 3, height / 2, margin / 3, height / 2);

  std::set<double> m_ticks(ms.begin(), ms.end()), rho_ticks(rhos.begin(), rhos.end());
  for (double m : m_ticks)
    svg += strprintf(
        "<text x=\"%g\" y=\"%g\" font-size=\"11\" text-anchor=\"middle\">%g</text>\n", xpos(m),
        height - margin + 18, m);
  for (double rho : rho_ticks)
    svg += strprintf(
        "<text x=\"%g\" y=\"%g\" font-size=\"11\" text-anchor=\"end\">%g</text>\n", margin - 8,
        ypos(rho) + 4, rho);

  for (const SummaryRow& r : rows) {
    svg += strprintf(
        "<circle cx=\"%g\" cy=\"%g\" r=\"9\" fill=\"%s\" stroke=\"black\" "
        "stroke-width=\"0.5\"><title>m=%d rho=%g exact_rate=%s "
        "partial_rate=%s</title></circle>\n",
        xpos(double(r.m)), ypos(r.rho), heat_color(r.exact_rate).c_str(), r.m, r.rho,
        fmt17(r.exact_rate).c_str(), fmt17(r.partial_rate).c_str());
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

EmitFormat parse_emit_format(const std::string& name) {
  if (name == "csv") return EmitFormat::Csv;
  if (name == "json") return EmitFormat::Json;
  if (name == "svg") return EmitFormat::Svg;
  fail(ErrorCode::InvalidArgument, "unknown output format \"" + name + "\" (csv, json, svg)");
}

std::string emit_summary(const std::vector<SummaryRow>& rows, EmitFormat format) {
  switch (format) {
    case EmitFormat::Csv:
      return emit_csv(rows);
    case EmitFormat::Json:
      return emit_json(rows);
    case EmitFormat::Svg:
      return emit_svg(rows);
  }
  fail(ErrorCode::Internal, "unhandled emit format");
}

std::vector<SummaryRow> summary_rows_from_csv(const std::string& text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    size_t end = nl;
    if (end > pos && text[end - 1] == '\r') --end;
    lines.push_back(text.substr(pos, end - pos));
    pos = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines[0] != kCsvHeader)
    fail(ErrorCode::InvalidArgument, "summary CSV header does not match the emitted schema");

  std::vector<SummaryRow> rows;
  for (size_t li = 1; li < lines.size(); ++li) {
    std::vector<std::string> f;
    std::stringstream ss(lines[li]);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 20)
      fail(ErrorCode::InvalidArgument,
           strprintf("summary CSV row %zu has %zu fields, expected 20", li, f.size()));
    SummaryRow r;
    r.point_id = std::stol(f[0]);
    r.model = parse_model(f[1]);
    r.score = parse_score(f[2]);
    r.n = std::stoi(f[3]);
    r.m = std::stoi(f[4]);
    r.p = std::strtod(f[5].c_str(), nullptr);
    r.rho = std::strtod(f[6].c_str(), nullptr);
    r.delta = std::strtod(f[7].c_str(), nullptr);
    r.trials = std::stol(f[8]);
    r.skipped = std::stol(f[9]);
    r.partial_successes = std::stol(f[10]);
    r.partial_rate = std::strtod(f[11].c_str(), nullptr);
    r.partial_lo = std::strtod(f[12].c_str(), nullptr);
    r.partial_hi = std::strtod(f[13].c_str(), nullptr);
    r.exact_successes = std::stol(f[14]);
    r.exact_rate = std::strtod(f[15].c_str(), nullptr);
    r.exact_lo = std::strtod(f[16].c_str(), nullptr);
    r.exact_hi = std::strtod(f[17].c_str(), nullptr);
    r.mean_overlap = std::strtod(f[18].c_str(), nullptr);
    r.threshold_ratio = std::strtod(f[19].c_str(), nullptr);
    rows.push_back(r);
  }
  return rows;
}

std::string phase_transition_csv(ModelKind model, int n, std::optional<double> p,
                                 const std::vector<double>& rho_list,
                                 const std::vector<int>& m_list, long trials, double delta,
                                 std::uint64_t seed, double budget, int jobs) {
  SweepConfig cfg;
  cfg.model = model;
  cfg.n = {n};
  cfg.m = m_list;
  if (model == ModelKind::ErdosRenyi) {
    if (!p) fail(ErrorCode::InvalidArgument, "the Erdos-Renyi phase experiment needs p");
    cfg.p = {*p};
  } else if (p) {
    fail(ErrorCode::InvalidArgument, "the Gaussian phase experiment takes no p");
  }
  cfg.rho = rho_list;
  cfg.trials = trials;
  cfg.delta = delta;
  cfg.master_seed = seed;
  cfg.budget = budget;
  cfg.jobs = jobs;
  return emit_summary(sweep(cfg), EmitFormat::Csv);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open \"" + path + "\" for writing");
  out.write(content.data(), std::streamsize(content.size()));
  out.flush();
  if (!out) fail(ErrorCode::Io, "write to \"" + path + "\" failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open \"" + path + "\" for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCode::Io, "read from \"" + path + "\" failed");
  return ss.str();
}

}  // namespace palign
