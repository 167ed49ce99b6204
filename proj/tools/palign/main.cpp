// palign: command-line front end over the C API (libpalign).
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
// or I/O error.
#include <CLI11.hpp>
#include <palign.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

int exit_code_for(int rc) {
  switch (rc) {
    case PALIGN_OK:
      return 0;
    case PALIGN_EINVAL:
      return 2;
    case PALIGN_ERESOURCE:
    case PALIGN_EIO:
      return 3;
    case PALIGN_EVERIFY:
      return 1;
    default:
      return 1;
  }
}

int fail_with(int rc) {
  std::cerr << "palign: " << palign_last_error() << "\n";
  return exit_code_for(rc);
}

bool read_input(const std::string& path, std::string& out) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      std::cerr << "palign: cannot open \"" << path << "\" for reading\n";
      return false;
    }
    ss << in.rdbuf();
  }
  out = ss.str();
  return true;
}

int write_output(const std::string& path, std::string content) {
  if (!content.empty() && content.back() != '\n') content += '\n';
  if (path == "-" || path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "palign: cannot open \"" << path << "\" for writing\n";
    return 3;
  }
  out.write(content.data(), std::streamsize(content.size()));
  out.flush();
  if (!out) {
    std::cerr << "palign: write to \"" << path << "\" failed\n";
    return 3;
  }
  return 0;
}

// Budget precedence: --budget flag, then PALIGN_BUDGET, then fallback (the
// config file's value for sweeps, 1e8 elsewhere). Returns false on a
// malformed environment value, which is a usage error.
bool budget_override(bool flag_given, double flag_value, std::optional<double>& out) {
  if (flag_given) {
    out = flag_value;
    return true;
  }
  const char* env = std::getenv("PALIGN_BUDGET");
  if (!env || !*env) {
    out = std::nullopt;
    return true;
  }
  char* end = nullptr;
  double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0)) {
    std::cerr << "palign: PALIGN_BUDGET must be a positive number, got \"" << env << "\"\n";
    return false;
  }
  out = v;
  return true;
}

// Convenience for commands whose only success output is one string.
int emit_and_free(int rc, char* text, const std::string& out_path) {
  if (rc != PALIGN_OK) return fail_with(rc);
  int wrc = write_output(out_path, text);
  palign_free(text);
  return wrc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partially correlated graph alignment: sampling, estimation, experiments"};
  app.set_version_flag("--version", std::string(palign_version()));
  app.require_subcommand(1);

  std::string out_path = "-";
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string format = "csv";
  std::string config_path;
  double budget_flag = 1e8;
  auto* opt_out = app.add_option("--out", out_path, "output path, \"-\" for stdout");
  auto* opt_seed = app.add_option("--seed", seed, "master RNG seed");
  auto* opt_jobs =
      app.add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  auto* opt_format = app.add_option("--format", format, "sweep output format")
                         ->check(CLI::IsMember({"csv", "json", "svg"}));
  auto* opt_config = app.add_option("--config", config_path, "sweep config JSON file");
  auto* opt_budget = app.add_option("--budget", budget_flag, "search budget in nodes/mappings")
                         ->check(CLI::PositiveNumber);
  (void)opt_out;
  (void)opt_format;
  (void)opt_config;

  // sample
  auto* sample = app.add_subcommand("sample", "draw a planted instance and print it as JSON");
  sample->fallthrough();
  std::string s_model;
  int s_n = 0, s_m = 0;
  double s_p = 0.0, s_rho = 0.0;
  sample->add_option("--model", s_model, "er or gaussian")->required();
  sample->add_option("--n", s_n, "ambient vertex count")->required();
  sample->add_option("--m", s_m, "planted subset size")->required();
  sample->add_option("--p", s_p, "ER edge density");
  sample->add_option("--rho", s_rho, "edge correlation")->required();

  // align
  auto* align = app.add_subcommand("align", "maximize the similarity score on an instance");
  align->fallthrough();
  std::string a_in = "-", a_score;
  int a_m = -1;
  double a_lambda = 0.0;
  auto* a_in_opt = align->add_option("--in", a_in, "instance JSON file, \"-\" for stdin");
  auto* a_score_opt = align->add_option("--score", a_score, "product, sqdiff, or mle");
  align->add_option("--m", a_m, "mapping size (default: the instance's planted m)");
  auto* a_penalty_opt = align->add_option(
      "--penalty", a_lambda, "optimize the size too, penalized by lambda |pi|^2");
  (void)a_in_opt;

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run the sweep described by --config");
  sweep_cmd->fallthrough();

  // phase
  auto* phase = app.add_subcommand("phase", "recovery-rate grid over (m, rho) at fixed n");
  phase->fallthrough();
  std::string ph_model;
  int ph_n = 0;
  double ph_p = 0.0, ph_delta = 0.5;
  long ph_trials = 100;
  std::vector<double> ph_rho;
  std::vector<int> ph_m;
  phase->add_option("--model", ph_model, "er or gaussian")->required();
  phase->add_option("--n", ph_n, "ambient vertex count")->required();
  auto* ph_p_opt = phase->add_option("--p", ph_p, "ER edge density");
  phase->add_option("--rho", ph_rho, "correlation grid")->required()->delimiter(',');
  phase->add_option("--m", ph_m, "subset-size grid")->required()->delimiter(',');
  phase->add_option("--trials", ph_trials, "trials per grid point")
      ->check(CLI::PositiveNumber);
  phase->add_option("--delta", ph_delta, "partial-recovery fraction");

  // thresholds
  auto* thresholds = app.add_subcommand("thresholds", "recovery thresholds at one point");
  thresholds->fallthrough();
  std::string th_model;
  double th_n = 0.0, th_p = 0.0, th_rho = 0.0, th_delta = 0.5, th_c0 = 1.0;
  long th_m = 0;
  thresholds->add_option("--model", th_model, "er or gaussian")->required();
  thresholds->add_option("--n", th_n, "ambient vertex count")->required();
  thresholds->add_option("--m", th_m, "planted subset size")->required();
  thresholds->add_option("--p", th_p, "ER edge density");
  thresholds->add_option("--rho", th_rho, "edge correlation")->required();
  thresholds->add_option("--delta", th_delta, "partial-recovery fraction");
  thresholds->add_option("--c0", th_c0, "concentration constant");

  // phase-diagram
  auto* diagram = app.add_subcommand("phase-diagram", "exponent table for p=n^-a1, rho=n^-a2");
  diagram->fallthrough();
  double d_step = 0.05;
  diagram->add_option("--step", d_step, "grid step over (0,1)");

  // verify-cumulants
  auto* vc = app.add_subcommand("verify-cumulants", "closed forms against their oracles");
  vc->fallthrough();
  long vc_samples = 100000;
  vc->add_option("--samples", vc_samples, "Monte Carlo samples per Gaussian point");

  // verify-all
  auto* va = app.add_subcommand("verify-all", "full self-check battery");
  va->fallthrough();
  long va_samples = 100000, va_tail = 100000;
  va->add_option("--samples", va_samples, "Monte Carlo samples per Gaussian point");
  va->add_option("--tail-samples", va_tail, "samples per tail-domination point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::optional<double> budget;
  if (!budget_override(opt_budget->count() > 0, budget_flag, budget)) return 2;
  double budget_or_default = budget.value_or(1e8);

  if (app.got_subcommand(sample)) {
    palign_instance* inst = nullptr;
    int rc = palign_sample_instance(s_model.c_str(), s_n, s_m, s_p, s_rho, seed, &inst);
    if (rc != PALIGN_OK) return fail_with(rc);
    char* json = nullptr;
    rc = palign_instance_to_json(inst, &json);
    palign_instance_free(inst);
    return emit_and_free(rc, json, out_path);
  }

  if (app.got_subcommand(align)) {
    std::string text;
    if (!read_input(a_in, text)) return 3;
    palign_instance* inst = nullptr;
    int rc = palign_instance_from_json(text.c_str(), &inst);
    if (rc != PALIGN_OK) return fail_with(rc);
    char* json = nullptr;
    rc = palign_align(inst, a_score_opt->count() ? a_score.c_str() : nullptr, a_m,
                      budget_or_default, a_penalty_opt->count() > 0 ? 1 : 0, a_lambda, a_m,
                      &json);
    palign_instance_free(inst);
    return emit_and_free(rc, json, out_path);
  }

  if (app.got_subcommand(sweep_cmd)) {
    if (config_path.empty()) {
      std::cerr << "palign: sweep needs --config\n";
      return 2;
    }
    std::string cfg_text;
    if (!read_input(config_path, cfg_text)) return 3;
    char* out = nullptr;
    int rc = palign_sweep_emit(cfg_text.c_str(), format.c_str(), opt_seed->count() ? 1 : 0,
                               seed, opt_jobs->count() ? 1 : 0, jobs, budget ? 1 : 0,
                               budget.value_or(0.0), &out);
    return emit_and_free(rc, out, out_path);
  }

  if (app.got_subcommand(phase)) {
    char* out = nullptr;
    int rc = palign_phase_csv(ph_model.c_str(), ph_n, ph_p_opt->count() ? 1 : 0, ph_p,
                              ph_rho.data(), ph_rho.size(), ph_m.data(), ph_m.size(),
                              ph_trials, ph_delta, seed, budget_or_default, jobs, &out);
    return emit_and_free(rc, out, out_path);
  }

  if (app.got_subcommand(thresholds)) {
    char* out = nullptr;
    int rc = palign_threshold_report_json(th_model.c_str(), th_n, th_m, th_p, th_rho,
                                          th_delta, th_c0, &out);
    return emit_and_free(rc, out, out_path);
  }

  if (app.got_subcommand(diagram)) {
    char* out = nullptr;
    int rc = palign_phase_diagram_csv(d_step, &out);
    return emit_and_free(rc, out, out_path);
  }

  if (app.got_subcommand(vc)) {
    char* out = nullptr;
    int pass = 0;
    int rc = palign_verify_cumulants_csv(seed, vc_samples, &out, &pass);
    if (int code = emit_and_free(rc, out, out_path); code != 0) return code;
    if (!pass) {
      std::cerr << "palign: cumulant verification failed\n";
      return 1;
    }
    return 0;
  }

  if (app.got_subcommand(va)) {
    char* out = nullptr;
    int pass = 0;
    int rc = palign_verify_all_json(seed, va_samples, va_tail, &out, &pass);
    if (int code = emit_and_free(rc, out, out_path); code != 0) return code;
    if (!pass) {
      std::cerr << "palign: verification failed\n";
      return 1;
    }
    return 0;
  }

  std::cerr << "palign: no subcommand selected\n";
  return 2;
}
