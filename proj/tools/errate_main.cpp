// errate command-line front end: load a code, enumerate the smallest
// failing error patterns, calibrate, estimate FER/BER curves, and run
// Monte Carlo ground truth. Talks to the library through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "errate/errate.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitBudget = 4;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void die(int code, const std::string& message) { throw CliError{code, message}; }

[[noreturn]] void die_api(const std::string& context) {
  die(kExitValidation, context + ": " + errate_last_error());
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  errate_string_free(s);
  return out;
}

struct GraphHandle {
  errate_graph* g = nullptr;
  GraphHandle() = default;
  GraphHandle(const GraphHandle&) = delete;
  ~GraphHandle() { errate_graph_free(g); }
};

struct ConfigHandle {
  errate_decoder_config* cfg = nullptr;
  ConfigHandle() = default;
  ConfigHandle(const ConfigHandle&) = delete;
  ~ConfigHandle() { errate_config_free(cfg); }
};

void load_graph(const std::string& path, GraphHandle& out) {
  if (errate_graph_from_alist_file(path.c_str(), &out.g) != ERRATE_OK) die_api("loading " + path);
  if (errate_graph_has_4cycles(out.g))
    std::cerr << "warning: " << path << " contains 4-cycles; loaded anyway\n";
}

std::string graph_hash(const GraphHandle& g) {
  char* h = nullptr;
  if (errate_graph_hash(g.g, &h) != ERRATE_OK) die_api("hashing code");
  return take_string(h);
}

// Shared decoder flags.
struct DecoderFlags {
  std::string decoder = "ga";
  std::string omega = "0";  // integer or @file with per-node orders
  int max_iterations = 100;
  bool no_early_stop = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--decoder", decoder, "Decoding algorithm: ga or mb")
        ->check(CLI::IsMember({"ga", "mb"}));
    cmd->add_option("--omega", omega, "MB order: an integer or @file with one order per variable node");
    cmd->add_option("--max-iterations", max_iterations, "Iteration cap per decode")->capture_default_str();
    cmd->add_flag("--no-early-stop", no_early_stop, "Keep iterating after all checks are satisfied");
  }

  void build(const GraphHandle& g, ConfigHandle& out) const {
    const int early = no_early_stop ? 0 : 1;
    if (decoder == "ga") {
      if (errate_config_ga(g.g, max_iterations, early, &out.cfg) != ERRATE_OK) die_api("decoder config");
      return;
    }
    if (!omega.empty() && omega[0] == '@') {
      std::ifstream in(omega.substr(1));
      if (!in) die(kExitValidation, "cannot open omega file " + omega.substr(1));
      std::vector<int32_t> orders;
      int32_t v;
      while (in >> v) orders.push_back(v);
      if (errate_config_mb_per_node(g.g, orders.data(), orders.size(), max_iterations, early, &out.cfg) !=
          ERRATE_OK)
        die_api("decoder config");
      return;
    }
    int order = 0;
    try {
      order = std::stoi(omega);
    } catch (...) {
      die(kExitUsage, "--omega expects an integer or @file");
    }
    if (errate_config_mb(g.g, order, max_iterations, early, &out.cfg) != ERRATE_OK) die_api("decoder config");
  }

  json to_json(const GraphHandle& g) const {
    ConfigHandle cfg;
    build(g, cfg);
    char* s = nullptr;
    if (errate_config_json(cfg.cfg, &s) != ERRATE_OK) die_api("decoder config");
    return json::parse(take_string(s));
  }
};

int default_workers() {
  if (const char* env = std::getenv("ERRATE_WORKERS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

// "a:b:points" -> log-spaced grid; or a comma list of values.
std::vector<double> parse_eps_spec(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double a = 0, b = 0;
    int points = 0;
    char colon1 = 0, colon2 = 0;
    std::istringstream ss(spec);
    if (!(ss >> a >> colon1 >> b >> colon2 >> points) || colon1 != ':' || colon2 != ':')
      die(kExitUsage, "--eps grid must look like start:stop:points");
    if (!(a > 0.0) || !(b > 0.0) || points < 1) die(kExitValidation, "eps grid endpoints must be positive");
    if (points == 1) return {a};
    for (int k = 0; k < points; ++k)
      out.push_back(a * std::pow(b / a, static_cast<double>(k) / static_cast<double>(points - 1)));
    return out;
  }
  std::istringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) die(kExitUsage, "--eps expects values");
  return out;
}

std::vector<int32_t> parse_int_list(const std::string& spec) {
  std::vector<int32_t> out;
  std::istringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(static_cast<int32_t>(std::stol(tok)));
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) die(kExitValidation, "cannot write " + path);
  out << text;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(kExitValidation, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    die(kExitValidation, path + ": " + e.what());
  }
}

// Run manifest: binds every stage artifact to one code hash. Mixing
// artifacts from different codes fails closed.
void update_manifest(const std::string& path, const std::string& hash, const json& decoder,
                     const std::string& stage, const std::vector<std::string>& outputs) {
  if (path.empty()) return;
  json m;
  std::ifstream in(path);
  if (in) {
    try {
      m = json::parse(in);
    } catch (const std::exception& e) {
      die(kExitValidation, path + ": " + e.what());
    }
    if (m.value("code_hash", hash) != hash)
      die(kExitValidation, "manifest " + path + " belongs to a different code (hash mismatch)");
  }
  m["format"] = "errate-manifest-v1";
  m["tool_version"] = errate_version();
  m["code_hash"] = hash;
  if (!decoder.is_null()) m["decoder"] = decoder;
  char stamp[32];
  std::time_t now = std::time(nullptr);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  json entry;
  entry["outputs"] = outputs;
  entry["written_at"] = stamp;
  m["stages"][stage] = entry;
  write_file(path, m.dump(2) + "\n");
}

void check_artifact_hash(const json& artifact, const std::string& path, const std::string& hash) {
  const std::string artifact_hash = artifact.value("code_hash", "");
  if (artifact_hash != hash)
    die(kExitValidation,
        path + " was produced for a different code (hash " + artifact_hash + ", expected " + hash + ")");
}

/* ------------------------------------------------------------------ */

struct CommonArgs {
  std::string code;
  std::string manifest;
  DecoderFlags decoder;
  int workers = default_workers();
};

int cmd_info(const std::string& code, const std::string& out_path) {
  GraphHandle g;
  load_graph(code, g);
  char* dd = nullptr;
  if (errate_graph_degree_distributions_json(g.g, &dd) != ERRATE_OK) die_api("degree distributions");
  json info{
      {"n", errate_graph_variable_count(g.g)},
      {"m", errate_graph_check_count(g.g)},
      {"edges", errate_graph_edge_count(g.g)},
      {"code_hash", graph_hash(g)},
      {"has_4cycles", errate_graph_has_4cycles(g.g) != 0},
      {"degree_distributions", json::parse(take_string(dd))},
  };
  const std::string text = info.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return kExitOk;
}

int cmd_enumerate(const CommonArgs& common, int max_weight, const std::string& out_path,
                  const std::string& checkpoint, const std::string& resume, uint64_t checkpoint_interval,
                  uint64_t pattern_budget, uint64_t store_cap) {
  GraphHandle g;
  load_graph(common.code, g);
  ConfigHandle cfg;
  common.decoder.build(g, cfg);

  errate_enum_options opts = {};
  opts.max_weight = max_weight;
  opts.workers = common.workers;
  opts.store_cap = store_cap;
  std::string ckpt_path = checkpoint;
  if (ckpt_path.empty() && !resume.empty()) ckpt_path = resume;
  opts.checkpoint_path = ckpt_path.empty() ? nullptr : ckpt_path.c_str();
  opts.checkpoint_interval = checkpoint_interval;
  opts.pattern_budget = pattern_budget;
  opts.resume_checkpoint_path = resume.empty() ? nullptr : resume.c_str();

  errate_enum_result* result = nullptr;
  if (errate_enumerate(g.g, cfg.cfg, &opts, &result) != ERRATE_OK) die_api("enumerate");
  std::unique_ptr<errate_enum_result, decltype(&errate_enum_result_free)> guard(result,
                                                                                errate_enum_result_free);
  char* doc = nullptr;
  if (errate_enum_result_json(result, &doc) != ERRATE_OK) die_api("enumerate");
  write_file(out_path, take_string(doc));
  update_manifest(common.manifest, graph_hash(g), common.decoder.to_json(g), "enumerate", {out_path});

  const int32_t status = errate_enum_result_status(result);
  if (status == ERRATE_ENUM_FOUND) {
    std::cerr << "J = " << errate_enum_result_j_min(result) << ", |E_J| = " << errate_enum_result_e_j_count(result)
              << "\n";
    return kExitOk;
  }
  if (status == ERRATE_ENUM_NO_FAILURE) {
    std::cerr << "no failures up to max-weight " << max_weight << "\n";
    return kExitBudget;
  }
  std::cerr << "pattern budget exhausted; resume from " << (ckpt_path.empty() ? "(no checkpoint)" : ckpt_path)
            << "\n";
  return kExitBudget;
}

int cmd_estimate(const std::string& from, const std::string& manifest, int n0, double m_avg,
                 const std::string& n0_from, const std::string& m_from, const std::string& m_take,
                 const std::string& eps_spec, const std::string& n_list_spec, const std::string& out_path) {
  json enum_doc = read_json_file(from);
  if (enum_doc.value("format", "") != "errate-enumeration-v1")
    die(kExitValidation, from + " is not an enumeration result");
  if (enum_doc["j_min"].is_null())
    die(kExitValidation, from + " holds no J (status " + enum_doc.value("status", "?") + ")");
  const int n = enum_doc.at("n").get<int>();
  const int j = enum_doc.at("j_min").get<int>();
  const uint64_t e_j = enum_doc.at("e_j_count").get<uint64_t>();
  const std::string hash = enum_doc.value("code_hash", "");

  if (!n0_from.empty()) {
    json calib = read_json_file(n0_from);
    check_artifact_hash(calib, n0_from, hash);
    n0 = calib.at("n0").get<int>();
  }
  if (!m_from.empty()) {
    json m_doc = read_json_file(m_from);
    check_artifact_hash(m_doc, m_from, hash);
    const int m_n0 = m_doc.value("n0", n0);
    if (m_n0 != n0)
      die(kExitValidation, m_from + " measured M at weight " + std::to_string(m_n0) +
                               " but the effective N0 is " + std::to_string(n0));
    // The weight-N0 term of the BER formula scales the approximate
    // failure count, so the matching M is the failures-only mean.
    m_avg = m_take == "all" ? m_doc.at("m_avg").get<double>()
                            : m_doc.at("m_avg_failures_only").get<double>();
  }
  if (n0 < j) die(kExitValidation, "n0 must be at least J = " + std::to_string(j));

  auto eps = parse_eps_spec(eps_spec);
  for (double e : eps)
    if (!(e > 0.0) || e >= 1.0) die(kExitValidation, "eps grid points must lie in (0, 1)");

  std::vector<int> caps;
  if (n_list_spec.empty()) {
    caps.push_back(n0);
  } else {
    std::istringstream ss(n_list_spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok == "n")
        caps.push_back(n);
      else
        caps.push_back(std::stoi(tok));
    }
  }

  for (int cap : caps) {
    char* doc = nullptr;
    if (errate_rate_points_csv(n, j, e_j, n0, m_avg, cap, eps.data(), eps.size(), &doc) != ERRATE_OK)
      die_api("estimate");
    std::string csv = take_string(doc);
    std::string path = out_path;
    if (caps.size() > 1) {
      auto dot = path.rfind('.');
      std::string suffix = "_N" + std::to_string(cap);
      if (dot == std::string::npos)
        path += suffix;
      else
        path.insert(dot, suffix);
    }
    write_file(path, csv);
  }
  update_manifest(manifest, hash, json(), "estimate", {out_path});
  return kExitOk;
}

int cmd_simulate(const CommonArgs& common, const std::string& eps_spec, uint64_t min_frame_errors,
                 uint64_t max_frames, uint64_t seed, const std::string& out_path, const std::string& hist_path) {
  GraphHandle g;
  load_graph(common.code, g);
  ConfigHandle cfg;
  common.decoder.build(g, cfg);
  auto eps = parse_eps_spec(eps_spec);

  std::vector<errate_sim_result*> results;
  auto free_results = [&] {
    for (auto* r : results) errate_sim_result_free(r);
  };
  json hists = json::array();
  for (size_t i = 0; i < eps.size(); ++i) {
    errate_sim_options opts = {};
    opts.epsilon = eps[i];
    opts.min_frame_errors = min_frame_errors;
    opts.max_frames = max_frames;
    opts.seed = seed + i;
    opts.workers = common.workers;
    errate_sim_result* r = nullptr;
    if (errate_simulate(g.g, cfg.cfg, &opts, &r) != ERRATE_OK) {
      free_results();
      die_api("simulate");
    }
    results.push_back(r);
    if (errate_sim_result_frame_errors(r) == 0)
      std::cerr << "note: eps=" << eps[i] << " saw zero frame errors in " << errate_sim_result_frames(r)
                << " frames; fer_ci_high is the one-sided bound\n";
    if (!hist_path.empty()) {
      char* doc = nullptr;
      if (errate_sim_result_json(r, &doc) == ERRATE_OK) hists.push_back(json::parse(take_string(doc)));
    }
  }
  char* csv = nullptr;
  if (errate_sim_results_csv(results.data(), results.size(), &csv) != ERRATE_OK) {
    free_results();
    die_api("simulate");
  }
  write_file(out_path, take_string(csv));
  free_results();
  std::vector<std::string> outputs = {out_path};
  if (!hist_path.empty()) {
    write_file(hist_path, hists.dump(2) + "\n");
    outputs.push_back(hist_path);
  }
  update_manifest(common.manifest, graph_hash(g), common.decoder.to_json(g), "simulate", outputs);
  return kExitOk;
}

int cmd_calibrate_n0(const CommonArgs& common, const std::string& from, const std::string& eps_list,
                     uint64_t min_frame_errors, uint64_t per_point_budget, uint64_t seed,
                     const std::string& out_path) {
  GraphHandle g;
  load_graph(common.code, g);
  ConfigHandle cfg;
  common.decoder.build(g, cfg);

  json enum_doc = read_json_file(from);
  check_artifact_hash(enum_doc, from, graph_hash(g));
  if (enum_doc["j_min"].is_null()) die(kExitValidation, from + " holds no J");
  const int j = enum_doc.at("j_min").get<int>();
  const uint64_t e_j = enum_doc.at("e_j_count").get<uint64_t>();

  auto eps = parse_eps_spec(eps_list);
  int32_t n0 = 0;
  char* doc = nullptr;
  if (errate_calibrate_n0(g.g, cfg.cfg, j, e_j, eps.data(), eps.size(), min_frame_errors, per_point_budget,
                          seed, common.workers, &n0, &doc) != ERRATE_OK)
    die_api("calibrate-n0");
  write_file(out_path, take_string(doc));
  update_manifest(common.manifest, graph_hash(g), common.decoder.to_json(g), "calibrate_n0", {out_path});
  std::cerr << "N0 = " << n0 << "\n";
  return kExitOk;
}

int cmd_estimate_m(const CommonArgs& common, int n0, uint64_t trials, uint64_t seed,
                   const std::string& out_path) {
  GraphHandle g;
  load_graph(common.code, g);
  ConfigHandle cfg;
  common.decoder.build(g, cfg);
  double m_avg = 0, m_fail = 0;
  char* doc = nullptr;
  if (errate_estimate_m(g.g, cfg.cfg, n0, trials, seed, common.workers, &m_avg, &m_fail, &doc) != ERRATE_OK)
    die_api("estimate-m");
  write_file(out_path, take_string(doc));
  update_manifest(common.manifest, graph_hash(g), common.decoder.to_json(g), "estimate_m", {out_path});
  std::cerr << "M = " << m_avg << " (failures-only mean " << m_fail << ")\n";
  return kExitOk;
}

int cmd_check_ts(const CommonArgs& common, const std::string& set_spec, const std::string& out_path) {
  GraphHandle g;
  load_graph(common.code, g);
  ConfigHandle cfg;
  common.decoder.build(g, cfg);
  auto set = parse_int_list(set_spec);

  int holds = 0;
  char* doc = nullptr;
  if (errate_check_trapping_condition_json(g.g, cfg.cfg, set.data(), set.size(), &holds, &doc) != ERRATE_OK)
    die_api("check-ts");
  json out;
  out["report"] = json::parse(take_string(doc));
  out["code_hash"] = graph_hash(g);
  if (holds) {
    int certified = 0;
    if (errate_certify_trapping_set(g.g, cfg.cfg, set.data(), set.size(), &certified) != ERRATE_OK)
      die_api("check-ts");
    out["certified"] = certified != 0;
  } else {
    out["certified"] = nullptr;
  }
  const std::string text = out.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  update_manifest(common.manifest, graph_hash(g), common.decoder.to_json(g), "check_ts",
                  out_path.empty() ? std::vector<std::string>{} : std::vector<std::string>{out_path});
  return holds ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"error-rate estimation for LDPC codes under hard-decision decoding on the BSC"};
  app.require_subcommand(1);
  app.set_version_flag("--version", errate_version());

  // info
  auto* info = app.add_subcommand("info", "Code structure report (degrees, distributions, hash)");
  std::string info_code, info_out;
  info->add_option("--code", info_code, "alist file")->required();
  info->add_option("--out", info_out, "Write JSON here instead of stdout");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Find J and |E_J| by exhaustive enumeration");
  CommonArgs en_common;
  int en_max_weight = 4;
  std::string en_out, en_checkpoint, en_resume;
  uint64_t en_interval = 10'000'000, en_budget = 0, en_store_cap = 1'000'000;
  enumerate->add_option("--code", en_common.code, "alist file")->required();
  en_common.decoder.attach(enumerate);
  enumerate->add_option("--max-weight", en_max_weight, "Highest initial error weight to scan")
      ->capture_default_str();
  enumerate->add_option("--workers", en_common.workers, "Worker threads (default $ERRATE_WORKERS or 1)");
  enumerate->add_option("--out", en_out, "Enumeration result JSON")->required();
  enumerate->add_option("--checkpoint", en_checkpoint, "Checkpoint file (atomic replace)");
  enumerate->add_option("--resume", en_resume, "Resume from this checkpoint");
  enumerate->add_option("--checkpoint-interval", en_interval, "Patterns between checkpoint writes")
      ->capture_default_str();
  enumerate->add_option("--pattern-budget", en_budget, "Stop cleanly after this many patterns (0 = unlimited)");
  enumerate->add_option("--store-cap", en_store_cap, "Failing patterns stored in the result")
      ->capture_default_str();
  enumerate->add_option("--manifest", en_common.manifest, "Run manifest to update");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Closed-form FER/BER curves from an enumeration result");
  std::string es_from, es_eps, es_nlist, es_out, es_manifest, es_n0_from, es_m_from, es_m_take = "failures";
  int es_n0 = 0;
  double es_m = 0.0;
  estimate->add_option("--from", es_from, "Enumeration result JSON")->required();
  estimate->add_option("--n0", es_n0, "Weight threshold N0");
  estimate->add_option("--m-avg", es_m, "Average residual bit errors at weight N0");
  estimate->add_option("--n0-from", es_n0_from, "Take N0 from a calibration JSON (hash-checked)");
  estimate->add_option("--m-from", es_m_from, "Take M from an estimate-m JSON (hash-checked)");
  estimate->add_option("--m-take", es_m_take, "Which mean to take with --m-from: failures or all")
      ->check(CLI::IsMember({"failures", "all"}))
      ->capture_default_str();
  estimate->add_option("--eps", es_eps, "Crossover grid start:stop:points (log) or comma list")->required();
  estimate->add_option("--n-list", es_nlist, "Comma list of N values for FER_L/FER_U columns; 'n' = block length");
  estimate->add_option("--out", es_out, "Output CSV (suffixed _N<val> when several N)")->required();
  estimate->add_option("--manifest", es_manifest, "Run manifest to update");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo FER/BER on the BSC");
  CommonArgs si_common;
  std::string si_eps, si_out, si_hist;
  uint64_t si_min_errors = 100, si_max_frames = 100'000'000, si_seed = 1;
  simulate->add_option("--code", si_common.code, "alist file")->required();
  si_common.decoder.attach(simulate);
  simulate->add_option("--eps", si_eps, "Crossover values: comma list or start:stop:points (log)")->required();
  simulate->add_option("--min-frame-errors", si_min_errors, "Stop after this many frame errors")
      ->capture_default_str();
  simulate->add_option("--max-frames", si_max_frames, "Frame cap per point")->capture_default_str();
  simulate->add_option("--seed", si_seed, "Reproducibility seed")->capture_default_str();
  simulate->add_option("--workers", si_common.workers, "Worker threads (default $ERRATE_WORKERS or 1)");
  simulate->add_option("--out", si_out, "Output CSV")->required();
  simulate->add_option("--hist", si_hist, "Also write per-point weight histograms (JSON)");
  simulate->add_option("--manifest", si_common.manifest, "Run manifest to update");

  // calibrate-n0
  auto* calibrate = app.add_subcommand("calibrate-n0", "Pick N0 by matching FER_U(N0) to simulated FER");
  CommonArgs ca_common;
  std::string ca_from, ca_eps, ca_out;
  uint64_t ca_min_errors = 100, ca_budget = 1'000'000, ca_seed = 1;
  calibrate->add_option("--code", ca_common.code, "alist file")->required();
  ca_common.decoder.attach(calibrate);
  calibrate->add_option("--from", ca_from, "Enumeration result JSON")->required();
  calibrate->add_option("--eps-points", ca_eps, "Comma list of crossover probabilities (target FER 0.01-0.1)")
      ->required();
  calibrate->add_option("--min-frame-errors", ca_min_errors, "Frame errors per point")->capture_default_str();
  calibrate->add_option("--per-point-budget", ca_budget, "Frame cap per point")->capture_default_str();
  calibrate->add_option("--seed", ca_seed, "Reproducibility seed")->capture_default_str();
  calibrate->add_option("--workers", ca_common.workers, "Worker threads");
  calibrate->add_option("--out", ca_out, "Calibration report JSON")->required();
  calibrate->add_option("--manifest", ca_common.manifest, "Run manifest to update");

  // estimate-m
  auto* estm = app.add_subcommand("estimate-m", "Estimate M: mean residual bit errors at weight N0");
  CommonArgs em_common;
  int em_n0 = 0;
  uint64_t em_trials = 100'000, em_seed = 1;
  std::string em_out;
  estm->add_option("--code", em_common.code, "alist file")->required();
  em_common.decoder.attach(estm);
  estm->add_option("--n0", em_n0, "Weight of the sampled error patterns")->required();
  estm->add_option("--trials", em_trials, "Random patterns to decode")->capture_default_str();
  estm->add_option("--seed", em_seed, "Reproducibility seed")->capture_default_str();
  estm->add_option("--workers", em_common.workers, "Worker threads");
  estm->add_option("--out", em_out, "Estimate JSON")->required();
  estm->add_option("--manifest", em_common.manifest, "Run manifest to update");

  // check-ts
  auto* check = app.add_subcommand("check-ts", "Check and certify a trapping set via its structural condition");
  CommonArgs ct_common;
  std::string ct_set, ct_out;
  check->add_option("--code", ct_common.code, "alist file")->required();
  ct_common.decoder.attach(check);
  check->add_option("--set", ct_set, "Comma list of 0-based variable indices")->required();
  check->add_option("--out", ct_out, "Write report JSON here instead of stdout");
  check->add_option("--manifest", ct_common.manifest, "Run manifest to update");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*info) return cmd_info(info_code, info_out);
    if (*enumerate)
      return cmd_enumerate(en_common, en_max_weight, en_out, en_checkpoint, en_resume, en_interval, en_budget,
                           en_store_cap);
    if (*estimate)
      return cmd_estimate(es_from, es_manifest, es_n0, es_m, es_n0_from, es_m_from, es_m_take, es_eps, es_nlist,
                          es_out);
    if (*simulate)
      return cmd_simulate(si_common, si_eps, si_min_errors, si_max_frames, si_seed, si_out, si_hist);
    if (*calibrate)
      return cmd_calibrate_n0(ca_common, ca_from, ca_eps, ca_min_errors, ca_budget, ca_seed, ca_out);
    if (*estm) return cmd_estimate_m(em_common, em_n0, em_trials, em_seed, em_out);
    if (*check) return cmd_check_ts(ct_common, ct_set, ct_out);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
