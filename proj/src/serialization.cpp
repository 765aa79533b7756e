#include "serialization.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace errate {

using nlohmann::json;

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

json decoder_config_to_json(const DecoderConfig& cfg) {
  return json{
      {"algorithm", cfg.algorithm == DecoderConfig::Algorithm::gallager_a ? "ga" : "mb"},
      {"orders", cfg.orders},
      {"max_iterations", cfg.max_iterations},
      {"early_stop", cfg.early_stop},
  };
}

DecoderConfig decoder_config_from_json(const json& j) {
  DecoderConfig cfg;
  const std::string alg = j.at("algorithm").get<std::string>();
  if (alg == "ga")
    cfg.algorithm = DecoderConfig::Algorithm::gallager_a;
  else if (alg == "mb")
    cfg.algorithm = DecoderConfig::Algorithm::majority_based;
  else
    throw std::invalid_argument("decoder config: unknown algorithm '" + alg + "'");
  cfg.orders = j.at("orders").get<std::vector<int>>();
  cfg.max_iterations = j.at("max_iterations").get<int>();
  cfg.early_stop = j.at("early_stop").get<bool>();
  return cfg;
}

json failure_class_to_json(const FailureClass& fc) {
  return json{
      {"kind", to_string(fc.kind)},
      {"period", fc.period},
      {"transition_length", fc.transition_length},
      {"steady_state_support", fc.steady_state_support},
      {"initial_error_weight", fc.initial_error_weight},
      {"final_error_weight", fc.final_error_weight},
  };
}

json trapping_report_to_json(const TrappingSetReport& report) {
  json j{
      {"set", report.set},
      {"odd_checks", report.odd_checks},
      {"condition_holds", report.condition_holds},
  };
  if (report.max_violating_node)
    j["max_violating_node"] = *report.max_violating_node;
  else
    j["max_violating_node"] = nullptr;
  return j;
}

json degree_distribution_to_json(const DegreeDistribution& d) {
  json lambda = json::object(), rho = json::object();
  for (auto [deg, frac] : d.lambda_coeffs) lambda[std::to_string(deg)] = frac;
  for (auto [deg, frac] : d.rho_coeffs) rho[std::to_string(deg)] = frac;
  return json{{"lambda", lambda}, {"rho", rho}};
}

namespace {

json tallies_to_json(const std::map<FailureKind, uint64_t>& tallies) {
  json out = json::object();
  out["fixed"] = 0;
  out["oscillatory"] = 0;
  out["random_like"] = 0;
  for (const auto& [kind, count] : tallies) out[to_string(kind)] = count;
  return out;
}

std::map<FailureKind, uint64_t> tallies_from_json(const json& j) {
  std::map<FailureKind, uint64_t> out;
  out[FailureKind::fixed] = j.value("fixed", uint64_t{0});
  out[FailureKind::oscillatory] = j.value("oscillatory", uint64_t{0});
  out[FailureKind::random_like] = j.value("random_like", uint64_t{0});
  return out;
}

json counts_to_json(const std::map<int, uint64_t>& counts) {
  json out = json::object();
  for (const auto& [k, v] : counts) out[std::to_string(k)] = v;
  return out;
}

std::map<int, uint64_t> counts_from_json(const json& j) {
  std::map<int, uint64_t> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[std::stoi(it.key())] = it.value().get<uint64_t>();
  return out;
}

const char* status_name(EnumerationResult::Status s) {
  switch (s) {
    case EnumerationResult::Status::found: return "found";
    case EnumerationResult::Status::no_failure: return "no_failure";
    case EnumerationResult::Status::interrupted: return "interrupted";
  }
  return "?";
}

}  // namespace

json enumeration_result_to_json(const EnumerationResult& result, const TannerGraph& g, const DecoderConfig& cfg,
                                int max_weight) {
  json j{
      {"format", "errate-enumeration-v1"},
      {"tool_version", kToolVersion},
      {"code_hash", code_hash(g)},
      {"n", g.variable_count()},
      {"m", g.check_count()},
      {"decoder", decoder_config_to_json(cfg)},
      {"max_weight", max_weight},
      {"status", status_name(result.status)},
      {"e_j_count", result.e_j_count},
      {"tested_per_weight", counts_to_json(result.tested_per_weight)},
      {"failures_by_class", tallies_to_json(result.failures_by_class)},
      {"failing_patterns", result.failing_patterns},
      {"failing_patterns_truncated", result.failing_patterns_truncated},
      {"wall_time_seconds", result.wall_seconds},
  };
  if (result.j_min)
    j["j_min"] = *result.j_min;
  else
    j["j_min"] = nullptr;
  return j;
}

json checkpoint_to_json(const EnumerationCheckpoint& ck) {
  return json{
      {"format", "errate-checkpoint-v1"},
      {"code_hash", ck.code_hash},
      {"decoder", json::parse(ck.decoder_json)},
      {"max_weight", ck.max_weight},
      {"weight", ck.weight},
      {"next_rank", ck.next_rank},
      {"tested_per_weight", counts_to_json(ck.tested_per_weight)},
      {"failures_by_class", tallies_to_json(ck.failures_by_class)},
      {"failing_patterns", ck.failing_patterns},
      {"failing_patterns_truncated", ck.failing_patterns_truncated},
      {"elapsed_seconds", ck.elapsed_seconds},
  };
}

EnumerationCheckpoint checkpoint_from_json(const json& j) {
  if (j.value("format", "") != "errate-checkpoint-v1")
    throw std::invalid_argument("checkpoint: unrecognized format");
  EnumerationCheckpoint ck;
  ck.code_hash = j.at("code_hash").get<std::string>();
  ck.decoder_json = j.at("decoder").dump();
  ck.max_weight = j.at("max_weight").get<int>();
  ck.weight = j.at("weight").get<int>();
  ck.next_rank = j.at("next_rank").get<uint64_t>();
  ck.tested_per_weight = counts_from_json(j.at("tested_per_weight"));
  ck.failures_by_class = tallies_from_json(j.at("failures_by_class"));
  ck.failing_patterns = j.at("failing_patterns").get<std::vector<ErrorPattern>>();
  ck.failing_patterns_truncated = j.at("failing_patterns_truncated").get<bool>();
  ck.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  return ck;
}

void save_checkpoint_file(const std::string& path, const EnumerationCheckpoint& ck) {
  const std::string tmp = path + ".tmp";
  write_text_file(tmp, checkpoint_to_json(ck).dump(2) + "\n");
  std::filesystem::rename(tmp, path);
}

EnumerationCheckpoint load_checkpoint_file(const std::string& path) {
  return checkpoint_from_json(json::parse(read_text_file(path)));
}

json sim_result_to_json(const SimResult& r) {
  json hist = json::object();
  for (const auto& [w, bin] : r.weight_histogram)
    hist[std::to_string(w)] = json{{"frames", bin.frames}, {"failures", bin.failures}};
  json j{
      {"epsilon", r.epsilon},
      {"frames", r.frames},
      {"frame_errors", r.frame_errors},
      {"bit_errors", r.bit_errors},
      {"fer", r.fer},
      {"ber", r.ber},
      {"fer_ci_low", r.fer_ci_low},
      {"fer_ci_high", r.fer_ci_high},
      {"weight_histogram", hist},
  };
  if (r.frame_errors == 0)
    j["note"] = "no frame errors observed; fer_ci_high is the one-sided 95% upper bound";
  return j;
}

json m_estimate_to_json(const MEstimate& m, const std::string& hash, uint64_t seed) {
  return json{
      {"format", "errate-m-estimate-v1"},
      {"tool_version", kToolVersion},
      {"code_hash", hash},
      {"n0", m.n0},
      {"trials", m.trials},
      {"seed", seed},
      {"m_avg", m.mean_all_trials},
      {"m_avg_failures_only", m.mean_failures_only},
      {"failure_fraction", m.failure_fraction},
  };
}

json calibration_to_json(const CalibrationOutcome& c, const std::string& hash, uint64_t seed) {
  json points = json::array();
  for (const auto& p : c.points)
    points.push_back(json{{"epsilon", p.epsilon},
                          {"frames", p.frames},
                          {"frame_errors", p.frame_errors},
                          {"fer", p.fer},
                          {"used", p.used}});
  json objective = json::array();
  for (const auto& [cap, value] : c.objective) objective.push_back(json{{"n", cap}, {"value", value}});
  return json{
      {"format", "errate-calibration-v1"},
      {"tool_version", kToolVersion},
      {"code_hash", hash},
      {"seed", seed},
      {"n0", c.n0},
      {"points", points},
      {"objective", objective},
  };
}

std::string rate_points_csv(const std::vector<RatePoint>& points) {
  std::ostringstream out;
  out << "epsilon,p_j,fer_lower,fer_upper,ber_estimate\n";
  for (const auto& p : points)
    out << format_double(p.epsilon) << ',' << format_double(p.p_j) << ',' << format_double(p.fer_lower) << ','
        << format_double(p.fer_upper) << ',' << format_double(p.ber) << '\n';
  return out.str();
}

std::string sim_results_csv(const std::vector<SimResult>& results) {
  std::ostringstream out;
  out << "epsilon,frames,frame_errors,fer,fer_ci_low,fer_ci_high,ber\n";
  for (const auto& r : results)
    out << format_double(r.epsilon) << ',' << r.frames << ',' << r.frame_errors << ',' << format_double(r.fer)
        << ',' << format_double(r.fer_ci_low) << ',' << format_double(r.fer_ci_high) << ','
        << format_double(r.ber) << '\n';
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace errate
