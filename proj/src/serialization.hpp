#pragma once

#include <string>

#include <json.hpp>

#include "enumeration.hpp"
#include "estimation.hpp"
#include "failure_analysis.hpp"
#include "simulation.hpp"
#include "tanner_graph.hpp"

namespace errate {

inline constexpr const char* kToolVersion = "0.1.0";

// Shortest representation that parses back to the same double.
std::string format_double(double value);

nlohmann::json decoder_config_to_json(const DecoderConfig& cfg);
DecoderConfig decoder_config_from_json(const nlohmann::json& j);

nlohmann::json failure_class_to_json(const FailureClass& fc);
nlohmann::json trapping_report_to_json(const TrappingSetReport& report);

nlohmann::json degree_distribution_to_json(const DegreeDistribution& d);

nlohmann::json enumeration_result_to_json(const EnumerationResult& result, const TannerGraph& g,
                                          const DecoderConfig& cfg, int max_weight);

nlohmann::json checkpoint_to_json(const EnumerationCheckpoint& ck);
EnumerationCheckpoint checkpoint_from_json(const nlohmann::json& j);

// Single-file atomic replace (write to a temp sibling, then rename).
void save_checkpoint_file(const std::string& path, const EnumerationCheckpoint& ck);
EnumerationCheckpoint load_checkpoint_file(const std::string& path);

nlohmann::json sim_result_to_json(const SimResult& r);
nlohmann::json m_estimate_to_json(const MEstimate& m, const std::string& code_hash, uint64_t seed);
nlohmann::json calibration_to_json(const CalibrationOutcome& c, const std::string& code_hash, uint64_t seed);

// CSV bodies, headers included, one row per entry.
// estimate: epsilon,p_j,fer_lower,fer_upper,ber_estimate
std::string rate_points_csv(const std::vector<RatePoint>& points);
// simulate: epsilon,frames,frame_errors,fer,fer_ci_low,fer_ci_high,ber
std::string sim_results_csv(const std::vector<SimResult>& results);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace errate
