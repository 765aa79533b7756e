#include "errate/errate.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "decoder.hpp"
#include "enumeration.hpp"
#include "estimation.hpp"
#include "failure_analysis.hpp"
#include "serialization.hpp"
#include "simulation.hpp"
#include "tanner_graph.hpp"

// Thin translation layer: exceptions from the core become status codes,
// handles wrap the core value types.

struct errate_graph {
  errate::TannerGraph g;
};
struct errate_decoder_config {
  errate::DecoderConfig cfg;
};
struct errate_trace {
  errate::DecodeTrace trace;
};
struct errate_enum_result {
  errate::EnumerationResult result;
  std::string json;  // rendered at enumerate time (graph/config context)
};
struct errate_sim_result {
  errate::SimResult result;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::operator new(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

errate_status fail(errate_status code, const char* what) {
  set_error(what);
  return code;
}

template <typename Fn>
errate_status guarded(Fn&& fn) {
  try {
    fn();
    return ERRATE_OK;
  } catch (const errate::AlistError& e) {
    return fail(ERRATE_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ERRATE_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(ERRATE_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::overflow_error& e) {
    return fail(ERRATE_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ERRATE_ERR_INTERNAL, "allocation failed");
  } catch (const std::exception& e) {
    return fail(ERRATE_ERR_IO, e.what());
  } catch (...) {
    return fail(ERRATE_ERR_INTERNAL, "unknown error");
  }
}

void emit_string(const std::string& s, char** out) { *out = dup_string(s); }

std::span<const int32_t> as_span(const int32_t* data, size_t count) {
  return {data, count};
}

}  // namespace

extern "C" {

const char* errate_version(void) { return errate::kToolVersion; }

const char* errate_last_error(void) { return g_last_error.c_str(); }

void errate_string_free(char* s) { ::operator delete(s); }

/* --- graphs -------------------------------------------------------------- */

errate_status errate_graph_from_alist_text(const char* text, errate_graph** out) {
  if (!text || !out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new errate_graph{errate::load_alist(text)}; });
}

errate_status errate_graph_from_alist_file(const char* path, errate_graph** out) {
  if (!path || !out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new errate_graph{errate::load_alist_file(path)}; });
}

void errate_graph_free(errate_graph* g) { delete g; }

int32_t errate_graph_variable_count(const errate_graph* g) { return g->g.variable_count(); }
int32_t errate_graph_check_count(const errate_graph* g) { return g->g.check_count(); }
int64_t errate_graph_edge_count(const errate_graph* g) { return g->g.edge_count(); }

int32_t errate_graph_var_degree(const errate_graph* g, int32_t v) {
  if (v < 0 || v >= g->g.variable_count()) return -1;
  return g->g.var_degree(v);
}

int32_t errate_graph_chk_degree(const errate_graph* g, int32_t c) {
  if (c < 0 || c >= g->g.check_count()) return -1;
  return g->g.chk_degree(c);
}

int errate_graph_has_4cycles(const errate_graph* g) { return g->g.has_4cycles() ? 1 : 0; }

errate_status errate_graph_emit_alist(const errate_graph* g, char** out) {
  if (!g || !out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    emit_string(errate::emit_alist(g->g), out);
  });
}

errate_status errate_graph_hash(const errate_graph* g, char** out) {
  if (!g || !out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    emit_string(errate::code_hash(g->g), out);
  });
}

errate_status errate_graph_degree_distributions_json(const errate_graph* g, char** out) {
  if (!g || !out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto j = errate::degree_distribution_to_json(errate::degree_distributions(g->g));
    emit_string(j.dump(), out);
  });
}

/* --- decoder config ------------------------------------------------------ */

errate_status errate_config_ga(const errate_graph* g, int max_iterations, int early_stop,
                               errate_decoder_config** out) {
  if (!g || !out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(
      [&] { *out = new errate_decoder_config{errate::make_ga_config(g->g, max_iterations, early_stop != 0)}; });
}

errate_status errate_config_mb(const errate_graph* g, int order, int max_iterations, int early_stop,
                               errate_decoder_config** out) {
  if (!g || !out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new errate_decoder_config{errate::make_mb_config(g->g, order, max_iterations, early_stop != 0)};
  });
}

errate_status errate_config_mb_per_node(const errate_graph* g, const int32_t* orders, size_t count,
                                        int max_iterations, int early_stop, errate_decoder_config** out) {
  if (!g || !orders || !out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<int> per_node(orders, orders + count);
    *out = new errate_decoder_config{
        errate::make_mb_config(g->g, std::move(per_node), max_iterations, early_stop != 0)};
  });
}

errate_status errate_config_json(const errate_decoder_config* cfg, char** out) {
  if (!cfg || !out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    emit_string(errate::decoder_config_to_json(cfg->cfg).dump(), out);
  });
}

void errate_config_free(errate_decoder_config* cfg) { delete cfg; }

/* --- decoding ------------------------------------------------------------ */

errate_status errate_decode(const errate_graph* g, const errate_decoder_config* cfg, const int32_t* errors,
                            size_t count, errate_trace** out) {
  if (!g || !cfg || !out || (count > 0 && !errors)) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    errate::Decoder decoder(g->g, cfg->cfg);
    *out = new errate_trace{decoder.decode(as_span(errors, count))};
  });
}

void errate_trace_free(errate_trace* t) { delete t; }

int errate_trace_success(const errate_trace* t) { return t->trace.success ? 1 : 0; }
int32_t errate_trace_iterations(const errate_trace* t) { return t->trace.iterations_run; }
int32_t errate_trace_final_error_weight(const errate_trace* t) { return t->trace.final_error_weight; }

errate_status errate_trace_error_set(const errate_trace* t, int32_t index, const int32_t** positions,
                                     size_t* count) {
  if (!t || !positions || !count) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  if (index < 0 || static_cast<size_t>(index) >= t->trace.error_sets.size())
    return fail(ERRATE_ERR_INVALID_ARGUMENT, "trace iteration index out of range");
  const auto& set = t->trace.error_sets[static_cast<size_t>(index)];
  *positions = set.data();
  *count = set.size();
  return ERRATE_OK;
}

errate_status errate_check_syndrome(const errate_graph* g, const int32_t* errors, size_t count, int* satisfied) {
  if (!g || !satisfied || (count > 0 && !errors)) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    errate::validate_pattern(g->g, as_span(errors, count));
    *satisfied = errate::check_syndrome(g->g, as_span(errors, count)) ? 1 : 0;
  });
}

/* --- failure analysis ----------------------------------------------------- */

errate_status errate_classify_json(const errate_trace* t, char** json) {
  if (!t || !json) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto fc = errate::classify(t->trace);
    emit_string(errate::failure_class_to_json(fc).dump(), json);
  });
}

errate_status errate_check_trapping_condition_json(const errate_graph* g, const errate_decoder_config* cfg,
                                                   const int32_t* set, size_t count, int* condition_holds,
                                                   char** json) {
  if (!g || !cfg || (count > 0 && !set)) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto report = errate::check_trapping_condition(g->g, cfg->cfg, as_span(set, count));
    if (condition_holds) *condition_holds = report.condition_holds ? 1 : 0;
    if (json) emit_string(errate::trapping_report_to_json(report).dump(), json);
  });
}

errate_status errate_certify_trapping_set(const errate_graph* g, const errate_decoder_config* cfg,
                                          const int32_t* set, size_t count, int* certified) {
  if (!g || !cfg || !certified || (count > 0 && !set)) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(
      [&] { *certified = errate::certify_trapping_set(g->g, cfg->cfg, as_span(set, count)) ? 1 : 0; });
}

/* --- enumeration ----------------------------------------------------------- */

errate_status errate_enumerate(const errate_graph* g, const errate_decoder_config* cfg,
                               const errate_enum_options* opts, errate_enum_result** out) {
  if (!g || !cfg || !opts || !out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    errate::EnumerationOptions o;
    o.max_weight = opts->max_weight;
    o.workers = opts->workers > 0 ? opts->workers : 1;
    o.store_cap = opts->store_cap;
    if (opts->checkpoint_path) o.checkpoint_path = opts->checkpoint_path;
    o.checkpoint_interval = opts->checkpoint_interval ? opts->checkpoint_interval : 10'000'000;
    o.pattern_budget = opts->pattern_budget;

    errate::EnumerationResult result;
    if (opts->resume_checkpoint_path) {
      auto ck = errate::load_checkpoint_file(opts->resume_checkpoint_path);
      result = errate::find_j(g->g, cfg->cfg, o, &ck);
    } else {
      result = errate::find_j(g->g, cfg->cfg, o);
    }
    auto json = errate::enumeration_result_to_json(result, g->g, cfg->cfg, opts->max_weight);
    *out = new errate_enum_result{std::move(result), json.dump(2) + "\n"};
  });
}

void errate_enum_result_free(errate_enum_result* r) { delete r; }

int32_t errate_enum_result_status(const errate_enum_result* r) { return static_cast<int32_t>(r->result.status); }

int32_t errate_enum_result_j_min(const errate_enum_result* r) {
  return r->result.j_min ? *r->result.j_min : -1;
}

uint64_t errate_enum_result_e_j_count(const errate_enum_result* r) { return r->result.e_j_count; }

errate_status errate_enum_result_json(const errate_enum_result* r, char** json) {
  if (!r || !json) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { emit_string(r->json, json); });
}

errate_status errate_pattern_from_rank(int32_t n, int32_t weight, uint64_t rank, int32_t* positions) {
  if (!positions) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto p = errate::pattern_from_rank(n, weight, rank);
    std::copy(p.begin(), p.end(), positions);
  });
}

errate_status errate_pattern_rank(const int32_t* positions, size_t count, uint64_t* rank) {
  if (!rank || (count > 0 && !positions)) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *rank = errate::rank_of_pattern(as_span(positions, count)); });
}

/* --- estimators ------------------------------------------------------------ */

errate_status errate_p_j(int32_t n, int32_t j, uint64_t e_j_count, double eps, double* out) {
  if (!out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = errate::p_j({n, j, e_j_count, n, 0.0}, eps); });
}

errate_status errate_fer_lower(int32_t n, int32_t j, uint64_t e_j_count, int32_t n_cap, double eps, double* out) {
  if (!out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = errate::fer_lower({n, j, e_j_count, n, 0.0}, n_cap, eps); });
}

errate_status errate_fer_upper(int32_t n, int32_t j, uint64_t e_j_count, int32_t n_cap, double eps, double* out) {
  if (!out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = errate::fer_upper({n, j, e_j_count, n, 0.0}, n_cap, eps); });
}

errate_status errate_binomial_upper_tail(int32_t n, int32_t n_cap, double eps, double* out) {
  if (!out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = errate::binomial_upper_tail(n, n_cap, eps); });
}

errate_status errate_ber_estimate(int32_t n, int32_t j, uint64_t e_j_count, int32_t n0, double m_avg, double eps,
                                  double* out) {
  if (!out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = errate::ber_estimate({n, j, e_j_count, n0, m_avg}, eps); });
}

errate_status errate_s_prime_count(int32_t n, int32_t j, uint64_t e_j_count, int32_t i, int untruncated,
                                   double* out) {
  if (!out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = untruncated ? errate::s_prime_count_untruncated(n, j, e_j_count, i)
                       : errate::s_prime_count(n, j, e_j_count, i);
  });
}

errate_status errate_s_double_prime_count(int32_t n, int32_t j, uint64_t e_j_count, int32_t i, double* out) {
  if (!out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = errate::s_double_prime_count(n, j, e_j_count, i); });
}

errate_status errate_complexity_ratio(int32_t n, int32_t j, double p, double m, double* out) {
  if (!out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = errate::complexity_ratio(n, j, p, m); });
}

errate_status errate_break_even_fer(int32_t n, int32_t j, double m, double* out) {
  if (!out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = errate::break_even_fer(n, j, m); });
}

errate_status errate_rate_points_csv(int32_t n, int32_t j, uint64_t e_j_count, int32_t n0, double m_avg,
                                     int32_t n_cap, const double* eps, size_t count, char** csv) {
  if (!csv || !eps || count == 0) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    errate::EstimatorInput inp{n, j, e_j_count, n0, m_avg};
    std::vector<errate::RatePoint> points;
    points.reserve(count);
    for (size_t i = 0; i < count; ++i) points.push_back(errate::rate_point(inp, n_cap, eps[i]));
    emit_string(errate::rate_points_csv(points), csv);
  });
}

/* --- Monte Carlo ------------------------------------------------------------ */

errate_status errate_simulate(const errate_graph* g, const errate_decoder_config* cfg,
                              const errate_sim_options* opts, errate_sim_result** out) {
  if (!g || !cfg || !opts || !out) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    errate::SimConfig sim;
    sim.epsilon = opts->epsilon;
    sim.min_frame_errors = opts->min_frame_errors;
    sim.max_frames = opts->max_frames;
    sim.seed = opts->seed;
    sim.workers = opts->workers > 0 ? opts->workers : 1;
    *out = new errate_sim_result{errate::simulate(g->g, cfg->cfg, sim)};
  });
}

void errate_sim_result_free(errate_sim_result* r) { delete r; }

uint64_t errate_sim_result_frames(const errate_sim_result* r) { return r->result.frames; }
uint64_t errate_sim_result_frame_errors(const errate_sim_result* r) { return r->result.frame_errors; }
uint64_t errate_sim_result_bit_errors(const errate_sim_result* r) { return r->result.bit_errors; }
double errate_sim_result_fer(const errate_sim_result* r) { return r->result.fer; }
double errate_sim_result_ber(const errate_sim_result* r) { return r->result.ber; }
double errate_sim_result_fer_ci_low(const errate_sim_result* r) { return r->result.fer_ci_low; }
double errate_sim_result_fer_ci_high(const errate_sim_result* r) { return r->result.fer_ci_high; }

errate_status errate_sim_result_json(const errate_sim_result* r, char** json) {
  if (!r || !json) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    emit_string(errate::sim_result_to_json(r->result).dump(), json);
  });
}

errate_status errate_sim_results_csv(const errate_sim_result* const* results, size_t count, char** csv) {
  if (!csv || !results || count == 0) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<errate::SimResult> rows;
    rows.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!results[i]) throw std::invalid_argument("null simulation result");
      rows.push_back(results[i]->result);
    }
    emit_string(errate::sim_results_csv(rows), csv);
  });
}

errate_status errate_estimate_m(const errate_graph* g, const errate_decoder_config* cfg, int32_t n0,
                                uint64_t trials, uint64_t seed, int32_t workers, double* m_avg,
                                double* m_failures_only, char** json) {
  if (!g || !cfg) return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto m = errate::estimate_m(g->g, cfg->cfg, n0, trials, seed, workers > 0 ? workers : 1);
    if (m_avg) *m_avg = m.mean_all_trials;
    if (m_failures_only) *m_failures_only = m.mean_failures_only;
    if (json) {
      auto doc = errate::m_estimate_to_json(m, errate::code_hash(g->g), seed);
      emit_string(doc.dump(2) + "\n", json);
    }
  });
}

errate_status errate_calibrate_n0(const errate_graph* g, const errate_decoder_config* cfg, int32_t j,
                                  uint64_t e_j_count, const double* eps_points, size_t point_count,
                                  uint64_t min_frame_errors, uint64_t per_point_max_frames, uint64_t seed,
                                  int32_t workers, int32_t* n0, char** json) {
  if (!g || !cfg || !eps_points || point_count == 0)
    return fail(ERRATE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<double> eps(eps_points, eps_points + point_count);
    auto outcome = errate::calibrate_n0(g->g, cfg->cfg, j, e_j_count, eps, min_frame_errors,
                                        per_point_max_frames, seed, workers > 0 ? workers : 1);
    if (n0) *n0 = outcome.n0;
    if (json) {
      auto doc = errate::calibration_to_json(outcome, errate::code_hash(g->g), seed);
      emit_string(doc.dump(2) + "\n", json);
    }
  });
}

}  // extern "C"
