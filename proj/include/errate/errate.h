/*
 * errate: error-rate estimation for LDPC codes under hard-decision
 * iterative decoding on binary symmetric channels.
 *
 * C interface over opaque handles. Every function that can fail returns
 * an errate_status; on failure errate_last_error() holds a thread-local
 * message until the next API call on the same thread. Strings returned
 * through char** are heap-allocated and released with
 * errate_string_free().
 */

#ifndef ERRATE_H
#define ERRATE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum errate_status {
  ERRATE_OK = 0,
  ERRATE_ERR_INVALID_ARGUMENT = 1,
  ERRATE_ERR_PARSE = 2,
  ERRATE_ERR_IO = 3,
  ERRATE_ERR_INTERNAL = 4
} errate_status;

typedef struct errate_graph errate_graph;
typedef struct errate_decoder_config errate_decoder_config;
typedef struct errate_trace errate_trace;
typedef struct errate_enum_result errate_enum_result;
typedef struct errate_sim_result errate_sim_result;

const char* errate_version(void);
const char* errate_last_error(void);
void errate_string_free(char* s);

/* --- Tanner graphs (alist ingest/emit) --------------------------------- */

errate_status errate_graph_from_alist_text(const char* text, errate_graph** out);
errate_status errate_graph_from_alist_file(const char* path, errate_graph** out);
void errate_graph_free(errate_graph* g);

int32_t errate_graph_variable_count(const errate_graph* g);
int32_t errate_graph_check_count(const errate_graph* g);
int64_t errate_graph_edge_count(const errate_graph* g);
int32_t errate_graph_var_degree(const errate_graph* g, int32_t v);
int32_t errate_graph_chk_degree(const errate_graph* g, int32_t c);
/* 1 when two variable nodes share two or more checks. */
int errate_graph_has_4cycles(const errate_graph* g);

errate_status errate_graph_emit_alist(const errate_graph* g, char** out);
/* Content digest binding derived artifacts to this code. */
errate_status errate_graph_hash(const errate_graph* g, char** out);
/* {"lambda": {degree: edge fraction}, "rho": {...}} */
errate_status errate_graph_degree_distributions_json(const errate_graph* g, char** out);

/* --- Decoder configuration --------------------------------------------- */

/* Gallager A: every node at its maximum admissible order. */
errate_status errate_config_ga(const errate_graph* g, int max_iterations, int early_stop,
                               errate_decoder_config** out);
/* Majority-based with one order for all nodes, or per-node orders. */
errate_status errate_config_mb(const errate_graph* g, int order, int max_iterations, int early_stop,
                               errate_decoder_config** out);
errate_status errate_config_mb_per_node(const errate_graph* g, const int32_t* orders, size_t count,
                                        int max_iterations, int early_stop, errate_decoder_config** out);
errate_status errate_config_json(const errate_decoder_config* cfg, char** out);
void errate_config_free(errate_decoder_config* cfg);

/* --- Decoding ----------------------------------------------------------- */

/* `errors` lists the variable nodes received in error (sorted, unique).
 * The trace records the output error set of every executed iteration. */
errate_status errate_decode(const errate_graph* g, const errate_decoder_config* cfg, const int32_t* errors,
                            size_t count, errate_trace** out);
void errate_trace_free(errate_trace* t);
int errate_trace_success(const errate_trace* t);
int32_t errate_trace_iterations(const errate_trace* t);
int32_t errate_trace_final_error_weight(const errate_trace* t);
/* Borrowed view of the error set recorded at `index` in [0, iterations);
 * valid while the trace lives. */
errate_status errate_trace_error_set(const errate_trace* t, int32_t index, const int32_t** positions,
                                     size_t* count);

/* satisfied = 1 iff every check has an even number of neighbors in error. */
errate_status errate_check_syndrome(const errate_graph* g, const int32_t* errors, size_t count, int* satisfied);

/* --- Failure taxonomy and trapping sets --------------------------------- */

/* Classifies a failed trace as fixed / oscillatory / random_like:
 * {"kind", "period", "transition_length", "steady_state_support", ...} */
errate_status errate_classify_json(const errate_trace* t, char** json);

/* Structural trapping-set check; report fields: "set", "odd_checks",
 * "condition_holds", "max_violating_node". */
errate_status errate_check_trapping_condition_json(const errate_graph* g, const errate_decoder_config* cfg,
                                                   const int32_t* set, size_t count, int* condition_holds,
                                                   char** json);
/* Requires the structural condition; certifies the fixed pattern by
 * decoding. */
errate_status errate_certify_trapping_set(const errate_graph* g, const errate_decoder_config* cfg,
                                          const int32_t* set, size_t count, int* certified);

/* --- Exhaustive enumeration --------------------------------------------- */

typedef struct errate_enum_options {
  int32_t max_weight;
  int32_t workers;                    /* <= 0 selects a single worker */
  uint64_t store_cap;                 /* failing patterns kept in the result */
  const char* checkpoint_path;        /* NULL disables checkpointing */
  uint64_t checkpoint_interval;       /* patterns between checkpoint writes */
  uint64_t pattern_budget;            /* 0 = unlimited */
  const char* resume_checkpoint_path; /* NULL = fresh run */
} errate_enum_options;

typedef enum errate_enum_status {
  ERRATE_ENUM_FOUND = 0,
  ERRATE_ENUM_NO_FAILURE = 1,
  ERRATE_ENUM_INTERRUPTED = 2
} errate_enum_status;

errate_status errate_enumerate(const errate_graph* g, const errate_decoder_config* cfg,
                               const errate_enum_options* opts, errate_enum_result** out);
void errate_enum_result_free(errate_enum_result* r);
int32_t errate_enum_result_status(const errate_enum_result* r);
/* -1 while undetermined (no failure yet, or interrupted). */
int32_t errate_enum_result_j_min(const errate_enum_result* r);
uint64_t errate_enum_result_e_j_count(const errate_enum_result* r);
errate_status errate_enum_result_json(const errate_enum_result* r, char** json);

/* Colexicographic unranking of weight-w subsets of [0, n); `positions`
 * must hold `weight` entries. */
errate_status errate_pattern_from_rank(int32_t n, int32_t weight, uint64_t rank, int32_t* positions);
errate_status errate_pattern_rank(const int32_t* positions, size_t count, uint64_t* rank);

/* --- Closed-form estimators ---------------------------------------------
 * All take the enumeration outputs (n, J, |E_J|) plus a crossover
 * probability; eps = 0 is allowed and yields 0. */

errate_status errate_p_j(int32_t n, int32_t j, uint64_t e_j_count, double eps, double* out);
errate_status errate_fer_lower(int32_t n, int32_t j, uint64_t e_j_count, int32_t n_cap, double eps, double* out);
errate_status errate_fer_upper(int32_t n, int32_t j, uint64_t e_j_count, int32_t n_cap, double eps, double* out);
errate_status errate_binomial_upper_tail(int32_t n, int32_t n_cap, double eps, double* out);
errate_status errate_ber_estimate(int32_t n, int32_t j, uint64_t e_j_count, int32_t n0, double m_avg, double eps,
                                  double* out);
/* untruncated = 0 gives |E_J| C(n-J, i-J); nonzero gives the Bernoulli
 * model form. */
errate_status errate_s_prime_count(int32_t n, int32_t j, uint64_t e_j_count, int32_t i, int untruncated,
                                   double* out);
errate_status errate_s_double_prime_count(int32_t n, int32_t j, uint64_t e_j_count, int32_t i, double* out);
errate_status errate_complexity_ratio(int32_t n, int32_t j, double p, double m, double* out);
errate_status errate_break_even_fer(int32_t n, int32_t j, double m, double* out);

/* Rate-point CSV (header epsilon,p_j,fer_lower,fer_upper,ber_estimate;
 * one row per grid point, shortest round-trip double formatting). */
errate_status errate_rate_points_csv(int32_t n, int32_t j, uint64_t e_j_count, int32_t n0, double m_avg,
                                     int32_t n_cap, const double* eps, size_t count, char** csv);

/* --- Monte Carlo --------------------------------------------------------- */

typedef struct errate_sim_options {
  double epsilon;
  uint64_t min_frame_errors;
  uint64_t max_frames;
  uint64_t seed;
  int32_t workers;
} errate_sim_options;

errate_status errate_simulate(const errate_graph* g, const errate_decoder_config* cfg,
                              const errate_sim_options* opts, errate_sim_result** out);
void errate_sim_result_free(errate_sim_result* r);
uint64_t errate_sim_result_frames(const errate_sim_result* r);
uint64_t errate_sim_result_frame_errors(const errate_sim_result* r);
uint64_t errate_sim_result_bit_errors(const errate_sim_result* r);
double errate_sim_result_fer(const errate_sim_result* r);
double errate_sim_result_ber(const errate_sim_result* r);
double errate_sim_result_fer_ci_low(const errate_sim_result* r);
double errate_sim_result_fer_ci_high(const errate_sim_result* r);
errate_status errate_sim_result_json(const errate_sim_result* r, char** json);

/* CSV over several points (header epsilon,frames,frame_errors,fer,
 * fer_ci_low,fer_ci_high,ber). */
errate_status errate_sim_results_csv(const errate_sim_result* const* results, size_t count, char** csv);

/* Mean residual bit errors over `trials` random weight-n0 patterns.
 * m_avg averages over all trials; m_failures_only over failures. Either
 * output pointer and `json` may be NULL. */
errate_status errate_estimate_m(const errate_graph* g, const errate_decoder_config* cfg, int32_t n0,
                                uint64_t trials, uint64_t seed, int32_t workers, double* m_avg,
                                double* m_failures_only, char** json);

/* Picks N0 by matching FER_U(N0) to simulated FER at the given points
 * (in log10 distance). Points must land near the 0.01-0.1 FER region. */
errate_status errate_calibrate_n0(const errate_graph* g, const errate_decoder_config* cfg, int32_t j,
                                  uint64_t e_j_count, const double* eps_points, size_t point_count,
                                  uint64_t min_frame_errors, uint64_t per_point_max_frames, uint64_t seed,
                                  int32_t workers, int32_t* n0, char** json);

#ifdef __cplusplus
}
#endif

#endif /* ERRATE_H */
