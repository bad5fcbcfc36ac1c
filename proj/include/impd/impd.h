/* C interface to the impd library.
 *
 * Objects are opaque handles created by impd_*_create/generate/load calls and
 * released with the matching impd_*_free. Every fallible call returns an
 * impd_status; on failure impd_last_error() describes the problem until the
 * next failing call on the same thread. Node sets are passed as arrays of
 * node ids; output arrays are filled up to the given capacity and the full
 * length is always reported.
 */
#ifndef IMPD_IMPD_H
#define IMPD_IMPD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IMPD_API __declspec(dllexport)
#else
#define IMPD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum impd_status {
  IMPD_OK = 0,
  IMPD_ERR_INVALID_ARGUMENT = 1,
  IMPD_ERR_PARSE = 2,
  IMPD_ERR_IO = 3,
  IMPD_ERR_GUARD = 4, /* problem too large for an exact routine */
  IMPD_ERR_INFEASIBLE = 5,
  IMPD_ERR_INTERNAL = 6
} impd_status;

typedef enum impd_cost_mode { IMPD_CARDINALITY = 0, IMPD_COST_BASED = 1 } impd_cost_mode;
typedef enum impd_budget_rule {
  IMPD_BUDGET_EXPLICIT = 0,
  IMPD_BUDGET_LEADER_FRACTION = 1,
  IMPD_BUDGET_SEED_FRACTION = 2
} impd_budget_rule;
typedef enum impd_clock { IMPD_CLOCK_WALL = 0, IMPD_CLOCK_EVALS = 1 } impd_clock;
typedef enum impd_initial { IMPD_INITIAL_AUTO = 0, IMPD_INITIAL_SCORE = 1, IMPD_INITIAL_COST = 2 } impd_initial;
typedef enum impd_move { IMPD_MOVE_ADD = 0, IMPD_MOVE_DROP = 1, IMPD_MOVE_SWAP = 2 } impd_move;
typedef enum impd_weight { IMPD_WEIGHT_INVERSE_OUTDEGREE = 0, IMPD_WEIGHT_UNIFORM = 1 } impd_weight;

typedef struct impd_instance impd_instance;
typedef struct impd_objective impd_objective;
typedef struct impd_result impd_result;

IMPD_API const char* impd_version(void);
IMPD_API const char* impd_last_error(void);
IMPD_API const char* impd_status_name(impd_status status);

/* ---- instances ---- */

typedef struct impd_instance_spec {
  const char* name;
  int32_t node_count;
  double density;
  double rewire_prob;
  impd_cost_mode cost_mode;
  const double* cost_set; /* NULL keeps the default {10, 15, 20} */
  size_t cost_set_len;
  impd_budget_rule budget_rule;
  double leader_budget;
  double follower_budget;
  double leader_fraction;
  double follower_fraction;
  double seed_fraction;
  uint64_t rng_seed;
} impd_instance_spec;

typedef struct impd_instance_info {
  int32_t node_count;
  size_t arc_count;
  double density;
  impd_cost_mode cost_mode;
  double leader_budget;
  double follower_budget;
  double mean_activation_cost;
  double max_activation_cost;
  int fixed_thresholds;
} impd_instance_info;

typedef struct impd_ingest_stats {
  size_t lines;
  size_t arcs_read;
  size_t parallel_removed;
  size_t self_loops_dropped;
  size_t warnings;
} impd_ingest_stats;

IMPD_API void impd_instance_spec_default(impd_instance_spec* spec);
IMPD_API impd_status impd_instance_generate(const impd_instance_spec* spec, impd_instance** out);
IMPD_API impd_status impd_instance_load(const char* path, impd_instance** out);
IMPD_API impd_status impd_instance_save(const impd_instance* inst, const char* path);
/* Cardinality instance on an edge list; subgraph_nodes > 0 keeps that many
 * nodes of largest out-degree. */
IMPD_API impd_status impd_instance_from_edge_list(const char* path, const char* name, impd_weight weight,
                                                  uint64_t rng_seed, int32_t subgraph_nodes, double leader_budget,
                                                  double follower_budget, impd_instance** out,
                                                  impd_ingest_stats* stats);
IMPD_API void impd_instance_free(impd_instance* inst);
IMPD_API impd_status impd_instance_get_info(const impd_instance* inst, impd_instance_info* out);
/* Copies the instance name into buf (NUL-terminated, truncated to cap) and
 * returns its full length. */
IMPD_API size_t impd_instance_name(const impd_instance* inst, char* buf, size_t cap);
/* Uniform k-subset of the nodes drawn from rng_seed; writes k ids. */
IMPD_API impd_status impd_random_seed_set(const impd_instance* inst, size_t k, uint64_t rng_seed, int32_t* out);

/* ---- follower ---- */

typedef struct impd_saa_params {
  size_t batch_size;  /* N */
  size_t batch_count; /* M */
  size_t eval_size;   /* N' */
  size_t final_size;  /* N'' */
  uint64_t rng_seed;
} impd_saa_params;

typedef struct impd_saa_summary {
  double upper_bound;
  double lower_bound;
  double gap;
  double gap_percent; /* NaN when the upper bound is 0 */
  double variance_upper;
  double variance_lower;
  double ci_lo;
  double ci_hi;
  double dof;
  int ci_defined;
  size_t best_batch;
  size_t response_len;
  double wall_seconds;
  uint64_t propagations;
} impd_saa_summary;

IMPD_API void impd_saa_params_default(impd_saa_params* params);
/* `response` may be NULL; otherwise it receives up to `response_cap` ids of
 * the selected follower response. */
IMPD_API impd_status impd_saa_evaluate(const impd_instance* inst, const int32_t* seed, size_t seed_len,
                                       const impd_saa_params* params, impd_saa_summary* out, int32_t* response,
                                       size_t response_cap);
/* Writes the follower model for `seed` over `realizations` threshold draws
 * from rng_seed in LP format. */
IMPD_API impd_status impd_export_allp_lp(const impd_instance* inst, const int32_t* seed, size_t seed_len,
                                         size_t realizations, uint64_t rng_seed, double epsilon, const char* path);

/* ---- leader ---- */

typedef struct impd_search_common {
  impd_clock clock;
  double t_max;
  double checkpoint_interval;
  const double* checkpoints; /* explicit times, may be NULL */
  size_t checkpoint_count;
  impd_initial initial;
  size_t score_samples;
  uint64_t score_seed;
  uint64_t rng_seed;
} impd_search_common;

typedef struct impd_sam_params {
  double p0;
  double cooling;
  double growth;
  double accept_threshold;
  size_t temperature_samples;
  impd_search_common common;
} impd_sam_params;

typedef struct impd_tsm_params {
  double tau;
  double mu;
  impd_search_common common;
} impd_tsm_params;

typedef struct impd_result_summary {
  double best_value;
  size_t best_len;
  double initial_value;
  double initial_temperature;
  size_t iterations;
  size_t evaluations;
  double elapsed;
  double wall_seconds;
  size_t move_counts[3]; /* indexed by impd_move */
  size_t checkpoint_count;
  size_t trace_count;
} impd_result_summary;

typedef struct impd_trace_row {
  double elapsed;
  size_t iteration;
  double incumbent;
  double current;
  double control; /* temperature for SAM, tau for TSM */
  impd_move move;
  int accepted;
} impd_trace_row;

IMPD_API void impd_sam_params_default(impd_sam_params* params);
IMPD_API void impd_tsm_params_default(impd_tsm_params* params);

/* Memoized SAA objective; every seed is evaluated against the same samples. */
IMPD_API impd_status impd_objective_create(const impd_instance* inst, const impd_saa_params* params,
                                           impd_objective** out);
IMPD_API void impd_objective_free(impd_objective* objective);
IMPD_API impd_status impd_objective_value(impd_objective* objective, const int32_t* seed, size_t seed_len,
                                          double* out);
IMPD_API size_t impd_objective_evaluations(const impd_objective* objective);
IMPD_API uint64_t impd_objective_propagations(const impd_objective* objective);

IMPD_API impd_status impd_enumeration_size_estimate(const impd_instance* inst, double* out);
IMPD_API impd_status impd_solve_enumeration(const impd_instance* inst, impd_objective* objective, impd_result** out);
IMPD_API impd_status impd_solve_sam(const impd_instance* inst, impd_objective* objective,
                                    const impd_sam_params* params, impd_result** out);
IMPD_API impd_status impd_solve_tsm(const impd_instance* inst, impd_objective* objective,
                                    const impd_tsm_params* params, impd_result** out);

IMPD_API void impd_result_free(impd_result* result);
IMPD_API impd_status impd_result_get_summary(const impd_result* result, impd_result_summary* out);
/* Best seed; returns its full length. */
IMPD_API size_t impd_result_best(const impd_result* result, int32_t* buf, size_t cap);
IMPD_API size_t impd_result_stop_reason(const impd_result* result, char* buf, size_t cap);
IMPD_API impd_status impd_result_checkpoint(const impd_result* result, size_t index, double* at, double* value);
IMPD_API impd_status impd_result_trace_row(const impd_result* result, size_t index, impd_trace_row* out);
/* Current seed after trace row `index`; returns its full length. */
IMPD_API size_t impd_result_trace_seed(const impd_result* result, size_t index, int32_t* buf, size_t cap);

IMPD_API impd_status impd_compare_delta(double z_sam, double z_tsm, double* out);

#ifdef __cplusplus
}
#endif

#endif
