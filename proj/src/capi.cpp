#include "impd/impd.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "impd/error.hpp"
#include "impd/follower.hpp"
#include "impd/leader.hpp"

struct impd_instance {
  impd::ImpdInstance inst;
};

struct impd_objective {
  std::unique_ptr<impd::SaaObjective> objective;
};

struct impd_result {
  impd::SearchResult result;
};

namespace {

thread_local std::string last_error;

impd_status record(impd_status status, const char* what) {
  last_error = what;
  return status;
}

template <class Fn>
impd_status guarded(Fn&& fn) {
  try {
    fn();
    return IMPD_OK;
  } catch (const impd::Error& e) {
    switch (e.kind()) {
      case impd::ErrorKind::InvalidArgument: return record(IMPD_ERR_INVALID_ARGUMENT, e.what());
      case impd::ErrorKind::Parse: return record(IMPD_ERR_PARSE, e.what());
      case impd::ErrorKind::Io: return record(IMPD_ERR_IO, e.what());
      case impd::ErrorKind::Guard: return record(IMPD_ERR_GUARD, e.what());
      case impd::ErrorKind::Infeasible: return record(IMPD_ERR_INFEASIBLE, e.what());
    }
    return record(IMPD_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return record(IMPD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(IMPD_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) impd::fail(impd::ErrorKind::InvalidArgument, what);
}

impd::SeedSet to_seed(const impd_instance* inst, const int32_t* ids, size_t len) {
  require(len == 0 || ids, "seed array is null");
  std::vector<impd::NodeId> members(ids, ids + len);
  for (impd::NodeId v : members) require(v >= 0 && v < inst->inst.node_count(), "seed node out of range");
  return impd::SeedSet(std::move(members));
}

template <class Set>
size_t copy_ids(const Set& set, int32_t* buf, size_t cap) {
  const auto members = set.members();
  if (buf) std::copy_n(members.begin(), std::min(cap, members.size()), buf);
  return members.size();
}

size_t copy_text(const std::string& text, char* buf, size_t cap) {
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return text.size();
}

impd::SaaParams to_saa(const impd_saa_params* p) {
  impd::SaaParams out;
  if (p) {
    out.batch_size = p->batch_size;
    out.batch_count = p->batch_count;
    out.eval_size = p->eval_size;
    out.final_size = p->final_size;
    out.rng_seed = p->rng_seed;
  }
  return out;
}

void apply_common(const impd_search_common& c, impd::SearchLimits& limits, impd::InitialParams& initial,
                  std::uint64_t& rng_seed) {
  require(c.clock == IMPD_CLOCK_WALL || c.clock == IMPD_CLOCK_EVALS, "unknown clock mode");
  require(c.initial >= IMPD_INITIAL_AUTO && c.initial <= IMPD_INITIAL_COST, "unknown initial method");
  require(c.checkpoint_count == 0 || c.checkpoints, "checkpoint array is null");
  limits.clock = c.clock == IMPD_CLOCK_WALL ? impd::ClockMode::Wall : impd::ClockMode::Evaluations;
  limits.t_max = c.t_max;
  limits.checkpoint_interval = c.checkpoint_interval;
  limits.checkpoints.assign(c.checkpoints, c.checkpoints + c.checkpoint_count);
  initial.method = static_cast<impd::InitialMethod>(c.initial);
  initial.score_samples = c.score_samples;
  initial.score_seed = c.score_seed;
  rng_seed = c.rng_seed;
}

impd_search_common default_common() {
  const impd::SearchLimits limits;
  const impd::InitialParams initial;
  return {IMPD_CLOCK_WALL, limits.t_max, limits.checkpoint_interval, nullptr, 0, IMPD_INITIAL_AUTO,
          initial.score_samples, initial.score_seed, 1};
}

}  // namespace

extern "C" {

const char* impd_version(void) { return "1.0.0"; }

const char* impd_last_error(void) { return last_error.c_str(); }

const char* impd_status_name(impd_status status) {
  switch (status) {
    case IMPD_OK: return "ok";
    case IMPD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case IMPD_ERR_PARSE: return "parse error";
    case IMPD_ERR_IO: return "i/o error";
    case IMPD_ERR_GUARD: return "guard exceeded";
    case IMPD_ERR_INFEASIBLE: return "infeasible";
    case IMPD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void impd_instance_spec_default(impd_instance_spec* spec) {
  if (!spec) return;
  const impd::InstanceSpec d;
  *spec = {nullptr,
           d.node_count,
           d.density,
           d.rewire_prob,
           IMPD_CARDINALITY,
           nullptr,
           0,
           IMPD_BUDGET_EXPLICIT,
           d.leader_budget,
           d.follower_budget,
           d.leader_fraction,
           d.follower_fraction,
           d.seed_fraction,
           d.rng_seed};
}

impd_status impd_instance_generate(const impd_instance_spec* spec, impd_instance** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    require(spec->cost_mode == IMPD_CARDINALITY || spec->cost_mode == IMPD_COST_BASED, "unknown cost mode");
    require(spec->budget_rule >= IMPD_BUDGET_EXPLICIT && spec->budget_rule <= IMPD_BUDGET_SEED_FRACTION,
            "unknown budget rule");
    impd::InstanceSpec s;
    if (spec->name) s.name = spec->name;
    s.node_count = spec->node_count;
    s.density = spec->density;
    s.rewire_prob = spec->rewire_prob;
    s.cost_mode = spec->cost_mode == IMPD_CARDINALITY ? impd::CostMode::Cardinality : impd::CostMode::CostBased;
    if (spec->cost_set) s.cost_set.assign(spec->cost_set, spec->cost_set + spec->cost_set_len);
    s.budget_rule = static_cast<impd::BudgetRule>(spec->budget_rule);
    s.leader_budget = spec->leader_budget;
    s.follower_budget = spec->follower_budget;
    s.leader_fraction = spec->leader_fraction;
    s.follower_fraction = spec->follower_fraction;
    s.seed_fraction = spec->seed_fraction;
    s.rng_seed = spec->rng_seed;
    *out = new impd_instance{impd::generate_instance(s)};
  });
}

impd_status impd_instance_load(const char* path, impd_instance** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new impd_instance{impd::load_instance(path)};
  });
}

impd_status impd_instance_save(const impd_instance* inst, const char* path) {
  return guarded([&] {
    require(inst && path, "null argument");
    impd::save_instance(inst->inst, path);
  });
}

impd_status impd_instance_from_edge_list(const char* path, const char* name, impd_weight weight, uint64_t rng_seed,
                                         int32_t subgraph_nodes, double leader_budget, double follower_budget,
                                         impd_instance** out, impd_ingest_stats* stats) {
  return guarded([&] {
    require(path && out, "null argument");
    require(weight == IMPD_WEIGHT_INVERSE_OUTDEGREE || weight == IMPD_WEIGHT_UNIFORM, "unknown weight mode");
    require(subgraph_nodes >= 0, "subgraph size must be non-negative");
    impd::Rng rng = impd::make_rng(rng_seed, "ingest-weights");
    impd::EdgeListStats st;
    impd::InfluenceGraph g = impd::load_edge_list(
        path, weight == IMPD_WEIGHT_UNIFORM ? impd::DefaultWeight::Uniform : impd::DefaultWeight::InverseOutDegree,
        rng, &st);
    std::string provenance = std::string("ingest ") + path;
    if (subgraph_nodes > 0) {
      require(subgraph_nodes <= g.node_count(), "subgraph larger than the graph");
      g = impd::top_outdegree_subgraph(g, subgraph_nodes);
      provenance += " top-outdegree " + std::to_string(subgraph_nodes);
    }
    impd::ImpdInstance inst =
        impd::make_cardinality_instance(name ? name : "ingested", std::move(g), leader_budget, follower_budget);
    inst.provenance = provenance;
    if (stats) {
      *stats = {st.lines, st.arcs_read, st.parallel_removed, st.self_loops_dropped, st.warnings.size()};
    }
    *out = new impd_instance{std::move(inst)};
  });
}

void impd_instance_free(impd_instance* inst) { delete inst; }

impd_status impd_instance_get_info(const impd_instance* inst, impd_instance_info* out) {
  return guarded([&] {
    require(inst && out, "null argument");
    const auto& i = inst->inst;
    out->node_count = i.node_count();
    out->arc_count = i.graph.arc_count();
    out->density = i.node_count() >= 2 ? impd::density(i.graph) : 0.0;
    out->cost_mode = i.cost_mode == impd::CostMode::Cardinality ? IMPD_CARDINALITY : IMPD_COST_BASED;
    out->leader_budget = i.leader_budget;
    out->follower_budget = i.follower_budget;
    out->mean_activation_cost = i.mean_activation_cost();
    out->max_activation_cost = *std::max_element(i.activation_costs.begin(), i.activation_costs.end());
    out->fixed_thresholds = i.fixed_thresholds.has_value() ? 1 : 0;
  });
}

size_t impd_instance_name(const impd_instance* inst, char* buf, size_t cap) {
  return inst ? copy_text(inst->inst.name, buf, cap) : 0;
}

impd_status impd_random_seed_set(const impd_instance* inst, size_t k, uint64_t rng_seed, int32_t* out) {
  return guarded([&] {
    require(inst && (out || k == 0), "null argument");
    impd::Rng rng = impd::make_rng(rng_seed, "random-seed");
    copy_ids(impd::random_feasible_seed(inst->inst, k, rng), out, k);
  });
}

void impd_saa_params_default(impd_saa_params* params) {
  if (!params) return;
  const impd::SaaParams d;
  *params = {d.batch_size, d.batch_count, d.eval_size, d.final_size, d.rng_seed};
}

impd_status impd_saa_evaluate(const impd_instance* inst, const int32_t* seed, size_t seed_len,
                              const impd_saa_params* params, impd_saa_summary* out, int32_t* response,
                              size_t response_cap) {
  return guarded([&] {
    require(inst && out, "null argument");
    const impd::SaaReport r = impd::saa_evaluate(inst->inst, to_seed(inst, seed, seed_len), to_saa(params));
    *out = {r.upper_bound,    r.lower_bound,     r.gap,  r.gap_percent,  r.variance.upper,
            r.variance.lower, r.ci.lo,           r.ci.hi, r.ci.dof,      r.ci.defined ? 1 : 0,
            r.best_batch,     r.best_response.size(), r.wall_seconds, r.propagations};
    copy_ids(r.best_response, response, response_cap);
  });
}

impd_status impd_export_allp_lp(const impd_instance* inst, const int32_t* seed, size_t seed_len,
                                size_t realizations, uint64_t rng_seed, double epsilon, const char* path) {
  return guarded([&] {
    require(inst && path, "null argument");
    impd::Rng rng = impd::make_rng(rng_seed, "lp-export");
    const impd::ThresholdSample sample = impd::draw_thresholds(inst->inst, realizations, rng);
    impd::export_allp_lp(inst->inst, to_seed(inst, seed, seed_len), sample, epsilon, path);
  });
}

void impd_sam_params_default(impd_sam_params* params) {
  if (!params) return;
  const impd::SamParams d;
  *params = {d.p0, d.cooling, d.growth, d.accept_threshold, d.temperature_samples, default_common()};
}

void impd_tsm_params_default(impd_tsm_params* params) {
  if (!params) return;
  const impd::TsmParams d;
  *params = {d.tau, d.mu, default_common()};
}

impd_status impd_objective_create(const impd_instance* inst, const impd_saa_params* params, impd_objective** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = new impd_objective{std::make_unique<impd::SaaObjective>(inst->inst, to_saa(params))};
  });
}

void impd_objective_free(impd_objective* objective) { delete objective; }

impd_status impd_objective_value(impd_objective* objective, const int32_t* seed, size_t seed_len, double* out) {
  return guarded([&] {
    require(objective && out, "null argument");
    const auto& inst = objective->objective->evaluator().instance();
    require(seed_len == 0 || seed, "seed array is null");
    std::vector<impd::NodeId> members(seed, seed + seed_len);
    for (impd::NodeId v : members) require(v >= 0 && v < inst.node_count(), "seed node out of range");
    const impd::SeedSet s(std::move(members));
    require(inst.leader_feasible(s), "seed violates the leader budget");
    *out = objective->objective->value(s);
  });
}

size_t impd_objective_evaluations(const impd_objective* objective) {
  return objective ? objective->objective->evaluations() : 0;
}

uint64_t impd_objective_propagations(const impd_objective* objective) {
  return objective ? objective->objective->propagations() : 0;
}

impd_status impd_enumeration_size_estimate(const impd_instance* inst, double* out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = impd::enumeration_size_estimate(inst->inst);
  });
}

impd_status impd_solve_enumeration(const impd_instance* inst, impd_objective* objective, impd_result** out) {
  return guarded([&] {
    require(inst && objective && out, "null argument");
    const impd::EnumerationResult e = impd::solve_complete_enumeration(inst->inst, *objective->objective);
    auto res = std::make_unique<impd_result>();
    res->result.best = e.seed;
    res->result.best_value = e.value;
    res->result.evaluations = e.evaluated;
    res->result.elapsed = static_cast<double>(e.evaluated);
    res->result.wall_seconds = e.wall_seconds;
    res->result.stop_reason = "enumerated";
    *out = res.release();
  });
}

impd_status impd_solve_sam(const impd_instance* inst, impd_objective* objective, const impd_sam_params* params,
                           impd_result** out) {
  return guarded([&] {
    require(inst && objective && params && out, "null argument");
    impd::SamParams p;
    p.p0 = params->p0;
    p.cooling = params->cooling;
    p.growth = params->growth;
    p.accept_threshold = params->accept_threshold;
    p.temperature_samples = params->temperature_samples;
    apply_common(params->common, p.limits, p.initial, p.rng_seed);
    *out = new impd_result{impd::sam_solve(inst->inst, *objective->objective, p)};
  });
}

impd_status impd_solve_tsm(const impd_instance* inst, impd_objective* objective, const impd_tsm_params* params,
                           impd_result** out) {
  return guarded([&] {
    require(inst && objective && params && out, "null argument");
    impd::TsmParams p;
    p.tau = params->tau;
    p.mu = params->mu;
    apply_common(params->common, p.limits, p.initial, p.rng_seed);
    const impd::PathLengthMatrix lengths = impd::shortest_path_matrix(inst->inst.graph);
    *out = new impd_result{impd::tsm_solve(inst->inst, *objective->objective, lengths, p)};
  });
}

void impd_result_free(impd_result* result) { delete result; }

impd_status impd_result_get_summary(const impd_result* result, impd_result_summary* out) {
  return guarded([&] {
    require(result && out, "null argument");
    const auto& r = result->result;
    *out = {r.best_value,
            r.best.size(),
            r.initial_value,
            r.initial_temperature,
            r.iterations,
            r.evaluations,
            r.elapsed,
            r.wall_seconds,
            {r.move_counts[0], r.move_counts[1], r.move_counts[2]},
            r.checkpoints.size(),
            r.trace.size()};
  });
}

size_t impd_result_best(const impd_result* result, int32_t* buf, size_t cap) {
  return result ? copy_ids(result->result.best, buf, cap) : 0;
}

size_t impd_result_stop_reason(const impd_result* result, char* buf, size_t cap) {
  return result ? copy_text(result->result.stop_reason, buf, cap) : 0;
}

impd_status impd_result_checkpoint(const impd_result* result, size_t index, double* at, double* value) {
  return guarded([&] {
    require(result && at && value, "null argument");
    require(index < result->result.checkpoints.size(), "checkpoint index out of range");
    *at = result->result.checkpoints[index].at;
    *value = result->result.checkpoints[index].incumbent;
  });
}

impd_status impd_result_trace_row(const impd_result* result, size_t index, impd_trace_row* out) {
  return guarded([&] {
    require(result && out, "null argument");
    require(index < result->result.trace.size(), "trace index out of range");
    const auto& t = result->result.trace[index];
    *out = {t.elapsed, t.iteration, t.incumbent, t.current, t.control, static_cast<impd_move>(t.move),
            t.accepted ? 1 : 0};
  });
}

size_t impd_result_trace_seed(const impd_result* result, size_t index, int32_t* buf, size_t cap) {
  if (!result || index >= result->result.trace.size()) return 0;
  return copy_ids(result->result.trace[index].current_set, buf, cap);
}

impd_status impd_compare_delta(double z_sam, double z_tsm, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = impd::compare_delta(z_sam, z_tsm);
  });
}

}  // extern "C"
