// impd command-line front end. Talks to the library through the C API only.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "impd/impd.h"

namespace fs = std::filesystem;

namespace {

struct CliFailure {
  int code;
  std::string message;
};

void check(impd_status status, const std::string& context) {
  if (status == IMPD_OK) return;
  throw CliFailure{status == IMPD_ERR_GUARD ? 2 : 1, context + ": " + impd_last_error()};
}

struct InstanceDeleter {
  void operator()(impd_instance* p) const { impd_instance_free(p); }
};
struct ObjectiveDeleter {
  void operator()(impd_objective* p) const { impd_objective_free(p); }
};
struct ResultDeleter {
  void operator()(impd_result* p) const { impd_result_free(p); }
};
using Instance = std::unique_ptr<impd_instance, InstanceDeleter>;
using Objective = std::unique_ptr<impd_objective, ObjectiveDeleter>;
using Result = std::unique_ptr<impd_result, ResultDeleter>;

Instance load(const std::string& path) {
  impd_instance* raw = nullptr;
  check(impd_instance_load(path.c_str(), &raw), "loading " + path);
  return Instance(raw);
}

std::string instance_name(const impd_instance* inst) {
  std::string name(impd_instance_name(inst, nullptr, 0), '\0');
  impd_instance_name(inst, name.data(), name.size() + 1);
  return name;
}

impd_instance_info info_of(const impd_instance* inst) {
  impd_instance_info info{};
  check(impd_instance_get_info(inst, &info), "instance info");
  return info;
}

std::string real(double v, int precision = 6) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string ids_text(const std::vector<int32_t>& ids) {
  std::string out;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(ids[k]);
  }
  return out;
}

std::vector<int32_t> parse_ids(const std::string& text) {
  std::vector<int32_t> ids;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    for (char& c : tok) {
      if (c == ',') c = ' ';
    }
    std::istringstream parts(tok);
    long long v;
    while (parts >> v) ids.push_back(static_cast<int32_t>(v));
  }
  return ids;
}

/// CSV written to a temporary name and moved into place on commit.
class CsvFile {
 public:
  CsvFile(fs::path path, const std::vector<std::string>& header) : path_(std::move(path)) {
    tmp_ = path_;
    tmp_ += ".tmp";
    out_.open(tmp_);
    if (!out_) throw CliFailure{1, "cannot write " + tmp_.string()};
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out_ << ',';
      const bool quote = cells[k].find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        out_ << cells[k];
        continue;
      }
      out_ << '"';
      for (char c : cells[k]) out_ << (c == '"' ? "\"\"" : std::string(1, c));
      out_ << '"';
    }
    out_ << '\n';
  }

  void commit() {
    out_.close();
    if (!out_) throw CliFailure{1, "failed writing " + tmp_.string()};
    fs::rename(tmp_, path_);
  }

 private:
  fs::path path_;
  fs::path tmp_;
  std::ofstream out_;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string clock = "evals";
  bool quiet = false;

  fs::path output(const std::string& file) const {
    std::string dir = out_dir;
    if (dir.empty()) {
      const char* env = std::getenv("IMPD_OUTPUT_DIR");
      dir = env && *env ? env : ".";
    }
    fs::create_directories(dir);
    return fs::path(dir) / file;
  }
  impd_clock clock_mode() const { return clock == "wall" ? IMPD_CLOCK_WALL : IMPD_CLOCK_EVALS; }
  std::string time_column() const { return clock == "wall" ? "time_seconds" : "propagations"; }
  void log(const std::string& line) const {
    if (!quiet) std::cerr << line << '\n';
  }
};

void add_saa_options(CLI::App* app, impd_saa_params& saa) {
  app->add_option("--batch-size", saa.batch_size, "SAA realizations per batch (N)")->capture_default_str();
  app->add_option("--batch-count", saa.batch_count, "SAA batches (M)")->capture_default_str();
  app->add_option("--eval-size", saa.eval_size, "SAA second-stage sample (N')")->capture_default_str();
  app->add_option("--final-size", saa.final_size, "SAA third-stage sample (N'')")->capture_default_str();
}

// ---- generate ----

struct GenerateArgs {
  impd_instance_spec spec{};
  std::string name = "instance";
  std::string cost_mode = "cardinality";
  std::string budget_rule = "explicit";
  std::vector<double> cost_set{10.0, 15.0, 20.0};
  int count = 1;
};

void run_generate(const Globals& g, GenerateArgs& a) {
  a.spec.cost_mode = a.cost_mode == "cardinality" ? IMPD_CARDINALITY : IMPD_COST_BASED;
  a.spec.budget_rule = a.budget_rule == "explicit"          ? IMPD_BUDGET_EXPLICIT
                       : a.budget_rule == "leader-fraction" ? IMPD_BUDGET_LEADER_FRACTION
                                                            : IMPD_BUDGET_SEED_FRACTION;
  a.spec.cost_set = a.cost_set.data();
  a.spec.cost_set_len = a.cost_set.size();
  if (a.count == 0) g.log("warning: --count 0, nothing generated");
  CsvFile manifest(g.output("instances.csv"), {"instance", "file", "n", "m", "density", "cost_mode", "C", "E",
                                               "rng_seed"});
  for (int i = 0; i < a.count; ++i) {
    const std::string name = a.count == 1 ? a.name : a.name + "_" + std::to_string(i + 1);
    a.spec.name = name.c_str();
    a.spec.rng_seed = g.seed + static_cast<std::uint64_t>(i);
    impd_instance* raw = nullptr;
    check(impd_instance_generate(&a.spec, &raw), "generating " + name);
    Instance inst(raw);
    const fs::path file = g.output(name + ".impd");
    check(impd_instance_save(inst.get(), file.string().c_str()), "saving " + name);
    const auto info = info_of(inst.get());
    manifest.row({name, file.filename().string(), std::to_string(info.node_count), std::to_string(info.arc_count),
                  real(info.density, 4), a.cost_mode, real(info.leader_budget, 2), real(info.follower_budget, 2),
                  std::to_string(a.spec.rng_seed)});
    g.log("wrote " + file.string());
  }
  manifest.commit();
}

// ---- eval-follower ----

struct EvalArgs {
  std::vector<std::string> instances;
  impd_saa_params saa{};
  std::string seed_set;
  int seed_size = -1;
  int repeats = 1;
};

void run_eval(const Globals& g, EvalArgs& a) {
  if (a.instances.empty()) g.log("warning: no instances given");
  CsvFile csv(g.output("eval_follower.csv"),
              {"instance", "n", "m", "C", "E", "repeat", "rng_seed", "seed_set", "UB", "LB", "gap_pct", "ci_lo", "ci_hi", "dof",
               "var_ub", "var_lb", "response", g.time_column()});
  for (const auto& path : a.instances) {
    Instance inst = load(path);
    const auto info = info_of(inst.get());
    const std::string name = instance_name(inst.get());
    for (int rep = 0; rep < a.repeats; ++rep) {
      std::vector<int32_t> seed;
      if (!a.seed_set.empty()) {
        seed = parse_ids(a.seed_set);
      } else {
        const int k = a.seed_size >= 0 ? a.seed_size
                                        : static_cast<int>(std::floor(info.leader_budget / info.max_activation_cost + 1e-9));
        seed.resize(static_cast<std::size_t>(k));
        check(impd_random_seed_set(inst.get(), seed.size(), g.seed + static_cast<std::uint64_t>(rep), seed.data()),
              "drawing a seed set");
      }
      impd_saa_params saa = a.saa;
      saa.rng_seed = g.seed + static_cast<std::uint64_t>(rep);
      impd_saa_summary s{};
      std::vector<int32_t> response(seed.size());
      check(impd_saa_evaluate(inst.get(), seed.data(), seed.size(), &saa, &s, response.data(), response.size()),
            "evaluating " + name);
      response.resize(s.response_len);
      const std::string time = g.clock == "wall" ? real(s.wall_seconds, 3) : std::to_string(s.propagations);
      csv.row({name, std::to_string(info.node_count), std::to_string(info.arc_count), real(info.leader_budget, 2),
               real(info.follower_budget, 2), std::to_string(rep), std::to_string(saa.rng_seed), ids_text(seed), real(s.upper_bound, 4),
               real(s.lower_bound, 4), real(s.gap_percent, 2), s.ci_defined ? real(s.ci_lo, 2) : "nan",
               s.ci_defined ? real(s.ci_hi, 2) : "nan", std::isinf(s.dof) ? "inf" : real(s.dof, 2),
               real(s.variance_upper, 6), real(s.variance_lower, 6), ids_text(response), time});
      g.log(name + ": UB " + real(s.upper_bound, 4) + " LB " + real(s.lower_bound, 4) + " gap " +
            real(s.gap_percent, 2) + "%");
    }
  }
  csv.commit();
}

// ---- solve ----

struct SolveArgs {
  std::vector<std::string> instances;
  std::vector<std::string> solvers{"enum", "sam", "tsm"};
  impd_saa_params saa{};
  impd_sam_params sam{};
  impd_tsm_params tsm{};
  std::string initial = "auto";
  std::size_t score_samples = 50;
  double t_max = -1.0;
  double checkpoint = -1.0;
  std::vector<double> checkpoints;
  int replications = 1;
  bool trace = false;
};

struct RunRecord {
  std::string solver;
  int replication = 0;
  Result result;
};

std::vector<int32_t> best_of(const impd_result* r) {
  std::vector<int32_t> ids(impd_result_best(r, nullptr, 0));
  impd_result_best(r, ids.data(), ids.size());
  return ids;
}

std::string stop_reason(const impd_result* r) {
  std::string text(impd_result_stop_reason(r, nullptr, 0), '\0');
  impd_result_stop_reason(r, text.data(), text.size() + 1);
  return text;
}

void write_trace(const Globals& g, const std::string& name, const std::string& solver, int rep,
                 const impd_result* r) {
  impd_result_summary s{};
  check(impd_result_get_summary(r, &s), "result summary");
  CsvFile csv(g.output("trace_" + name + "_" + solver + "_" + std::to_string(rep) + ".csv"),
              {g.clock == "wall" ? "elapsed_seconds" : "elapsed_evals", "iteration", "incumbent", "current",
               solver == "sam" ? "temperature" : "tau", "move", "accepted", "current_set"});
  static const char* moves[] = {"add", "drop", "swap"};
  for (std::size_t i = 0; i < s.trace_count; ++i) {
    impd_trace_row t{};
    check(impd_result_trace_row(r, i, &t), "trace row");
    std::vector<int32_t> ids(impd_result_trace_seed(r, i, nullptr, 0));
    impd_result_trace_seed(r, i, ids.data(), ids.size());
    csv.row({g.clock == "wall" ? real(t.elapsed, 3) : real(t.elapsed, 0), std::to_string(t.iteration),
             real(t.incumbent, 4), real(t.current, 4), real(t.control, 6), moves[t.move], std::to_string(t.accepted),
             ids_text(ids)});
  }
  csv.commit();
}

void run_solve(const Globals& g, SolveArgs& a) {
  const bool wall = g.clock == "wall";
  const double t_max = a.t_max >= 0.0 ? a.t_max : (wall ? 60.0 : 1000.0);
  const double interval = a.checkpoint > 0.0 ? a.checkpoint : (wall ? 60.0 : t_max / 3.0);
  const std::vector<double> checkpoint_times = [&] {
    std::vector<double> out;
    if (!a.checkpoints.empty()) {
      for (double c : a.checkpoints) {
        if (c <= t_max) out.push_back(c);
      }
      return out;
    }
    for (int k = 1; interval > 0.0 && interval * k <= t_max * (1.0 + 1e-12); ++k) out.push_back(interval * k);
    return out;
  }();
  const impd_initial initial = a.initial == "score" ? IMPD_INITIAL_SCORE
                               : a.initial == "cost" ? IMPD_INITIAL_COST
                                                     : IMPD_INITIAL_AUTO;
  auto common = [&](int rep) {
    impd_search_common c{};
    c.clock = g.clock_mode();
    c.t_max = t_max;
    c.checkpoint_interval = interval > 0.0 ? interval : 1.0;
    c.checkpoints = checkpoint_times.data();
    c.checkpoint_count = checkpoint_times.size();
    c.initial = initial;
    c.score_samples = a.score_samples;
    c.score_seed = g.seed;
    c.rng_seed = g.seed + static_cast<std::uint64_t>(rep);
    return c;
  };

  CsvFile summary(g.output("solve_summary.csv"),
                  {"instance", "n", "m", "C", "E", "solver", "replication", "rng_seed", "value", "gap_vs_enum_pct", "seed_set",
                   "evaluations", "iterations", wall ? "time_seconds" : "time_evals", "stop_reason", "moves_add",
                   "moves_drop", "moves_swap"});
  CsvFile checkpoints(g.output("checkpoints.csv"), {"instance", "solver", "replication", "checkpoint",
                                                    wall ? "at_seconds" : "at_evals", "incumbent",
                                                    "gap_vs_enum_pct"});
  CsvFile delta(g.output("delta.csv"),
                {"instance", "replication", "checkpoint", wall ? "at_seconds" : "at_evals", "z_sam", "z_tsm",
                 "delta_pct"});

  int guard_failures = 0;
  for (const auto& path : a.instances) {
    Instance inst = load(path);
    const auto info = info_of(inst.get());
    const std::string name = instance_name(inst.get());
    impd_saa_params saa = a.saa;
    saa.rng_seed = g.seed;
    impd_objective* raw_obj = nullptr;
    check(impd_objective_create(inst.get(), &saa, &raw_obj), "creating objective");
    Objective objective(raw_obj);

    std::vector<RunRecord> runs;
    bool have_enum = false;
    double enum_value = 0.0;
    for (const auto& solver : a.solvers) {
      if (solver == "enum") {
        impd_result* r = nullptr;
        const impd_status st = impd_solve_enumeration(inst.get(), objective.get(), &r);
        if (st == IMPD_ERR_GUARD) {
          std::cerr << "impd: " << name << ": " << impd_last_error() << '\n';
          ++guard_failures;
          continue;
        }
        check(st, "enumerating " + name);
        runs.push_back({"enum", 0, Result(r)});
        impd_result_summary s{};
        check(impd_result_get_summary(r, &s), "result summary");
        have_enum = true;
        enum_value = s.best_value;
        continue;
      }
      for (int rep = 0; rep < a.replications; ++rep) {
        impd_result* r = nullptr;
        if (solver == "sam") {
          impd_sam_params p = a.sam;
          p.common = common(rep);
          check(impd_solve_sam(inst.get(), objective.get(), &p, &r), "SAM on " + name);
        } else {
          impd_tsm_params p = a.tsm;
          p.common = common(rep);
          check(impd_solve_tsm(inst.get(), objective.get(), &p, &r), "TSM on " + name);
        }
        runs.push_back({solver, rep, Result(r)});
      }
    }

    auto gap_text = [&](double v) {
      if (!have_enum) return std::string("nan");
      if (enum_value == 0.0) return std::string(v == 0.0 ? "0.0000" : "nan");
      return real(100.0 * (enum_value - v) / enum_value, 4);
    };

    std::map<std::pair<std::string, int>, std::vector<double>> incumbents;
    for (const auto& run : runs) {
      impd_result_summary s{};
      check(impd_result_get_summary(run.result.get(), &s), "result summary");
      const std::string time = wall ? real(s.wall_seconds, 3) : real(s.elapsed, 0);
      summary.row({name, std::to_string(info.node_count), std::to_string(info.arc_count),
                   real(info.leader_budget, 2), real(info.follower_budget, 2), run.solver,
                   std::to_string(run.replication),
                   std::to_string(run.solver == "enum" ? g.seed : g.seed + static_cast<std::uint64_t>(run.replication)),
                   real(s.best_value, 4), gap_text(s.best_value),
                   ids_text(best_of(run.result.get())), std::to_string(s.evaluations), std::to_string(s.iterations),
                   time, stop_reason(run.result.get()), std::to_string(s.move_counts[0]),
                   std::to_string(s.move_counts[1]), std::to_string(s.move_counts[2])});
      if (run.solver == "enum") continue;
      auto& values = incumbents[{run.solver, run.replication}];
      for (std::size_t k = 0; k < s.checkpoint_count; ++k) {
        double at = 0.0, value = 0.0;
        check(impd_result_checkpoint(run.result.get(), k, &at, &value), "checkpoint");
        checkpoints.row({name, run.solver, std::to_string(run.replication), std::to_string(k + 1),
                         wall ? real(at, 3) : real(at, 0), real(value, 4), gap_text(value)});
        values.push_back(value);
      }
      checkpoints.row({name, run.solver, std::to_string(run.replication), "final",
                       wall ? real(s.wall_seconds, 3) : real(s.elapsed, 0), real(s.best_value, 4),
                       gap_text(s.best_value)});
      values.push_back(s.best_value);
      if (a.trace) write_trace(g, name, run.solver, run.replication, run.result.get());
    }

    for (int rep = 0; rep < a.replications; ++rep) {
      auto sam = incumbents.find({"sam", rep});
      auto tsm = incumbents.find({"tsm", rep});
      if (sam == incumbents.end() || tsm == incumbents.end()) continue;
      for (std::size_t k = 0; k < sam->second.size() && k < tsm->second.size(); ++k) {
        const bool final = k + 1 == sam->second.size();
        double d = std::nan("");
        if (sam->second[k] > 0.0) check(impd_compare_delta(sam->second[k], tsm->second[k], &d), "delta");
        delta.row({name, std::to_string(rep), final ? "final" : std::to_string(k + 1),
                   final ? "" : (wall ? real(checkpoint_times[k], 3) : real(checkpoint_times[k], 0)),
                   real(sam->second[k], 4), real(tsm->second[k], 4), real(d, 2)});
      }
    }
    g.log(name + ": solved with " + std::to_string(impd_objective_evaluations(objective.get())) +
          " distinct SAA evaluations");
  }
  summary.commit();
  checkpoints.commit();
  delta.commit();
  if (guard_failures) throw CliFailure{2, "complete enumeration skipped on " + std::to_string(guard_failures) +
                                              " instance(s): guard exceeded"};
}

// ---- ingest ----

struct IngestArgs {
  std::string edges;
  std::string name = "ingested";
  std::string weights = "inverse-outdegree";
  int subgraph = 0;
  double leader_budget = 5.0;
  double follower_budget = 1.0;
};

void run_ingest(const Globals& g, IngestArgs& a) {
  impd_instance* raw = nullptr;
  impd_ingest_stats stats{};
  check(impd_instance_from_edge_list(a.edges.c_str(), a.name.c_str(),
                                     a.weights == "uniform" ? IMPD_WEIGHT_UNIFORM : IMPD_WEIGHT_INVERSE_OUTDEGREE,
                                     g.seed, a.subgraph, a.leader_budget, a.follower_budget, &raw, &stats),
        "ingesting " + a.edges);
  Instance inst(raw);
  const fs::path file = g.output(a.name + ".impd");
  check(impd_instance_save(inst.get(), file.string().c_str()), "saving " + a.name);
  const auto info = info_of(inst.get());
  CsvFile csv(g.output("ingest.csv"), {"instance", "file", "lines", "arcs_read", "parallel_removed",
                                       "self_loops_dropped", "warnings", "n", "m", "avg_out_degree"});
  csv.row({a.name, file.filename().string(), std::to_string(stats.lines), std::to_string(stats.arcs_read),
           std::to_string(stats.parallel_removed), std::to_string(stats.self_loops_dropped),
           std::to_string(stats.warnings), std::to_string(info.node_count), std::to_string(info.arc_count),
           real(info.node_count ? static_cast<double>(info.arc_count) / info.node_count : 0.0, 3)});
  csv.commit();
  g.log("wrote " + file.string());
}

// ---- export-lp ----

struct ExportArgs {
  std::string instance;
  std::string seed_set;
  std::size_t realizations = 1;
  double epsilon = 1e-6;
  std::string output;
};

void run_export(const Globals& g, ExportArgs& a) {
  Instance inst = load(a.instance);
  const std::vector<int32_t> seed = parse_ids(a.seed_set);
  const fs::path file = a.output.empty() ? g.output(instance_name(inst.get()) + ".lp") : fs::path(a.output);
  check(impd_export_allp_lp(inst.get(), seed.data(), seed.size(), a.realizations, g.seed, a.epsilon,
                            file.string().c_str()),
        "exporting LP");
  g.log("wrote " + file.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence maximization with deactivation: instance generation, follower evaluation and leader search"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "global random seed")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "output directory (default: $IMPD_OUTPUT_DIR or .)");
  app.add_option("--clock", g.clock, "search clock: evals (reproducible) or wall")
      ->check(CLI::IsMember({"evals", "wall"}))
      ->capture_default_str();
  app.add_flag("-q,--quiet", g.quiet, "no progress messages");

  GenerateArgs gen;
  impd_instance_spec_default(&gen.spec);
  auto* generate = app.add_subcommand("generate", "generate Watts-Strogatz instances");
  generate->add_option("--name", gen.name)->capture_default_str();
  generate->add_option("-n,--nodes", gen.spec.node_count)->capture_default_str();
  generate->add_option("--density", gen.spec.density, "m / (n (n-1))")->capture_default_str();
  generate->add_option("--rewire", gen.spec.rewire_prob)->capture_default_str();
  generate->add_option("--cost-mode", gen.cost_mode)
      ->check(CLI::IsMember({"cardinality", "cost-based"}))
      ->capture_default_str();
  generate->add_option("--cost-set", gen.cost_set, "activation/deactivation cost levels")->delimiter(',');
  generate->add_option("--budget-rule", gen.budget_rule)
      ->check(CLI::IsMember({"explicit", "leader-fraction", "seed-fraction"}))
      ->capture_default_str();
  generate->add_option("-C,--leader-budget", gen.spec.leader_budget)->capture_default_str();
  generate->add_option("-E,--follower-budget", gen.spec.follower_budget)->capture_default_str();
  generate->add_option("--leader-fraction", gen.spec.leader_fraction)->capture_default_str();
  generate->add_option("--follower-fraction", gen.spec.follower_fraction)->capture_default_str();
  generate->add_option("--seed-fraction", gen.spec.seed_fraction)->capture_default_str();
  generate->add_option("--count", gen.count, "instances to generate; seeds are --seed, --seed+1, ...")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  EvalArgs ev;
  impd_saa_params_default(&ev.saa);
  auto* eval = app.add_subcommand("eval-follower", "estimate the follower response to a seed set by SAA");
  eval->add_option("-i,--instance", ev.instances, "instance files");
  add_saa_options(eval, ev.saa);
  eval->add_option("--seed-set", ev.seed_set, "leader seed, e.g. \"0 4 7\" (default: random)");
  eval->add_option("--seed-size", ev.seed_size, "random seed size (default: most nodes any draw can afford, floor(C / max c))");
  eval->add_option("--repeats", ev.repeats, "independent repeats per instance")->capture_default_str();

  SolveArgs sv;
  impd_saa_params_default(&sv.saa);
  impd_sam_params_default(&sv.sam);
  impd_tsm_params_default(&sv.tsm);
  auto* solve = app.add_subcommand("solve", "run complete enumeration, SAM and TSM");
  solve->add_option("-i,--instance", sv.instances, "instance files")->required();
  solve->add_option("--solver", sv.solvers, "enum, sam, tsm")
      ->check(CLI::IsMember({"enum", "sam", "tsm"}))
      ->delimiter(',')
      ->capture_default_str();
  add_saa_options(solve, sv.saa);
  solve->add_option("--p0", sv.sam.p0, "SAM initial acceptance probability")->capture_default_str();
  solve->add_option("--cooling", sv.sam.cooling, "SAM cooling ratio r")->capture_default_str();
  solve->add_option("--growth", sv.sam.growth, "SAM cycle growth gamma")->capture_default_str();
  solve->add_option("--phi", sv.sam.accept_threshold, "SAM acceptance threshold")->capture_default_str();
  solve->add_option("--temperature-samples", sv.sam.temperature_samples)->capture_default_str();
  solve->add_option("--tau", sv.tsm.tau, "TSM candidate fraction")->capture_default_str();
  solve->add_option("--mu", sv.tsm.mu, "TSM frequency penalty")->capture_default_str();
  solve->add_option("--initial", sv.initial)->check(CLI::IsMember({"auto", "score", "cost"}))->capture_default_str();
  solve->add_option("--score-samples", sv.score_samples, "realizations for node scores")->capture_default_str();
  solve->add_option("--t-max", sv.t_max, "time limit (default 1000 evals or 60 s)");
  solve->add_option("--checkpoint", sv.checkpoint, "checkpoint interval (default t_max/3 evals or 60 s)");
  solve->add_option("--checkpoints", sv.checkpoints, "explicit checkpoint times")->delimiter(',');
  solve->add_option("--replications", sv.replications)->check(CLI::PositiveNumber)->capture_default_str();
  solve->add_flag("--trace", sv.trace, "write per-iteration trace CSVs");

  IngestArgs in;
  auto* ingest = app.add_subcommand("ingest", "build a cardinality instance from an edge list");
  ingest->add_option("--edges", in.edges, "edge list: tail head [weight]")->required();
  ingest->add_option("--name", in.name)->capture_default_str();
  ingest->add_option("--weights", in.weights, "weight for arcs without one")
      ->check(CLI::IsMember({"inverse-outdegree", "uniform"}))
      ->capture_default_str();
  ingest->add_option("--subgraph", in.subgraph, "keep this many nodes of largest out-degree (0: all)")
      ->capture_default_str();
  ingest->add_option("-C,--leader-budget", in.leader_budget)->capture_default_str();
  ingest->add_option("-E,--follower-budget", in.follower_budget)->capture_default_str();

  ExportArgs ex;
  auto* lp = app.add_subcommand("export-lp", "write the follower problem for one seed in LP format");
  lp->add_option("-i,--instance", ex.instance)->required();
  lp->add_option("--seed-set", ex.seed_set, "leader seed, e.g. \"0 3\"")->required();
  lp->add_option("--realizations", ex.realizations)->capture_default_str();
  lp->add_option("--epsilon", ex.epsilon)->capture_default_str();
  lp->add_option("-o,--output", ex.output, "LP file (default <out-dir>/<instance>.lp)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*generate) run_generate(g, gen);
    if (*eval) run_eval(g, ev);
    if (*solve) run_solve(g, sv);
    if (*ingest) run_ingest(g, in);
    if (*lp) run_export(g, ex);
  } catch (const CliFailure& f) {
    std::cerr << "impd: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "impd: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
