#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "impd/follower.hpp"
#include "impd/graph.hpp"
#include "impd/instance.hpp"
#include "impd/node_set.hpp"
#include "impd/rng.hpp"

namespace impd {

/// Leader-side objective: the follower-adjusted spread of a seed set.
class SeedObjective {
 public:
  virtual ~SeedObjective() = default;
  virtual double value(const SeedSet& seed) = 0;
};

/// z_SAA through one SaaEvaluator, memoized per seed set. All seeds share the
/// evaluator's threshold samples.
class SaaObjective : public SeedObjective {
 public:
  SaaObjective(const ImpdInstance& inst, const SaaParams& params);

  double value(const SeedSet& seed) override;

  /// Distinct seeds actually run through SAA.
  std::size_t evaluations() const noexcept { return memo_.size(); }
  std::uint64_t propagations() const noexcept { return propagations_; }
  const SaaEvaluator& evaluator() const noexcept { return evaluator_; }

 private:
  SaaEvaluator evaluator_;
  std::unordered_map<SeedSet, double, NodeSubsetHash> memo_;
  std::uint64_t propagations_ = 0;
};

class FunctionObjective : public SeedObjective {
 public:
  explicit FunctionObjective(std::function<double(const SeedSet&)> fn) : fn_(std::move(fn)) {}
  double value(const SeedSet& seed) override { return fn_(seed); }

 private:
  std::function<double(const SeedSet&)> fn_;
};

/// z_hat + (C - c(S)) / c_bar.
double pseudo_objective(const ImpdInstance& inst, const SeedSet& seed, double z_hat);

/// Every seed set a search has generated, with per-node visit counts for the
/// frequency memory.
class VisitedMemory {
 public:
  explicit VisitedMemory(NodeId node_count = 0) : counts_(static_cast<std::size_t>(node_count), 0) {}

  /// False when the set was already present.
  bool insert(const SeedSet& seed);
  bool contains(const SeedSet& seed) const { return sets_.contains(seed); }
  std::size_t size() const noexcept { return sets_.size(); }

  /// Share of visited sets containing `v`; 0 before the first visit.
  double frequency(NodeId v) const;
  std::vector<double> frequencies() const;

 private:
  std::unordered_set<SeedSet, NodeSubsetHash> sets_;
  std::vector<std::size_t> counts_;
};

/// c(S) <= C, S not visited, and e(S) > E. `visited` may be null.
bool is_eligible(const ImpdInstance& inst, const SeedSet& seed, const VisitedMemory* visited);

/// Guard on the number of leader subsets the enumeration may have to walk.
inline constexpr double kEnumerationLimit = 5e6;

/// Upper bound on the subsets walked: sum over k <= floor(C / min c) of
/// binomial(n, k).
double enumeration_size_estimate(const ImpdInstance& inst);

/// Every nonempty feasible seed with no feasible proper superset, once each.
/// Sets avoiding lower ids come first. Throws Guard above kEnumerationLimit.
void enumerate_maximal_seeds(const ImpdInstance& inst, const std::function<void(const SeedSet&)>& visit);
std::vector<SeedSet> maximal_seeds(const ImpdInstance& inst);

struct EnumerationResult {
  SeedSet seed;
  double value = 0.0;
  std::size_t evaluated = 0;
  double wall_seconds = 0.0;
};

/// Argmax of the objective over maximal seeds; ties keep the first found.
EnumerationResult solve_complete_enumeration(const ImpdInstance& inst, SeedObjective& objective);
EnumerationResult solve_complete_enumeration(const ImpdInstance& inst, const SaaParams& saa);

enum class InitialMethod {
  Auto,   // Score for cardinality instances, Cost for cost-based ones
  Score,
  Cost,
};

const char* to_string(InitialMethod method);
InitialMethod parse_initial_method(const std::string& text);

struct InitialParams {
  InitialMethod method = InitialMethod::Auto;
  std::size_t score_samples = 50;  // realizations per singleton score
  std::uint64_t score_seed = 1;    // root of the ("init-score", 0) stream
};

/// Spread of each singleton seed with no deactivation.
std::vector<double> node_scores(const ImpdInstance& inst, std::size_t samples, std::uint64_t rng_seed);

/// Nodes by nonincreasing score (ties by id); cost-based instances keep the
/// top ceil(n/2) and re-sort them by c/e ascending. Nodes are then taken from
/// the head until the next one no longer fits C.
SeedSet initial_solution_score(const ImpdInstance& inst, std::size_t samples, std::uint64_t rng_seed);

/// Nodes by c ascending, ties by e descending then id; taken from the head
/// until the next one no longer fits C.
SeedSet initial_solution_cost(const ImpdInstance& inst);

SeedSet initial_solution(const ImpdInstance& inst, const InitialParams& params);

enum class MoveType { Add = 0, Drop = 1, Swap = 2 };

const char* to_string(MoveType move);

struct Move {
  MoveType type = MoveType::Add;
  NodeId out = -1;  // removed node, Drop and Swap
  NodeId in = -1;   // added node, Add and Swap
};

SeedSet apply_move(const SeedSet& seed, const Move& move);

/// Swap only for cardinality instances, all three types otherwise.
std::vector<MoveType> allowed_moves(const ImpdInstance& inst);

/// Moves of one type whose result is eligible. Order: Add by added id, Drop
/// by removed id, Swap by removed then added id.
std::vector<Move> eligible_moves(const ImpdInstance& inst, const SeedSet& seed, MoveType type,
                                 const VisitedMemory* visited);

/// True when delta >= 0, otherwise with probability exp(delta / temperature).
/// Draws a uniform only for worsening moves.
bool metropolis_accept(double delta, double temperature, Rng& rng);

/// -mean_delta / ln(p0), or 1 when mean_delta is 0.
double temperature_from_delta(double mean_delta, double p0);

struct TemperatureEstimate {
  double temperature = 1.0;
  double mean_delta = 0.0;
  std::size_t pairs = 0;
};

/// Mean |f(S') - f(S)| over `samples` random eligible seeds S, each with one
/// random eligible neighbour S'. Falls back to however many pairs could be
/// built; with none the temperature is 1.
TemperatureEstimate initial_temperature(const ImpdInstance& inst, SeedObjective& objective, double p0, Rng& rng,
                                        std::size_t samples = 20);

enum class ClockMode {
  Wall,         // seconds of wall time
  Evaluations,  // one tick per objective evaluation; reproducible
};

const char* to_string(ClockMode mode);
ClockMode parse_clock_mode(const std::string& text);

struct SearchLimits {
  ClockMode clock = ClockMode::Wall;
  double t_max = 60.0;
  double checkpoint_interval = 3600.0;
  std::vector<double> checkpoints;  // explicit times; replace the interval when set

  /// Checkpoint times up to t_max.
  std::vector<double> checkpoint_times() const;
  void validate() const;
};

struct SamParams {
  double p0 = 0.8;
  double cooling = 0.9;           // r
  double growth = 0.2;            // gamma
  double accept_threshold = 0.5;  // phi
  std::size_t temperature_samples = 20;
  InitialParams initial;
  SearchLimits limits;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

struct TsmParams {
  double tau = 0.5;
  double mu = 1.0;
  InitialParams initial;
  SearchLimits limits;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

struct TraceRow {
  double elapsed = 0.0;
  std::size_t iteration = 0;
  double incumbent = 0.0;
  double current = 0.0;
  double control = 0.0;  // temperature for SAM, tau for TSM
  MoveType move = MoveType::Add;
  bool accepted = false;
  SeedSet current_set;
};

struct Checkpoint {
  double at = 0.0;
  double incumbent = 0.0;
  SeedSet seed;
};

struct SearchResult {
  SeedSet best;
  double best_value = 0.0;
  SeedSet initial;
  double initial_value = 0.0;
  double initial_temperature = 0.0;  // SAM only
  std::vector<TraceRow> trace;
  std::vector<Checkpoint> checkpoints;
  std::vector<SeedSet> evaluated;  // in evaluation order, initial first
  std::array<std::size_t, 3> move_counts{};  // indexed by MoveType
  std::size_t iterations = 0;
  std::size_t evaluations = 0;  // includes temperature estimation
  double elapsed = 0.0;         // in the clock's unit
  double wall_seconds = 0.0;
  std::string stop_reason;
};

/// Simulated-annealing matheuristic. Throws Infeasible when the initial seed
/// is not eligible.
SearchResult sam_solve(const ImpdInstance& inst, SeedObjective& objective, const SamParams& params);

/// Tabu-search matheuristic with the path-length candidate list. Throws
/// Infeasible when the initial seed is not eligible.
SearchResult tsm_solve(const ImpdInstance& inst, SeedObjective& objective, const PathLengthMatrix& lengths,
                       const TsmParams& params);

/// 100 (z_tsm - z_sam) / z_sam; positive when TSM found the better seed.
double compare_delta(double z_sam, double z_tsm);

/// 100 (reference - value) / reference; 0 when both are 0, NaN when only
/// the reference is.
double relative_gap(double reference, double value);

}  // namespace impd
