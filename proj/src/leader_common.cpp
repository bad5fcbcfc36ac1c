#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "impd/error.hpp"
#include "impd/leader.hpp"

namespace impd {

SaaObjective::SaaObjective(const ImpdInstance& inst, const SaaParams& params) : evaluator_(inst, params) {}

double SaaObjective::value(const SeedSet& seed) {
  if (auto it = memo_.find(seed); it != memo_.end()) return it->second;
  const SaaReport report = evaluator_.evaluate(seed);
  propagations_ += report.propagations;
  memo_.emplace(seed, report.upper_bound);
  return report.upper_bound;
}

double pseudo_objective(const ImpdInstance& inst, const SeedSet& seed, double z_hat) {
  return z_hat + (inst.leader_budget - inst.activation_cost(seed)) / inst.mean_activation_cost();
}

bool VisitedMemory::insert(const SeedSet& seed) {
  if (!sets_.insert(seed).second) return false;
  for (NodeId v : seed.members()) {
    if (static_cast<std::size_t>(v) >= counts_.size()) counts_.resize(static_cast<std::size_t>(v) + 1, 0);
    ++counts_[v];
  }
  return true;
}

double VisitedMemory::frequency(NodeId v) const {
  if (sets_.empty() || v < 0 || static_cast<std::size_t>(v) >= counts_.size()) return 0.0;
  return static_cast<double>(counts_[v]) / static_cast<double>(sets_.size());
}

std::vector<double> VisitedMemory::frequencies() const {
  std::vector<double> out(counts_.size());
  for (std::size_t v = 0; v < counts_.size(); ++v) out[v] = frequency(static_cast<NodeId>(v));
  return out;
}

bool is_eligible(const ImpdInstance& inst, const SeedSet& seed, const VisitedMemory* visited) {
  if (!inst.leader_feasible(seed)) return false;
  if (within_budget(inst.deactivation_cost(seed), inst.follower_budget)) return false;
  return !(visited && visited->contains(seed));
}

const char* to_string(InitialMethod method) {
  switch (method) {
    case InitialMethod::Auto: return "auto";
    case InitialMethod::Score: return "score";
    case InitialMethod::Cost: return "cost";
  }
  return "?";
}

InitialMethod parse_initial_method(const std::string& text) {
  if (text == "auto") return InitialMethod::Auto;
  if (text == "score") return InitialMethod::Score;
  if (text == "cost") return InitialMethod::Cost;
  fail(ErrorKind::InvalidArgument, "unknown initial method '" + text + "'");
}

std::vector<double> node_scores(const ImpdInstance& inst, std::size_t samples, std::uint64_t rng_seed) {
  if (samples == 0) fail(ErrorKind::InvalidArgument, "score sample size must be at least 1");
  Rng rng = make_rng(rng_seed, "init-score");
  const ThresholdSample sample = draw_thresholds(inst, samples, rng);
  std::vector<double> scores(static_cast<std::size_t>(inst.node_count()));
  for (NodeId v = 0; v < inst.node_count(); ++v) scores[v] = spread(inst.graph, SeedSet{v}, {}, sample);
  return scores;
}

namespace {

SeedSet take_while_fits(const ImpdInstance& inst, const std::vector<NodeId>& order) {
  SeedSet seed;
  double spent = 0.0;
  for (NodeId v : order) {
    if (!within_budget(spent + inst.activation_costs[v], inst.leader_budget)) break;
    spent += inst.activation_costs[v];
    seed.insert(v);
  }
  return seed;
}

std::vector<NodeId> all_nodes(const ImpdInstance& inst) {
  std::vector<NodeId> order(static_cast<std::size_t>(inst.node_count()));
  std::iota(order.begin(), order.end(), 0);
  return order;
}

}  // namespace

SeedSet initial_solution_score(const ImpdInstance& inst, std::size_t samples, std::uint64_t rng_seed) {
  const auto scores = node_scores(inst, samples, rng_seed);
  auto order = all_nodes(inst);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });
  if (inst.cost_mode == CostMode::CostBased) {
    order.resize((order.size() + 1) / 2);
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      return inst.activation_costs[a] / inst.deactivation_costs[a] < inst.activation_costs[b] / inst.deactivation_costs[b];
    });
  }
  return take_while_fits(inst, order);
}

SeedSet initial_solution_cost(const ImpdInstance& inst) {
  auto order = all_nodes(inst);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (inst.activation_costs[a] != inst.activation_costs[b]) return inst.activation_costs[a] < inst.activation_costs[b];
    return inst.deactivation_costs[a] > inst.deactivation_costs[b];
  });
  return take_while_fits(inst, order);
}

SeedSet initial_solution(const ImpdInstance& inst, const InitialParams& params) {
  InitialMethod method = params.method;
  if (method == InitialMethod::Auto) {
    method = inst.cost_mode == CostMode::Cardinality ? InitialMethod::Score : InitialMethod::Cost;
  }
  if (method == InitialMethod::Score) return initial_solution_score(inst, params.score_samples, params.score_seed);
  return initial_solution_cost(inst);
}

const char* to_string(MoveType move) {
  switch (move) {
    case MoveType::Add: return "add";
    case MoveType::Drop: return "drop";
    case MoveType::Swap: return "swap";
  }
  return "?";
}

SeedSet apply_move(const SeedSet& seed, const Move& move) {
  SeedSet out = seed;
  if (move.type != MoveType::Add) out.erase(move.out);
  if (move.type != MoveType::Drop) out.insert(move.in);
  return out;
}

std::vector<MoveType> allowed_moves(const ImpdInstance& inst) {
  if (inst.cost_mode == CostMode::Cardinality) return {MoveType::Swap};
  return {MoveType::Add, MoveType::Drop, MoveType::Swap};
}

std::vector<Move> eligible_moves(const ImpdInstance& inst, const SeedSet& seed, MoveType type,
                                 const VisitedMemory* visited) {
  std::vector<Move> out;
  auto consider = [&](Move m) {
    if (is_eligible(inst, apply_move(seed, m), visited)) out.push_back(m);
  };
  switch (type) {
    case MoveType::Add:
      for (NodeId j = 0; j < inst.node_count(); ++j) {
        if (!seed.contains(j)) consider({MoveType::Add, -1, j});
      }
      break;
    case MoveType::Drop:
      for (NodeId i : seed.members()) consider({MoveType::Drop, i, -1});
      break;
    case MoveType::Swap:
      for (NodeId i : seed.members()) {
        for (NodeId j = 0; j < inst.node_count(); ++j) {
          if (!seed.contains(j)) consider({MoveType::Swap, i, j});
        }
      }
      break;
  }
  return out;
}

bool metropolis_accept(double delta, double temperature, Rng& rng) {
  return delta >= 0.0 || std::exp(delta / temperature) > uniform01(rng);
}

double temperature_from_delta(double mean_delta, double p0) {
  if (!(p0 > 0.0 && p0 < 1.0)) fail(ErrorKind::InvalidArgument, "p0 must lie in (0, 1)");
  if (mean_delta == 0.0) return 1.0;
  return -mean_delta / std::log(p0);
}

const char* to_string(ClockMode mode) { return mode == ClockMode::Wall ? "wall" : "evals"; }

ClockMode parse_clock_mode(const std::string& text) {
  if (text == "wall") return ClockMode::Wall;
  if (text == "evals") return ClockMode::Evaluations;
  fail(ErrorKind::InvalidArgument, "unknown clock mode '" + text + "'");
}

std::vector<double> SearchLimits::checkpoint_times() const {
  std::vector<double> out;
  if (!checkpoints.empty()) {
    for (double c : checkpoints) {
      if (c <= t_max) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  for (std::size_t k = 1;; ++k) {
    const double c = checkpoint_interval * static_cast<double>(k);
    if (c > t_max * (1.0 + 1e-12)) break;
    out.push_back(c);
  }
  return out;
}

void SearchLimits::validate() const {
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) fail(ErrorKind::InvalidArgument, "t_max must be a finite value >= 0");
  if (!(checkpoint_interval > 0.0)) fail(ErrorKind::InvalidArgument, "checkpoint interval must be positive");
  for (double c : checkpoints) {
    if (!(c > 0.0)) fail(ErrorKind::InvalidArgument, "checkpoint times must be positive");
  }
}

void SamParams::validate() const {
  if (!(p0 > 0.0 && p0 < 1.0)) fail(ErrorKind::InvalidArgument, "p0 must lie in (0, 1)");
  if (!(cooling > 0.0 && cooling < 1.0)) fail(ErrorKind::InvalidArgument, "cooling ratio r must lie in (0, 1)");
  if (!(growth > 0.0)) fail(ErrorKind::InvalidArgument, "cycle growth gamma must be positive");
  if (!(accept_threshold > 0.0 && accept_threshold < 1.0)) {
    fail(ErrorKind::InvalidArgument, "acceptance threshold phi must lie in (0, 1)");
  }
  if (temperature_samples == 0) fail(ErrorKind::InvalidArgument, "temperature samples must be at least 1");
  limits.validate();
}

void TsmParams::validate() const {
  if (!(tau > 0.0 && tau <= 1.0)) fail(ErrorKind::InvalidArgument, "tau must lie in (0, 1]");
  if (!(mu >= 0.0)) fail(ErrorKind::InvalidArgument, "mu must be non-negative");
  limits.validate();
}

double compare_delta(double z_sam, double z_tsm) {
  if (!(z_sam > 0.0)) fail(ErrorKind::InvalidArgument, "delta is undefined for a SAM value of 0");
  return 100.0 * (z_tsm - z_sam) / z_sam;
}

double relative_gap(double reference, double value) {
  if (reference == 0.0) return value == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  return 100.0 * (reference - value) / reference;
}

}  // namespace impd
