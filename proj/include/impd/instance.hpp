#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "impd/diffusion.hpp"
#include "impd/graph.hpp"
#include "impd/node_set.hpp"
#include "impd/rng.hpp"

namespace impd {

enum class CostMode { Cardinality, CostBased };

const char* to_string(CostMode mode);
CostMode parse_cost_mode(const std::string& text);

/// One IMPD problem: graph, per-node costs and both budgets.
///
/// `fixed_thresholds`, when set, replaces random thresholds by one
/// deterministic vector; every sample drawn for the instance then repeats it.
struct ImpdInstance {
  std::string name;
  InfluenceGraph graph;
  CostMode cost_mode = CostMode::Cardinality;
  std::vector<double> activation_costs;
  std::vector<double> deactivation_costs;
  double leader_budget = 0.0;
  double follower_budget = 0.0;
  std::optional<std::vector<double>> fixed_thresholds;
  std::string provenance;

  NodeId node_count() const noexcept { return graph.node_count(); }
  /// Mean activation cost over all nodes.
  double mean_activation_cost() const;
  double activation_cost(const SeedSet& s) const;
  double deactivation_cost(const SeedSet& s) const;
  bool leader_feasible(const SeedSet& s) const;

  /// Throws InvalidArgument when a size, cost or budget is inconsistent.
  void validate() const;

  friend bool operator==(const ImpdInstance&, const ImpdInstance&) = default;
};

/// Budget sums are compared with a small tolerance so that sums of integral
/// costs held in doubles never fail on rounding.
bool within_budget(double cost, double budget);

/// Unit costs, explicit budgets.
ImpdInstance make_cardinality_instance(std::string name, InfluenceGraph graph, double leader_budget,
                                       double follower_budget);

/// Draws `realizations` thresholds for the instance: the fixed vector when the
/// instance has one, a Latin hypercube sample otherwise.
ThresholdSample draw_thresholds(const ImpdInstance& inst, std::size_t realizations, Rng& rng);

enum class BudgetRule {
  Explicit,        // C and E given directly
  LeaderFraction,  // leader affords ~10% of the nodes, follower half the seed
  SeedFraction,    // unit activation costs, C = floor(0.15 n); for follower-only tests
};

const char* to_string(BudgetRule rule);
BudgetRule parse_budget_rule(const std::string& text);

struct InstanceSpec {
  std::string name = "instance";
  NodeId node_count = 20;
  double density = 0.105;
  double rewire_prob = 0.1;
  CostMode cost_mode = CostMode::Cardinality;
  std::vector<double> cost_set{10.0, 15.0, 20.0};
  BudgetRule budget_rule = BudgetRule::Explicit;
  double leader_budget = 3.0;
  double follower_budget = 1.0;
  double leader_fraction = 0.10;
  double follower_fraction = 0.5;
  double seed_fraction = 0.15;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

/// Watts-Strogatz graph plus costs and budgets from an InstanceSpec. Fractions are
/// floored; the applied rule is written into the provenance line.
ImpdInstance generate_instance(const InstanceSpec& spec);

/// Uniform random k-subset of the nodes.
SeedSet random_feasible_seed(const ImpdInstance& inst, std::size_t k, Rng& rng);

/// Text format, version 1:
///
///   impd-instance 1
///   name <token>
///   provenance <rest of line>
///   cost_mode cardinality|cost-based
///   nodes <n>
///   leader_budget <C>
///   follower_budget <E>
///   arcs <m>
///   <tail> <head> <weight>          (m lines)
///   costs
///   <node> <c_i> <e_i>              (n lines)
///   thresholds fixed|random
///   <node> <theta_i>                (n lines, only when fixed)
///   end
///
/// '#' starts a comment. Reals use 17 significant digits so a save/load
/// round trip reproduces the instance exactly.
void save_instance(const ImpdInstance& inst, const std::filesystem::path& path);
std::string format_instance(const ImpdInstance& inst);
ImpdInstance load_instance(const std::filesystem::path& path);
ImpdInstance parse_instance(const std::string& text, const std::string& origin = "<string>");

}  // namespace impd
