#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "impd/error.hpp"
#include "impd/leader.hpp"
#include "impd/subsets.hpp"

namespace impd {

double enumeration_size_estimate(const ImpdInstance& inst) {
  const auto n = static_cast<std::size_t>(inst.node_count());
  if (n == 0) return 1.0;
  const double min_cost = *std::min_element(inst.activation_costs.begin(), inst.activation_costs.end());
  const double ratio = inst.leader_budget / min_cost;
  const auto kmax = static_cast<std::size_t>(std::min<double>(static_cast<double>(n), std::floor(ratio + 1e-9)));
  return bounded_subset_count(n, kmax, 2.0 * kEnumerationLimit);
}

void enumerate_maximal_seeds(const ImpdInstance& inst, const std::function<void(const SeedSet&)>& visit) {
  const double estimate = enumeration_size_estimate(inst);
  if (estimate > kEnumerationLimit) {
    char text[160];
    std::snprintf(text, sizeof text, "instance too large for complete enumeration: %s %.0f candidate subsets, limit is %.0f",
                  estimate >= 2.0 * kEnumerationLimit ? "more than" : "about", estimate, kEnumerationLimit);
    fail(ErrorKind::Guard, text);
  }
  std::vector<NodeId> nodes(static_cast<std::size_t>(inst.node_count()));
  for (NodeId v = 0; v < inst.node_count(); ++v) nodes[v] = v;
  for_each_maximal_subset(nodes, inst.activation_costs, inst.leader_budget, BranchOrder::ExcludeFirst,
                          [&](const std::vector<NodeId>& members) {
                            if (!members.empty()) visit(SeedSet(members));
                          });
}

std::vector<SeedSet> maximal_seeds(const ImpdInstance& inst) {
  std::vector<SeedSet> out;
  enumerate_maximal_seeds(inst, [&](const SeedSet& s) { out.push_back(s); });
  return out;
}

EnumerationResult solve_complete_enumeration(const ImpdInstance& inst, SeedObjective& objective) {
  const auto start = std::chrono::steady_clock::now();
  EnumerationResult result;
  bool found = false;
  enumerate_maximal_seeds(inst, [&](const SeedSet& seed) {
    const double z = objective.value(seed);
    ++result.evaluated;
    if (!found || z > result.value) {
      result.seed = seed;
      result.value = z;
      found = true;
    }
  });
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

EnumerationResult solve_complete_enumeration(const ImpdInstance& inst, const SaaParams& saa) {
  SaaObjective objective(inst, saa);
  return solve_complete_enumeration(inst, objective);
}

}  // namespace impd
