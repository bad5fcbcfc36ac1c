#pragma once

// Shared test fixtures and independent oracles. The oracles deliberately use
// naive algorithms that share no code with the library beyond the data types.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "impd/diffusion.hpp"
#include "impd/error.hpp"
#include "impd/graph.hpp"
#include "impd/instance.hpp"
#include "impd/node_set.hpp"
#include "impd/rng.hpp"

namespace impd::testing {

enum FigureNode : NodeId { A = 0, B = 1, C = 2, D = 3, E = 4, F = 5 };

inline InfluenceGraph figure1_graph() {
  const std::vector<Arc> arcs{{A, B, 0.7}, {B, C, 0.1}, {B, D, 0.1}, {B, E, 0.2}, {C, F, 0.6},
                              {D, A, 0.1}, {E, C, 0.9}, {E, D, 0.2}, {E, F, 0.2}};
  return build_graph(6, arcs);
}

inline std::vector<double> figure1_thresholds() { return {0.3, 0.6, 0.8, 0.4, 0.1, 0.5}; }

inline ImpdInstance figure1_instance(double leader_budget, double follower_budget) {
  ImpdInstance inst = make_cardinality_instance("figure1", figure1_graph(), leader_budget, follower_budget);
  inst.fixed_thresholds = figure1_thresholds();
  return inst;
}

/// Influenced indicator by synchronous rounds from the definition: a node is
/// influenced when it is an undeactivated seed, or it is not deactivated and
/// the weight from influenced in-neighbours reaches its threshold.
inline std::vector<int> naive_propagate(const InfluenceGraph& g, const std::vector<NodeId>& seed,
                                        const std::vector<NodeId>& deactivated, const std::vector<double>& theta) {
  const NodeId n = g.node_count();
  std::vector<int> blocked(n, 0), on(n, 0);
  for (NodeId v : deactivated) blocked[v] = 1;
  for (NodeId v : seed) {
    if (!blocked[v]) on[v] = 1;
  }
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<double> in(n, 0.0);
    for (const Arc& a : g.arcs()) {
      if (on[a.tail]) in[a.head] += a.weight;
    }
    for (NodeId v = 0; v < n; ++v) {
      if (!on[v] && !blocked[v] && in[v] >= theta[v]) {
        on[v] = 1;
        changed = true;
      }
    }
  }
  return on;
}

inline int naive_count(const InfluenceGraph& g, const std::vector<NodeId>& seed, const std::vector<NodeId>& deact,
                       const std::vector<double>& theta) {
  const auto on = naive_propagate(g, seed, deact, theta);
  return static_cast<int>(std::count(on.begin(), on.end(), 1));
}

inline std::vector<double> row(const ThresholdSample& s, std::size_t r) {
  auto span = s.realization(r);
  return {span.begin(), span.end()};
}

/// Minimum over every subset y of x with e(y) <= E of the mean influenced
/// count, by walking all 2^|x| subsets.
inline double brute_force_allp(const ImpdInstance& inst, const std::vector<NodeId>& x, const ThresholdSample& s) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t k = x.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<NodeId> y;
    double cost = 0.0;
    for (std::size_t b = 0; b < k; ++b) {
      if (mask >> b & 1) {
        y.push_back(x[b]);
        cost += inst.deactivation_costs[x[b]];
      }
    }
    if (cost > inst.follower_budget + 1e-9) continue;
    double total = 0.0;
    for (std::size_t r = 0; r < s.size(); ++r) total += naive_count(inst.graph, x, y, row(s, r));
    best = std::min(best, total / static_cast<double>(s.size()));
  }
  return best;
}

/// Random directed graph with weights normalized so that in-sums stay <= 1.
inline InfluenceGraph random_graph(NodeId n, double arc_prob, Rng& rng) {
  std::vector<Arc> arcs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v && uniform01(rng) < arc_prob) arcs.push_back({u, v, uniform_open01(rng)});
    }
  }
  return normalize_in_weights(build_graph(n, arcs));
}

inline std::vector<NodeId> random_subset(NodeId n, std::size_t k, Rng& rng) {
  std::vector<NodeId> all(n);
  for (NodeId v = 0; v < n; ++v) all[v] = v;
  shuffle(std::span<NodeId>(all), rng);
  all.resize(std::min<std::size_t>(k, all.size()));
  std::sort(all.begin(), all.end());
  return all;
}

/// Kind of the impd::Error thrown by f, or nothing when it returns.
template <class F>
std::optional<ErrorKind> thrown_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace impd::testing
