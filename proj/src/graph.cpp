#include "impd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_set>

#include "impd/error.hpp"

namespace impd {

namespace {

std::uint64_t arc_key(NodeId tail, NodeId head) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(tail)) << 32) |
         static_cast<std::uint32_t>(head);
}

}  // namespace

InfluenceGraph InfluenceGraph::build(NodeId node_count, std::span<const Arc> arcs) {
  if (node_count < 0) fail(ErrorKind::InvalidArgument, "negative node count");
  InfluenceGraph g;
  g.node_count_ = node_count;
  g.arcs_.reserve(arcs.size());

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(arcs.size() * 2);
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Arc& a = arcs[k];
    if (a.tail < 0 || a.tail >= node_count || a.head < 0 || a.head >= node_count) {
      fail(ErrorKind::InvalidArgument, "arc " + std::to_string(k) + " (" + std::to_string(a.tail) + "," +
                                           std::to_string(a.head) + ") has an endpoint outside [0," +
                                           std::to_string(node_count) + ")");
    }
    if (a.tail == a.head) {
      fail(ErrorKind::InvalidArgument, "arc " + std::to_string(k) + " is a self-loop on node " + std::to_string(a.tail));
    }
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      fail(ErrorKind::InvalidArgument, "arc " + std::to_string(k) + " has non-positive or non-finite weight");
    }
    if (seen.insert(arc_key(a.tail, a.head)).second) g.arcs_.push_back(a);
  }

  const auto n = static_cast<std::size_t>(node_count);
  g.out_offset_.assign(n + 1, 0);
  g.in_offset_.assign(n + 1, 0);
  for (const Arc& a : g.arcs_) {
    ++g.out_offset_[a.tail + 1];
    ++g.in_offset_[a.head + 1];
  }
  for (std::size_t v = 0; v < n; ++v) {
    g.out_offset_[v + 1] += g.out_offset_[v];
    g.in_offset_[v + 1] += g.in_offset_[v];
  }
  g.out_.resize(g.arcs_.size());
  g.in_.resize(g.arcs_.size());
  std::vector<std::size_t> out_fill(g.out_offset_.begin(), g.out_offset_.end() - 1);
  std::vector<std::size_t> in_fill(g.in_offset_.begin(), g.in_offset_.end() - 1);
  for (const Arc& a : g.arcs_) {
    g.out_[out_fill[a.tail]++] = {a.head, a.weight};
    g.in_[in_fill[a.head]++] = {a.tail, a.weight};
  }
  return g;
}

double InfluenceGraph::in_weight_sum(NodeId v) const noexcept {
  double s = 0.0;
  for (const Neighbor& nb : in_neighbors(v)) s += nb.weight;
  return s;
}

double InfluenceGraph::max_in_weight_sum() const noexcept {
  double best = 0.0;
  for (NodeId v = 0; v < node_count_; ++v) best = std::max(best, in_weight_sum(v));
  return best;
}

std::vector<Arc> InfluenceGraph::sorted_arcs() const {
  std::vector<Arc> out = arcs_;
  std::sort(out.begin(), out.end(),
            [](const Arc& a, const Arc& b) { return std::tie(a.tail, a.head) < std::tie(b.tail, b.head); });
  return out;
}

InfluenceGraph normalize_in_weights(const InfluenceGraph& g) {
  std::vector<double> sums(static_cast<std::size_t>(g.node_count()), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) sums[v] = g.in_weight_sum(v);
  std::vector<Arc> arcs(g.arcs().begin(), g.arcs().end());
  for (Arc& a : arcs) {
    if (sums[a.head] > 1.0) a.weight /= sums[a.head];
  }
  return InfluenceGraph::build(g.node_count(), arcs);
}

double density(const InfluenceGraph& g) {
  const double n = g.node_count();
  if (g.node_count() < 2) fail(ErrorKind::InvalidArgument, "density needs at least two nodes");
  return static_cast<double>(g.arc_count()) / (n * (n - 1.0));
}

double average_out_degree(const InfluenceGraph& g) {
  if (g.node_count() == 0) return 0.0;
  return static_cast<double>(g.arc_count()) / g.node_count();
}

std::size_t watts_strogatz_arc_target(const WattsStrogatzParams& params) {
  const double n = params.node_count;
  return static_cast<std::size_t>(std::llround(params.target_density * n * (n - 1.0)));
}

InfluenceGraph generate_watts_strogatz(const WattsStrogatzParams& params, Rng& rng) {
  const NodeId n = params.node_count;
  if (n < 2) fail(ErrorKind::InvalidArgument, "Watts-Strogatz graph needs at least two nodes");
  if (!(params.target_density > 0.0) || params.target_density > 1.0) {
    fail(ErrorKind::Infeasible, "target density must lie in (0, 1]");
  }
  if (params.rewire_prob < 0.0 || params.rewire_prob > 1.0) {
    fail(ErrorKind::InvalidArgument, "rewire probability must lie in [0, 1]");
  }
  const std::size_t target = watts_strogatz_arc_target(params);
  if (target == 0) fail(ErrorKind::Infeasible, "target density gives no arcs for n=" + std::to_string(n));

  // Ring offsets +1, -1, +2, -2, ... as distinct residues mod n.
  std::vector<NodeId> offsets;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  used[0] = true;
  for (NodeId s = 1; static_cast<NodeId>(offsets.size()) < n - 1; ++s) {
    for (NodeId r : {s % n, (n - s % n) % n}) {
      if (!used[r]) {
        used[r] = true;
        offsets.push_back(r);
      }
    }
  }

  const std::size_t per_node = target / static_cast<std::size_t>(n);
  const std::size_t extra = target % static_cast<std::size_t>(n);
  std::vector<Arc> arcs;
  arcs.reserve(target);
  std::unordered_set<std::uint64_t> present;
  for (NodeId i = 0; i < n; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    const bool gets_extra = (ii + 1) * extra / n > ii * extra / n;
    const std::size_t degree = per_node + (gets_extra ? 1 : 0);
    for (std::size_t k = 0; k < degree; ++k) {
      const NodeId head = static_cast<NodeId>((i + offsets[k]) % n);
      arcs.push_back({i, head, 1.0});
      present.insert(arc_key(i, head));
    }
  }

  for (Arc& a : arcs) {
    if (uniform01(rng) >= params.rewire_prob) continue;
    std::vector<NodeId> candidates;
    for (NodeId v = 0; v < n; ++v) {
      if (v != a.tail && !present.contains(arc_key(a.tail, v))) candidates.push_back(v);
    }
    if (candidates.empty()) continue;
    const NodeId head = candidates[uniform_index(rng, candidates.size())];
    present.erase(arc_key(a.tail, a.head));
    present.insert(arc_key(a.tail, head));
    a.head = head;
  }
  for (Arc& a : arcs) a.weight = 1.0 - uniform01(rng);
  return normalize_in_weights(InfluenceGraph::build(n, arcs));
}

InfluenceGraph top_outdegree_subgraph(const InfluenceGraph& g, NodeId n_sub, std::vector<NodeId>* selected) {
  if (n_sub < 0 || n_sub > g.node_count()) {
    fail(ErrorKind::InvalidArgument, "subgraph size " + std::to_string(n_sub) + " exceeds node count " +
                                         std::to_string(g.node_count()));
  }
  std::vector<NodeId> order(static_cast<std::size_t>(g.node_count()));
  for (NodeId v = 0; v < g.node_count(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return g.out_degree(a) > g.out_degree(b); });
  order.resize(static_cast<std::size_t>(n_sub));
  std::sort(order.begin(), order.end());

  std::vector<NodeId> remap(static_cast<std::size_t>(g.node_count()), -1);
  for (std::size_t k = 0; k < order.size(); ++k) remap[order[k]] = static_cast<NodeId>(k);
  std::vector<Arc> arcs;
  for (const Arc& a : g.arcs()) {
    if (remap[a.tail] >= 0 && remap[a.head] >= 0) arcs.push_back({remap[a.tail], remap[a.head], a.weight});
  }
  if (selected) *selected = order;
  return normalize_in_weights(InfluenceGraph::build(n_sub, arcs));
}

PathLengthMatrix shortest_path_matrix(const InfluenceGraph& g) {
  const NodeId n = g.node_count();
  PathLengthMatrix lambda(n);
  using Item = std::pair<double, NodeId>;
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (NodeId source = 0; source < n; ++source) {
    std::fill(dist.begin(), dist.end(), PathLengthMatrix::kUnreachable);
    dist[source] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, source});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (const Neighbor& nb : g.out_neighbors(u)) {
        // Weights are at most one after normalization, so lengths are >= 0.
        const double len = std::max(0.0, -std::log(nb.weight));
        if (d + len < dist[nb.node]) {
          dist[nb.node] = d + len;
          heap.push({dist[nb.node], nb.node});
        }
      }
    }
    for (NodeId v = 0; v < n; ++v) lambda.at(source, v) = dist[v];
  }
  return lambda;
}

}  // namespace impd
