#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "impd/rng.hpp"

namespace impd {

using NodeId = std::int32_t;

struct Arc {
  NodeId tail;
  NodeId head;
  double weight;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct Neighbor {
  NodeId node;
  double weight;
};

/// Directed graph with positive arc weights, stored as out- and in-CSR.
///
/// Immutable once built. Arcs keep the order in which they were first given;
/// a later arc with the same (tail, head) is dropped.
class InfluenceGraph {
 public:
  InfluenceGraph() = default;

  /// Validates endpoints and weights, merges parallel arcs keeping the first.
  /// Throws impd::Error(InvalidArgument) on an out-of-range endpoint, a
  /// self-loop, or a weight that is not finite and positive.
  static InfluenceGraph build(NodeId node_count, std::span<const Arc> arcs);

  NodeId node_count() const noexcept { return node_count_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  std::span<const Arc> arcs() const noexcept { return arcs_; }

  std::span<const Neighbor> out_neighbors(NodeId v) const noexcept {
    return {out_.data() + out_offset_[v], out_.data() + out_offset_[v + 1]};
  }
  std::span<const Neighbor> in_neighbors(NodeId v) const noexcept {
    return {in_.data() + in_offset_[v], in_.data() + in_offset_[v + 1]};
  }
  std::size_t out_degree(NodeId v) const noexcept { return out_offset_[v + 1] - out_offset_[v]; }
  std::size_t in_degree(NodeId v) const noexcept { return in_offset_[v + 1] - in_offset_[v]; }

  double in_weight_sum(NodeId v) const noexcept;
  double max_in_weight_sum() const noexcept;

  /// Arcs sorted by (tail, head); the order used for export.
  std::vector<Arc> sorted_arcs() const;

  friend bool operator==(const InfluenceGraph& a, const InfluenceGraph& b) {
    return a.node_count_ == b.node_count_ && a.arcs_ == b.arcs_;
  }

 private:
  NodeId node_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> out_offset_{0};
  std::vector<std::size_t> in_offset_{0};
  std::vector<Neighbor> out_;
  std::vector<Neighbor> in_;
};

inline InfluenceGraph build_graph(NodeId node_count, std::span<const Arc> arcs) {
  return InfluenceGraph::build(node_count, arcs);
}

/// Divides the incoming weights of every node whose in-weight sum exceeds one
/// by that sum. Nodes already at or below one are left as they are.
InfluenceGraph normalize_in_weights(const InfluenceGraph& g);

/// m / (n (n - 1)). Throws for n < 2.
double density(const InfluenceGraph& g);

double average_out_degree(const InfluenceGraph& g);

struct WattsStrogatzParams {
  NodeId node_count = 20;
  double target_density = 0.1;
  double rewire_prob = 0.1;
};

/// Directed small-world graph.
///
/// The lattice gives node i arcs to i+1, i-1, i+2, i-2, ... (mod n) until
/// round(d n (n-1)) arcs exist in total; when that is not a multiple of n the
/// remainder is spread evenly over the ring. Each arc then has its head
/// rewired with probability `rewire_prob` to a uniform node that is neither
/// the tail nor already a head of the tail. Weights are uniform on (0, 1],
/// then normalized.
InfluenceGraph generate_watts_strogatz(const WattsStrogatzParams& params, Rng& rng);

/// Total arc count round(d n (n-1)) the generator aims for.
std::size_t watts_strogatz_arc_target(const WattsStrogatzParams& params);

enum class DefaultWeight {
  InverseOutDegree,  // 1 / out-degree of the tail
  Uniform,           // uniform on (0, 1]
};

struct EdgeListStats {
  std::size_t lines = 0;
  std::size_t arcs_read = 0;
  std::size_t parallel_removed = 0;
  std::size_t self_loops_dropped = 0;
  std::vector<std::string> warnings;
};

/// Reads "tail head [weight]" lines; '#' starts a comment.
///
/// Node ids are arbitrary integers, compacted to 0..n-1 in ascending order.
/// Parallel arcs are removed (first occurrence kept) and self-loops dropped.
/// Arcs without a weight get `fallback`; the `rng` is used only by
/// DefaultWeight::Uniform. The result is normalized.
InfluenceGraph load_edge_list(const std::filesystem::path& path, DefaultWeight fallback, Rng& rng,
                              EdgeListStats* stats = nullptr);

/// Writes "tail head weight" lines sorted by (tail, head), weights with 17
/// significant digits, preceded by a "# nodes N arcs M" comment.
void save_edge_list(const InfluenceGraph& g, const std::filesystem::path& path);

/// Induced subgraph on the `n_sub` nodes of largest out-degree, ties towards
/// the smaller id. Nodes keep their relative order. Weights are normalized.
InfluenceGraph top_outdegree_subgraph(const InfluenceGraph& g, NodeId n_sub,
                                      std::vector<NodeId>* selected = nullptr);

/// All-pairs shortest path lengths with arc length -log(w).
class PathLengthMatrix {
 public:
  static constexpr double kUnreachable = 1e18;

  PathLengthMatrix() = default;
  explicit PathLengthMatrix(NodeId n) : n_(n), values_(static_cast<std::size_t>(n) * n, kUnreachable) {}

  NodeId size() const noexcept { return n_; }
  double operator()(NodeId from, NodeId to) const noexcept {
    return values_[static_cast<std::size_t>(from) * n_ + to];
  }
  double& at(NodeId from, NodeId to) noexcept { return values_[static_cast<std::size_t>(from) * n_ + to]; }
  bool reachable(NodeId from, NodeId to) const noexcept { return (*this)(from, to) < kUnreachable; }

 private:
  NodeId n_ = 0;
  std::vector<double> values_;
};

/// Dijkstra from every node.
PathLengthMatrix shortest_path_matrix(const InfluenceGraph& g);

}  // namespace impd
