#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <vector>

#include "impd/graph.hpp"
#include "impd/node_set.hpp"
#include "impd/rng.hpp"

namespace impd {

/// N realizations of the n node thresholds, stored realization-major.
/// Every realization carries probability 1/N.
class ThresholdSample {
 public:
  ThresholdSample() = default;
  /// `values` holds `realizations * node_count` entries, each in [0, 1].
  ThresholdSample(NodeId node_count, std::size_t realizations, std::vector<double> values);

  /// N copies of one deterministic threshold vector.
  static ThresholdSample constant(std::span<const double> theta, std::size_t realizations);

  NodeId node_count() const noexcept { return node_count_; }
  std::size_t size() const noexcept { return realizations_; }
  std::span<const double> realization(std::size_t r) const noexcept {
    return {values_.data() + r * static_cast<std::size_t>(node_count_), static_cast<std::size_t>(node_count_)};
  }
  double value(std::size_t r, NodeId v) const noexcept {
    return values_[r * static_cast<std::size_t>(node_count_) + v];
  }
  /// True when realization r has a node with threshold 0, which is
  /// influenced without any influenced in-neighbour.
  bool has_zero_threshold(std::size_t r) const noexcept { return zero_rows_[r] != 0; }

 private:
  NodeId node_count_ = 0;
  std::size_t realizations_ = 0;
  std::vector<double> values_;
  std::vector<std::uint8_t> zero_rows_;
};

/// Latin hypercube sample of uniform [0, 1] thresholds: every node column is a
/// random permutation of one draw from each stratum [k/N, (k+1)/N).
ThresholdSample sample_thresholds_lhs(NodeId node_count, std::size_t realizations, Rng& rng);

/// CSV export, one row per realization. `rng_seed` goes into a header comment.
void save_threshold_sample(const ThresholdSample& sample, std::uint64_t rng_seed,
                           const std::filesystem::path& path);
ThresholdSample load_threshold_sample(const std::filesystem::path& path, std::uint64_t* rng_seed = nullptr);

/// Linear threshold propagation with reusable scratch space.
///
/// Sources are the active, non-deactivated seeds. A node is influenced once the
/// total weight from influenced in-neighbours reaches its threshold (>=).
/// Blocked (deactivated) nodes are never influenced and never spread.
class Propagator {
 public:
  explicit Propagator(const InfluenceGraph& g);

  /// Number of influenced nodes in the least fixed point.
  int count(std::span<const NodeId> sources, std::span<const std::uint8_t> blocked,
            std::span<const double> theta, bool scan_zero_thresholds = true);

  /// Same propagation; the influenced nodes in the order they were reached.
  std::span<const NodeId> run(std::span<const NodeId> sources, std::span<const std::uint8_t> blocked,
                              std::span<const double> theta, bool scan_zero_thresholds = true);

  /// Propagations run so far.
  std::uint64_t runs() const noexcept { return runs_; }

 private:
  void reset();

  const InfluenceGraph* graph_;
  std::vector<double> accumulated_;
  std::vector<std::uint8_t> influenced_;
  std::vector<NodeId> order_;
  std::vector<NodeId> touched_;
  std::uint64_t runs_ = 0;
};

/// Seeds minus deactivations, plus a blocked-node mask, for one (x, y) pair.
struct ActivePattern {
  std::vector<NodeId> sources;
  std::vector<std::uint8_t> blocked;

  /// Throws InvalidArgument unless deactivated is a subset of seed.
  ActivePattern(NodeId node_count, const SeedSet& seed, const DeactivationSet& deactivated);
};

/// Influenced node set for one threshold realization.
InfluencedSet propagate(const InfluenceGraph& g, const SeedSet& seed, const DeactivationSet& deactivated,
                  std::span<const double> theta);

/// Influenced count per realization.
std::vector<int> realization_counts(const InfluenceGraph& g, const SeedSet& seed,
                                    const DeactivationSet& deactivated, const ThresholdSample& sample);

/// Sample average of the influenced count.
double spread(const InfluenceGraph& g, const SeedSet& seed, const DeactivationSet& deactivated,
              const ThresholdSample& sample);

/// Sum of influenced counts over the sample for a prepared pattern. Stops
/// early and returns a value above `stop_above` once the partial sum exceeds it.
long long total_influenced(Propagator& propagator, const ActivePattern& pattern, const ThresholdSample& sample,
                           long long stop_above = std::numeric_limits<long long>::max());

}  // namespace impd
