#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "impd/leader.hpp"

namespace impd::detail {

/// Clock, visited memory, incumbent and checkpoints shared by SAM and TSM.
class SearchRun {
 public:
  SearchRun(const ImpdInstance& inst, SeedObjective& objective, const SearchLimits& limits, SearchResult& result)
      : inst_(inst),
        objective_(objective),
        limits_(limits),
        result_(result),
        visited_(inst.node_count()),
        pending_(limits.checkpoint_times()),
        start_(std::chrono::steady_clock::now()) {}

  double elapsed() const {
    if (limits_.clock == ClockMode::Evaluations) return static_cast<double>(result_.evaluations);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  bool expired() const { return elapsed() >= limits_.t_max; }

  const VisitedMemory& visited() const noexcept { return visited_; }

  /// Evaluates the starting seed and makes it the incumbent.
  double start(const SeedSet& seed) {
    const double z = visit(seed);
    result_.initial = seed;
    result_.initial_value = z;
    result_.best = seed;
    result_.best_value = z;
    started_ = true;
    return z;
  }

  /// Evaluates a seed generated by the search: remembers it and updates the
  /// incumbent on strict improvement.
  double visit(const SeedSet& seed) {
    visited_.insert(seed);
    result_.evaluated.push_back(seed);
    const double z = tick(seed);
    if (started_ && z > result_.best_value) {
      result_.best = seed;
      result_.best_value = z;
    }
    return z;
  }

  /// Evaluation outside the search memory, used for temperature estimation.
  double probe(const SeedSet& seed) { return tick(seed); }

  void finish(std::string reason) {
    for (; next_ < pending_.size(); ++next_) result_.checkpoints.push_back({pending_[next_], result_.best_value, result_.best});
    result_.stop_reason = std::move(reason);
    result_.elapsed = elapsed();
    result_.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  double tick(const SeedSet& seed) {
    const double z = objective_.value(seed);
    ++result_.evaluations;
    // Checkpoints passed while this evaluation ran report the incumbent from
    // before it.
    const double now = elapsed();
    for (; started_ && next_ < pending_.size() && pending_[next_] < now; ++next_) {
      result_.checkpoints.push_back({pending_[next_], result_.best_value, result_.best});
    }
    return z;
  }

  const ImpdInstance& inst_;
  SeedObjective& objective_;
  const SearchLimits& limits_;
  SearchResult& result_;
  VisitedMemory visited_;
  std::vector<double> pending_;
  std::size_t next_ = 0;
  bool started_ = false;
  std::chrono::steady_clock::time_point start_;
};

/// Routes evaluations through SearchRun::probe.
class ProbeObjective : public SeedObjective {
 public:
  explicit ProbeObjective(SearchRun& run) : run_(run) {}
  double value(const SeedSet& seed) override { return run_.probe(seed); }

 private:
  SearchRun& run_;
};

/// The chosen type first, then the other allowed types in Add, Drop, Swap
/// order.
inline std::vector<MoveType> fall_through_order(const std::vector<MoveType>& allowed, std::size_t chosen) {
  std::vector<MoveType> order{allowed[chosen]};
  for (std::size_t k = 0; k < allowed.size(); ++k) {
    if (k != chosen) order.push_back(allowed[k]);
  }
  return order;
}

}  // namespace impd::detail
