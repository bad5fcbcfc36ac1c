#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "impd/diffusion.hpp"
#include "impd/instance.hpp"
#include "impd/node_set.hpp"

namespace impd {

/// Sample sizes for the three-stage SAA estimate of the follower's value.
struct SaaParams {
  std::size_t batch_size = 50;     // N, realizations per first-stage batch
  std::size_t batch_count = 20;    // M
  std::size_t eval_size = 2000;    // N', selects the best batch response
  std::size_t final_size = 10000;  // N'', upper bound and its variance
  std::uint64_t rng_seed = 1;

  /// Throws InvalidArgument unless N >= 1, M >= 2, N' >= 1 and N'' >= 2.
  void validate() const;
};

/// Largest seed the exact follower oracle accepts.
inline constexpr std::size_t kExactOracleSeedLimit = 30;

/// Deactivation sets y within x with e(y) <= E to which no further node of x
/// fits, in lexicographic order of their member lists.
std::vector<DeactivationSet> maximal_deactivations(const ImpdInstance& inst, const SeedSet& seed);

struct AllpSolution {
  DeactivationSet response;
  double value = 0.0;  // sample average of the influenced count under `response`
  std::size_t candidates = 0;
};

/// Exact minimizer of the sample-average spread over the follower's feasible
/// responses, searched over budget-maximal responses only (spread is antitone
/// in the deactivation set). Ties go to the lexicographically smallest set.
/// Throws Guard when |x| exceeds kExactOracleSeedLimit.
AllpSolution solve_allp_exact(const ImpdInstance& inst, const SeedSet& seed, const ThresholdSample& sample);

/// The two terms of the gap variance: the variance of the upper-bound mean
/// over the N'' per-realization counts, and that of the batch mean.
struct GapVariance {
  double upper = 0.0;
  double lower = 0.0;
  double total() const noexcept { return upper + lower; }
};

/// Throws InvalidArgument when fewer than two counts or two batches are given.
GapVariance gap_variance(std::span<const double> final_counts, double upper_bound,
                         std::span<const double> batch_values, double lower_bound);

struct ConfidenceInterval {
  double lo = 0.0;   // percent of the upper bound
  double hi = 0.0;
  double dof = 0.0;  // Welch-Satterthwaite, infinite when both variances vanish
  bool defined = false;  // false when the upper bound is zero
};

/// Two-sided Student-t quantile for probability p in (0, 1); `dof` may be
/// fractional or infinite.
double student_t_quantile(double p, double dof);

/// Welch-Satterthwaite degrees of freedom for the two variance terms.
double welch_dof(const GapVariance& v, std::size_t final_size, std::size_t batch_count);

/// Percent-of-UB interval around the gap with t_{alpha/2, dof}.
ConfidenceInterval confidence_interval(double gap, double upper_bound, const GapVariance& v, std::size_t final_size,
                                       std::size_t batch_count, double alpha = 0.05);

struct SaaReport {
  SeedSet seed;
  DeactivationSet best_response;
  std::size_t best_batch = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::vector<double> batch_values;
  std::vector<DeactivationSet> batch_responses;
  std::vector<double> eval_values;  // second-stage spread of each batch response
  std::vector<double> final_counts;
  double gap = 0.0;
  double gap_percent = 0.0;  // NaN when the upper bound is zero
  GapVariance variance;
  ConfidenceInterval ci;
  double wall_seconds = 0.0;
  std::uint64_t propagations = 0;

  double gap_variance() const noexcept { return variance.total(); }
};

/// Holds the threshold samples for one SaaParams and evaluates seeds against
/// them. Batch m uses sub-stream ("saa-batch", m), the second stage
/// ("saa-eval", 0) and the third ("saa-final", 0), all derived from
/// params.rng_seed; every seed evaluated by one evaluator therefore sees the
/// same realizations.
class SaaEvaluator {
 public:
  SaaEvaluator(ImpdInstance instance, SaaParams params);

  SaaReport evaluate(const SeedSet& seed) const;

  const ImpdInstance& instance() const noexcept { return instance_; }
  const SaaParams& params() const noexcept { return params_; }
  const ThresholdSample& batch_sample(std::size_t m) const { return batches_.at(m); }
  const ThresholdSample& eval_sample() const noexcept { return eval_; }
  const ThresholdSample& final_sample() const noexcept { return final_; }

 private:
  ImpdInstance instance_;
  SaaParams params_;
  std::vector<ThresholdSample> batches_;
  ThresholdSample eval_;
  ThresholdSample final_;
};

/// One-shot evaluation: draws the samples and runs the three stages.
SaaReport saa_evaluate(const ImpdInstance& inst, const SeedSet& seed, const SaaParams& params);

/// Writes the ALLP for seed `seed` over `sample` as a mixed-integer model in
/// LP text format. Deactivation variables exist only for seed nodes.
/// Rows: one budget row, one y_i <= 1 row per seed node, and per node and
/// realization one seed-forcing row and one threshold row.
void export_allp_lp(const ImpdInstance& inst, const SeedSet& seed, const ThresholdSample& sample, double epsilon,
                    const std::filesystem::path& path);

}  // namespace impd
