#include "impd/follower.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "impd/error.hpp"
#include "impd/subsets.hpp"

namespace impd {

void SaaParams::validate() const {
  if (batch_size < 1) fail(ErrorKind::InvalidArgument, "SAA batch size N must be at least 1");
  if (batch_count < 2) fail(ErrorKind::InvalidArgument, "SAA batch count M must be at least 2");
  if (eval_size < 1) fail(ErrorKind::InvalidArgument, "SAA evaluation size N' must be at least 1");
  if (final_size < 2) fail(ErrorKind::InvalidArgument, "SAA final size N'' must be at least 2");
}

std::vector<DeactivationSet> maximal_deactivations(const ImpdInstance& inst, const SeedSet& seed) {
  std::vector<double> costs;
  costs.reserve(seed.size());
  for (NodeId v : seed.members()) costs.push_back(inst.deactivation_costs.at(v));
  std::vector<DeactivationSet> out;
  for_each_maximal_subset(seed.members(), costs, inst.follower_budget, BranchOrder::IncludeFirst,
                          [&](const std::vector<NodeId>& y) { out.emplace_back(y); });
  return out;
}

AllpSolution solve_allp_exact(const ImpdInstance& inst, const SeedSet& seed, const ThresholdSample& sample) {
  if (seed.size() > kExactOracleSeedLimit) {
    fail(ErrorKind::Guard, "instance too large for exact oracle: seed has " + std::to_string(seed.size()) +
                               " nodes, limit is " + std::to_string(kExactOracleSeedLimit));
  }
  if (sample.node_count() != inst.node_count()) fail(ErrorKind::InvalidArgument, "sample does not match instance");
  if (!inst.leader_feasible(seed)) fail(ErrorKind::InvalidArgument, "seed violates the leader budget");

  const auto candidates = maximal_deactivations(inst, seed);
  Propagator propagator(inst.graph);
  AllpSolution best;
  long long best_total = std::numeric_limits<long long>::max();
  for (const DeactivationSet& y : candidates) {
    const ActivePattern pattern(inst.node_count(), seed, y);
    // Candidates arrive in lexicographic order, so only a strictly smaller
    // total replaces the incumbent.
    const long long total = total_influenced(propagator, pattern, sample, best_total - 1);
    if (total < best_total) {
      best_total = total;
      best.response = y;
    }
  }
  best.candidates = candidates.size();
  best.value = sample.size() ? static_cast<double>(best_total) / static_cast<double>(sample.size()) : 0.0;
  return best;
}

GapVariance gap_variance(std::span<const double> final_counts, double upper_bound, std::span<const double> batch_values,
                         double lower_bound) {
  if (final_counts.size() < 2) fail(ErrorKind::InvalidArgument, "gap variance needs N'' >= 2");
  if (batch_values.size() < 2) fail(ErrorKind::InvalidArgument, "gap variance needs M >= 2");
  const auto nf = static_cast<double>(final_counts.size());
  const auto m = static_cast<double>(batch_values.size());
  GapVariance v;
  for (double g : final_counts) v.upper += (upper_bound - g) * (upper_bound - g);
  v.upper /= nf * (nf - 1.0);
  for (double z : batch_values) v.lower += (z - lower_bound) * (z - lower_bound);
  v.lower /= m * (m - 1.0);
  return v;
}

double student_t_quantile(double p, double dof) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::InvalidArgument, "quantile probability must lie in (0, 1)");
  if (std::isinf(dof)) return boost::math::quantile(boost::math::normal_distribution<double>(), p);
  if (!(dof > 0.0)) fail(ErrorKind::InvalidArgument, "degrees of freedom must be positive");
  return boost::math::quantile(boost::math::students_t_distribution<double>(dof), p);
}

double welch_dof(const GapVariance& v, std::size_t final_size, std::size_t batch_count) {
  const double total = v.total();
  if (total == 0.0) return std::numeric_limits<double>::infinity();
  const double denom = v.upper * v.upper / static_cast<double>(final_size - 1) +
                       v.lower * v.lower / static_cast<double>(batch_count - 1);
  return total * total / denom;
}

ConfidenceInterval confidence_interval(double gap, double upper_bound, const GapVariance& v, std::size_t final_size,
                                       std::size_t batch_count, double alpha) {
  if (v.upper < 0.0 || v.lower < 0.0) fail(ErrorKind::InvalidArgument, "variances must be non-negative");
  if (final_size < 2 || batch_count < 2) fail(ErrorKind::InvalidArgument, "interval needs N'' >= 2 and M >= 2");
  ConfidenceInterval ci;
  ci.dof = welch_dof(v, final_size, batch_count);
  if (upper_bound == 0.0) {
    ci.lo = ci.hi = std::numeric_limits<double>::quiet_NaN();
    ci.defined = false;
    return ci;
  }
  const double half = v.total() == 0.0 ? 0.0 : student_t_quantile(1.0 - alpha / 2.0, ci.dof) * std::sqrt(v.total());
  ci.lo = 100.0 * (gap - half) / upper_bound;
  ci.hi = 100.0 * (gap + half) / upper_bound;
  ci.defined = true;
  return ci;
}

SaaEvaluator::SaaEvaluator(ImpdInstance instance, SaaParams params)
    : instance_(std::move(instance)), params_(params) {
  params_.validate();
  instance_.validate();
  batches_.reserve(params_.batch_count);
  for (std::size_t m = 0; m < params_.batch_count; ++m) {
    Rng rng = make_rng(params_.rng_seed, "saa-batch", m);
    batches_.push_back(draw_thresholds(instance_, params_.batch_size, rng));
  }
  Rng eval_rng = make_rng(params_.rng_seed, "saa-eval");
  eval_ = draw_thresholds(instance_, params_.eval_size, eval_rng);
  Rng final_rng = make_rng(params_.rng_seed, "saa-final");
  final_ = draw_thresholds(instance_, params_.final_size, final_rng);
}

SaaReport SaaEvaluator::evaluate(const SeedSet& seed) const {
  const auto start = std::chrono::steady_clock::now();
  SaaReport report;
  report.seed = seed;
  const std::size_t m_count = params_.batch_count;

  // Stage 1: exact ALLP per batch.
  std::uint64_t propagations = 0;
  report.batch_values.reserve(m_count);
  report.batch_responses.reserve(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    AllpSolution sol = solve_allp_exact(instance_, seed, batches_[m]);
    propagations += sol.candidates * params_.batch_size;
    report.batch_values.push_back(sol.value);
    report.batch_responses.push_back(std::move(sol.response));
  }
  report.lower_bound = std::accumulate(report.batch_values.begin(), report.batch_values.end(), 0.0) /
                       static_cast<double>(m_count);

  // Stage 2: pick the batch response with the smallest spread on N'.
  Propagator propagator(instance_.graph);
  std::map<DeactivationSet, double> seen;
  report.eval_values.reserve(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const DeactivationSet& y = report.batch_responses[m];
    auto it = seen.find(y);
    if (it == seen.end()) {
      const ActivePattern pattern(instance_.node_count(), seed, y);
      const double value = static_cast<double>(total_influenced(propagator, pattern, eval_)) /
                           static_cast<double>(eval_.size());
      it = seen.emplace(y, value).first;
    }
    report.eval_values.push_back(it->second);
    if (it->second < report.eval_values[report.best_batch]) report.best_batch = m;
  }
  report.best_response = report.batch_responses[report.best_batch];

  // Stage 3: upper bound on a fresh N'' sample.
  const ActivePattern pattern(instance_.node_count(), seed, report.best_response);
  report.final_counts.resize(final_.size());
  double total = 0.0;
  for (std::size_t r = 0; r < final_.size(); ++r) {
    report.final_counts[r] =
        propagator.count(pattern.sources, pattern.blocked, final_.realization(r), final_.has_zero_threshold(r));
    total += report.final_counts[r];
  }
  report.upper_bound = total / static_cast<double>(final_.size());

  report.gap = report.upper_bound - report.lower_bound;
  report.gap_percent = report.upper_bound == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                                 : 100.0 * report.gap / report.upper_bound;
  report.variance = gap_variance(report.final_counts, report.upper_bound, report.batch_values, report.lower_bound);
  report.ci = confidence_interval(report.gap, report.upper_bound, report.variance, final_.size(), m_count);
  report.propagations = propagations + propagator.runs();
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SaaReport saa_evaluate(const ImpdInstance& inst, const SeedSet& seed, const SaaParams& params) {
  return SaaEvaluator(inst, params).evaluate(seed);
}

}  // namespace impd
