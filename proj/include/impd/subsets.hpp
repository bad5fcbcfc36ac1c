#pragma once

#include <functional>
#include <span>
#include <vector>

#include "impd/graph.hpp"

namespace impd {

enum class BranchOrder { IncludeFirst, ExcludeFirst };

/// Calls `visit` once for every subset of `items` whose cost fits `budget` and
/// to which no further item fits. `costs[k]` is the cost of `items[k]`.
/// IncludeFirst yields lexicographic order of member lists; ExcludeFirst
/// yields the sets avoiding earlier items first.
void for_each_maximal_subset(std::span<const NodeId> items, std::span<const double> costs, double budget,
                             BranchOrder order, const std::function<void(const std::vector<NodeId>&)>& visit);

/// Sum over k <= kmax of binomial(n, k), saturating at `cap`.
double bounded_subset_count(std::size_t n, std::size_t kmax, double cap);

}  // namespace impd
