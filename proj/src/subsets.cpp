#include "impd/subsets.hpp"

#include <algorithm>
#include <limits>

#include "impd/instance.hpp"

namespace impd {

namespace {

struct Search {
  std::span<const NodeId> items;
  std::span<const double> costs;
  std::vector<double> suffix;  // suffix[k] = cost of items[k..]
  double budget;
  BranchOrder order;
  const std::function<void(const std::vector<NodeId>&)>* visit;
  std::vector<NodeId> chosen;

  void run(std::size_t k, double spent, double min_excluded) {
    // The final leftover is at least budget - spent - suffix[k]; once an
    // excluded item fits that, no completion is maximal.
    if (min_excluded < std::numeric_limits<double>::infinity() &&
        within_budget(min_excluded, budget - spent - suffix[k])) {
      return;
    }
    if (k == items.size()) {
      (*visit)(chosen);
      return;
    }
    const bool fits = within_budget(spent + costs[k], budget);
    if (order == BranchOrder::ExcludeFirst) run(k + 1, spent, std::min(min_excluded, costs[k]));
    if (fits) {
      chosen.push_back(items[k]);
      run(k + 1, spent + costs[k], min_excluded);
      chosen.pop_back();
    }
    if (order == BranchOrder::IncludeFirst) run(k + 1, spent, std::min(min_excluded, costs[k]));
  }
};

}  // namespace

void for_each_maximal_subset(std::span<const NodeId> items, std::span<const double> costs, double budget,
                             BranchOrder order, const std::function<void(const std::vector<NodeId>&)>& visit) {
  Search search{items, costs, std::vector<double>(costs.size() + 1, 0.0), budget, order, &visit, {}};
  for (std::size_t k = costs.size(); k-- > 0;) search.suffix[k] = search.suffix[k + 1] + costs[k];
  search.run(0, 0.0, std::numeric_limits<double>::infinity());
}

double bounded_subset_count(std::size_t n, std::size_t kmax, double cap) {
  double total = 0.0;
  double term = 1.0;  // binomial(n, k)
  for (std::size_t k = 0; k <= std::min(kmax, n); ++k) {
    total += term;
    if (total > cap) return cap;
    term = term * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return total;
}

}  // namespace impd
