#include <algorithm>
#include <cmath>
#include <limits>

#include "impd/error.hpp"
#include "impd/leader.hpp"
#include "search_run.hpp"

namespace impd {

namespace {

std::size_t list_length(double tau, double size) {
  return static_cast<std::size_t>(std::ceil(tau * size - 1e-9));
}

/// Eligible moves of one type in evaluation order, truncated to the
/// candidate-list length.
std::vector<Move> candidate_list(const ImpdInstance& inst, const SeedSet& seed, MoveType type,
                                 const VisitedMemory& visited, const PathLengthMatrix& lengths, double tau) {
  std::vector<Move> moves = eligible_moves(inst, seed, type, &visited);
  if (type == MoveType::Drop) return moves;
  std::vector<double> score(static_cast<std::size_t>(inst.node_count()), 0.0);
  for (NodeId j = 0; j < inst.node_count(); ++j) {
    for (NodeId i : seed.members()) score[j] += lengths(i, j);
  }
  std::stable_sort(moves.begin(), moves.end(), [&](const Move& a, const Move& b) {
    if (score[a.in] != score[b.in]) return score[a.in] > score[b.in];
    if (a.in != b.in) return a.in < b.in;
    return a.out < b.out;
  });
  const double outside = static_cast<double>(inst.node_count()) - static_cast<double>(seed.size());
  const double size = type == MoveType::Add ? outside : outside * static_cast<double>(seed.size());
  moves.resize(std::min(moves.size(), list_length(tau, size)));
  return moves;
}

}  // namespace

SearchResult tsm_solve(const ImpdInstance& inst, SeedObjective& objective, const PathLengthMatrix& lengths,
                       const TsmParams& params) {
  params.validate();
  inst.validate();
  if (lengths.size() != inst.node_count()) fail(ErrorKind::InvalidArgument, "path lengths do not match instance");
  SearchResult result;
  detail::SearchRun run(inst, objective, params.limits, result);

  SeedSet current = initial_solution(inst, params.initial);
  if (!is_eligible(inst, current, nullptr)) {
    fail(ErrorKind::Infeasible, "no eligible initial solution: seed {" + current.to_string() + "}");
  }
  double z_current = run.start(current);

  const auto allowed = allowed_moves(inst);
  Rng rng = make_rng(params.rng_seed, "tsm");
  std::string reason = "time limit";
  while (!run.expired()) {
    const auto order = detail::fall_through_order(allowed, static_cast<std::size_t>(uniform_index(rng, allowed.size())));
    std::vector<Move> moves;
    MoveType type = order.front();
    for (MoveType t : order) {
      moves = candidate_list(inst, current, t, run.visited(), lengths, params.tau);
      type = t;
      if (!moves.empty()) break;
    }
    if (moves.empty()) {
      reason = "no eligible neighbour";
      break;
    }
    const std::vector<double> pi = run.visited().frequencies();
    double best_score = -std::numeric_limits<double>::infinity();
    SeedSet chosen;
    double z_chosen = 0.0;
    bool any = false;
    for (const Move& m : moves) {
      if (any && run.expired()) break;
      const SeedSet next = apply_move(current, m);
      const double z = run.visit(next);
      double penalty = 0.0;
      for (NodeId v : next.members()) penalty += static_cast<std::size_t>(v) < pi.size() ? pi[v] : 0.0;
      const double score = pseudo_objective(inst, next, z) - params.mu * penalty;
      if (!any || score > best_score) {
        best_score = score;
        chosen = next;
        z_chosen = z;
        any = true;
      }
    }
    current = chosen;
    z_current = z_chosen;
    ++result.move_counts[static_cast<std::size_t>(type)];
    ++result.iterations;
    result.trace.push_back(
        {run.elapsed(), result.iterations, result.best_value, z_current, params.tau, type, true, current});
  }
  run.finish(reason);
  return result;
}

}  // namespace impd
