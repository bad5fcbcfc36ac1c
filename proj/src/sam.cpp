#include <cmath>

#include "impd/error.hpp"
#include "impd/leader.hpp"
#include "search_run.hpp"

namespace impd {

TemperatureEstimate initial_temperature(const ImpdInstance& inst, SeedObjective& objective, double p0, Rng& rng,
                                        std::size_t samples) {
  if (!(p0 > 0.0 && p0 < 1.0)) fail(ErrorKind::InvalidArgument, "p0 must lie in (0, 1)");
  const auto allowed = allowed_moves(inst);
  std::vector<NodeId> order(static_cast<std::size_t>(inst.node_count()));
  VisitedMemory drawn(inst.node_count());
  TemperatureEstimate est;
  double total = 0.0;
  const std::size_t attempts = 50 * samples;
  for (std::size_t attempt = 0; attempt < attempts && est.pairs < samples; ++attempt) {
    // Random maximal feasible seed: shuffled nodes, each added when it fits.
    for (NodeId v = 0; v < inst.node_count(); ++v) order[v] = v;
    shuffle(std::span<NodeId>(order), rng);
    SeedSet seed;
    double spent = 0.0;
    for (NodeId v : order) {
      if (within_budget(spent + inst.activation_costs[v], inst.leader_budget)) {
        spent += inst.activation_costs[v];
        seed.insert(v);
      }
    }
    if (!is_eligible(inst, seed, &drawn)) continue;
    std::vector<Move> moves;
    for (MoveType t : detail::fall_through_order(allowed, static_cast<std::size_t>(uniform_index(rng, allowed.size())))) {
      moves = eligible_moves(inst, seed, t, nullptr);
      if (!moves.empty()) break;
    }
    if (moves.empty()) continue;
    drawn.insert(seed);
    const SeedSet neighbour = apply_move(seed, moves[uniform_index(rng, moves.size())]);
    const double f = pseudo_objective(inst, seed, objective.value(seed));
    const double g = pseudo_objective(inst, neighbour, objective.value(neighbour));
    total += std::fabs(g - f);
    ++est.pairs;
  }
  est.mean_delta = est.pairs ? total / static_cast<double>(est.pairs) : 0.0;
  est.temperature = temperature_from_delta(est.mean_delta, p0);
  return est;
}

namespace {

double neighbourhood_size(MoveType type, double k, double n) {
  switch (type) {
    case MoveType::Add: return n - k;
    case MoveType::Drop: return k;
    case MoveType::Swap: return k * (n - k);
  }
  return 0.0;
}

}  // namespace

SearchResult sam_solve(const ImpdInstance& inst, SeedObjective& objective, const SamParams& params) {
  params.validate();
  inst.validate();
  SearchResult result;
  detail::SearchRun run(inst, objective, params.limits, result);

  SeedSet current = initial_solution(inst, params.initial);
  if (!is_eligible(inst, current, nullptr)) {
    fail(ErrorKind::Infeasible, "no eligible initial solution: seed {" + current.to_string() + "}");
  }
  double z_current = run.start(current);
  double f_current = pseudo_objective(inst, current, z_current);

  const auto allowed = allowed_moves(inst);
  double temperature = 1.0;
  if (!run.expired()) {
    Rng temp_rng = make_rng(params.rng_seed, "sam-temperature");
    detail::ProbeObjective probe(run);
    temperature = initial_temperature(inst, probe, params.p0, temp_rng, params.temperature_samples).temperature;
  }
  result.initial_temperature = temperature;

  double cycle_length = 0.0;
  for (MoveType t : allowed) {
    cycle_length += neighbourhood_size(t, static_cast<double>(current.size()), static_cast<double>(inst.node_count()));
  }
  cycle_length = std::max(1.0, cycle_length / static_cast<double>(allowed.size()));

  Rng rng = make_rng(params.rng_seed, "sam");
  std::string reason = "time limit";
  bool stop = false;
  while (!stop && !run.expired()) {
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(cycle_length)));
    std::size_t accepted_count = 0;
    std::size_t done = 0;
    for (; done < steps; ++done) {
      if (run.expired()) {
        stop = true;
        break;
      }
      const auto order = detail::fall_through_order(allowed, static_cast<std::size_t>(uniform_index(rng, allowed.size())));
      std::vector<Move> moves;
      MoveType type = order.front();
      for (MoveType t : order) {
        moves = eligible_moves(inst, current, t, &run.visited());
        type = t;
        if (!moves.empty()) break;
      }
      if (moves.empty()) {
        reason = "no eligible neighbour";
        stop = true;
        break;
      }
      const SeedSet next = apply_move(current, moves[uniform_index(rng, moves.size())]);
      const double z_next = run.visit(next);
      const double f_next = pseudo_objective(inst, next, z_next);
      const double delta = f_next - f_current;
      const bool accept = metropolis_accept(delta, temperature, rng);
      if (accept) {
        current = next;
        z_current = z_next;
        f_current = f_next;
        ++accepted_count;
      }
      ++result.move_counts[static_cast<std::size_t>(type)];
      ++result.iterations;
      result.trace.push_back(
          {run.elapsed(), result.iterations, result.best_value, z_current, temperature, type, accept, current});
    }
    if (stop) break;
    if (static_cast<double>(accepted_count) / static_cast<double>(steps) > params.accept_threshold) {
      temperature /= 2.0;
    } else {
      temperature *= params.cooling;
    }
    cycle_length *= 1.0 + params.growth;
  }
  run.finish(reason);
  return result;
}

}  // namespace impd
