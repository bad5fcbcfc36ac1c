#include <doctest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "impd/leader.hpp"

using namespace impd;
using namespace impd::testing;

namespace {

SaaParams tiny_saa(std::uint64_t seed = 1) {
  SaaParams p;
  p.batch_size = 10;
  p.batch_count = 4;
  p.eval_size = 50;
  p.final_size = 200;
  p.rng_seed = seed;
  return p;
}

SearchLimits evals(double t_max) {
  SearchLimits l;
  l.clock = ClockMode::Evaluations;
  l.t_max = t_max;
  l.checkpoint_interval = t_max / 3.0;
  return l;
}

ImpdInstance cost_instance(std::uint64_t seed, NodeId n) {
  InstanceSpec spec;
  spec.node_count = n;
  spec.density = 3.0 / (n - 1.0);
  spec.cost_mode = CostMode::CostBased;
  spec.leader_budget = 50;
  spec.follower_budget = 20;
  spec.rng_seed = seed;
  return generate_instance(spec);
}

/// Pseudo-random but fixed value per seed set, in [0, 10).
double hashed_value(const SeedSet& s) {
  return static_cast<double>(NodeSubsetHash{}(s) % 1000003) / 100000.3;
}

/// Feasible, and the follower cannot deactivate all of it.
bool eligible_by_definition(const ImpdInstance& inst, const SeedSet& s) {
  double c = 0.0, e = 0.0;
  for (NodeId v : s.members()) {
    c += inst.activation_costs[v];
    e += inst.deactivation_costs[v];
  }
  return c <= inst.leader_budget + 1e-9 && e > inst.follower_budget + 1e-9;
}

/// Every neighbour of `s` under one move type, by brute force.
std::vector<SeedSet> neighbours(const ImpdInstance& inst, const SeedSet& s, MoveType type) {
  std::vector<SeedSet> out;
  for (NodeId a = 0; a < inst.node_count(); ++a) {
    if (type == MoveType::Add && !s.contains(a)) out.push_back(s.with(a));
    if (type == MoveType::Drop && s.contains(a)) out.push_back(s.without(a));
    if (type == MoveType::Swap && s.contains(a)) {
      for (NodeId b = 0; b < inst.node_count(); ++b) {
        if (!s.contains(b)) out.push_back(s.without(a).with(b));
      }
    }
  }
  return out;
}

void check_run_invariants(const ImpdInstance& inst, const SearchResult& r) {
  std::set<SeedSet> seen;
  for (const auto& s : r.evaluated) {
    CHECK(seen.insert(s).second);
    CHECK(eligible_by_definition(inst, s));
  }
  double last = -1.0;
  for (const auto& row : r.trace) {
    CHECK(row.incumbent >= last);
    last = row.incumbent;
    CHECK(eligible_by_definition(inst, row.current_set));
  }
  CHECK(r.best_value >= r.initial_value);
  for (std::size_t k = 1; k < r.checkpoints.size(); ++k) {
    CHECK(r.checkpoints[k].incumbent >= r.checkpoints[k - 1].incumbent);
    CHECK(r.checkpoints[k].at > r.checkpoints[k - 1].at);
  }
  if (!r.checkpoints.empty()) CHECK(r.checkpoints.back().incumbent <= r.best_value);
  if (inst.cost_mode == CostMode::Cardinality) {
    CHECK(r.move_counts[0] == 0);
    CHECK(r.move_counts[1] == 0);
    CHECK(r.move_counts[2] == r.iterations);
  }
}

}  // namespace

TEST_CASE("pseudo objective and comparisons") {
  CHECK(pseudo_objective(figure1_instance(2, 1), {A}, 1.0) == 2.0);
  CHECK(pseudo_objective(figure1_instance(2, 1), {A, B}, 1.5) == 1.5);
  auto cost = figure1_instance(40, 10);
  cost.cost_mode = CostMode::CostBased;
  cost.activation_costs = {10, 20, 10, 20, 10, 20};  // mean 15
  CHECK(pseudo_objective(cost, {A, B}, 3.0) == doctest::Approx(3.0 + 10.0 / 15.0));

  CHECK(compare_delta(10, 10) == 0.0);
  CHECK(compare_delta(8.0, 8.8) == doctest::Approx(10.0));
  CHECK(compare_delta(8.0, 7.2) == doctest::Approx(-10.0));
  CHECK(thrown_kind([] { compare_delta(0.0, 1.0); }) == ErrorKind::InvalidArgument);

  CHECK(relative_gap(10, 9) == doctest::Approx(10.0));
  CHECK(relative_gap(0, 0) == 0.0);
  CHECK(std::isnan(relative_gap(0, 1)));
}

TEST_CASE("visited memory and eligibility") {
  VisitedMemory mem(4);
  CHECK(mem.frequency(0) == 0.0);
  CHECK(mem.insert({0, 1}));
  CHECK(!mem.insert({1, 0}));
  CHECK(mem.insert({1, 2}));
  CHECK(mem.size() == 2);
  CHECK(mem.contains({0, 1}));
  CHECK(mem.frequency(1) == 1.0);
  CHECK(mem.frequency(0) == 0.5);
  CHECK(mem.frequency(3) == 0.0);

  const auto fig = figure1_instance(2, 1);
  CHECK(!is_eligible(fig, {A}, nullptr));        // follower can remove it all
  CHECK(is_eligible(fig, {A, D}, nullptr));
  CHECK(!is_eligible(fig, {A, B, C}, nullptr));  // over the leader budget
  VisitedMemory seen(6);
  seen.insert({A, D});
  CHECK(!is_eligible(fig, {A, D}, &seen));
}

TEST_CASE("maximal seeds agree with brute force") {
  const auto fig = maximal_seeds(figure1_instance(2, 1));
  CHECK(fig.size() == 15);
  CHECK(fig.front() == SeedSet{E, F});
  CHECK(fig.back() == SeedSet{A, B});

  Rng rng = make_rng(31, "test-maximal");
  for (int t = 0; t < 30; ++t) {
    const NodeId n = 3 + static_cast<NodeId>(uniform_index(rng, 8));
    auto inst = make_cardinality_instance("m", build_graph(n, {}), 1, 0);
    inst.cost_mode = CostMode::CostBased;
    for (auto& c : inst.activation_costs) c = 10.0 + 5.0 * static_cast<double>(uniform_index(rng, 3));
    inst.leader_budget = 20.0 + 5.0 * static_cast<double>(uniform_index(rng, 6));
    std::set<SeedSet> want;
    for (std::uint64_t mask = 1; mask < (1u << n); ++mask) {
      double c = 0.0;
      for (NodeId v = 0; v < n; ++v) c += (mask >> v & 1) ? inst.activation_costs[v] : 0.0;
      if (c > inst.leader_budget + 1e-9) continue;
      bool maximal = true;
      for (NodeId v = 0; v < n; ++v) {
        if (!(mask >> v & 1) && c + inst.activation_costs[v] <= inst.leader_budget + 1e-9) maximal = false;
      }
      if (!maximal) continue;
      std::vector<NodeId> ids;
      for (NodeId v = 0; v < n; ++v) {
        if (mask >> v & 1) ids.push_back(v);
      }
      want.insert(SeedSet(ids));
    }
    const auto got = maximal_seeds(inst);
    CHECK(std::set<SeedSet>(got.begin(), got.end()) == want);
    CHECK(got.size() == want.size());
  }
}

TEST_CASE("complete enumeration") {
  CHECK(enumeration_size_estimate(figure1_instance(2, 1)) == 1 + 6 + 15);
  InstanceSpec spec;
  CHECK(enumeration_size_estimate(generate_instance(spec)) == 1 + 20 + 190 + 1140);

  FunctionObjective f(hashed_value);
  const auto inst = cost_instance(3, 9);
  const auto r = solve_complete_enumeration(inst, f);
  double best = -1.0;
  for (const auto& s : maximal_seeds(inst)) best = std::max(best, hashed_value(s));
  CHECK(r.value == best);
  CHECK(r.evaluated == maximal_seeds(inst).size());

  spec.node_count = 200;
  spec.density = 0.02;
  spec.leader_budget = 15;
  const auto big = generate_instance(spec);
  CHECK(thrown_kind([&] { solve_complete_enumeration(big, f); }) == ErrorKind::Guard);
}

TEST_CASE("initial solutions") {
  // Singleton spreads with the figure 1 thresholds.
  const auto fig = figure1_instance(2, 1);
  CHECK(node_scores(fig, 5, 1) == std::vector<double>{5, 4, 2, 1, 3, 1});
  CHECK(initial_solution_score(fig, 5, 1) == SeedSet{A, B});
  CHECK(initial_solution(fig, {}) == SeedSet{A, B});

  auto cost = figure1_instance(35, 10);
  cost.cost_mode = CostMode::CostBased;
  cost.activation_costs = {20, 10, 15, 10, 15, 20};
  cost.deactivation_costs = {10, 10, 20, 15, 10, 10};
  // c ascending, e descending: D(10,15) B(10,10) C(15,20) E(15,10) ...
  CHECK(initial_solution_cost(cost) == SeedSet{B, C, D});
  CHECK(initial_solution(cost, {}) == SeedSet{B, C, D});
  // Top half by score is A, B, E; by c/e: B (1.0), E (1.5), A (2.0).
  CHECK(initial_solution_score(cost, 5, 1) == SeedSet{B, E});
}

TEST_CASE("moves") {
  const auto fig = figure1_instance(2, 1);
  CHECK(apply_move({A, B}, {MoveType::Swap, A, C}) == SeedSet{B, C});
  CHECK(apply_move({A}, {MoveType::Add, -1, D}) == SeedSet{A, D});
  CHECK(apply_move({A, D}, {MoveType::Drop, D, -1}) == SeedSet{A});
  CHECK(allowed_moves(fig) == std::vector<MoveType>{MoveType::Swap});
  CHECK(allowed_moves(cost_instance(1, 10)).size() == 3);

  const auto swaps = eligible_moves(fig, {A, B}, MoveType::Swap, nullptr);
  CHECK(swaps.size() == 8);
  CHECK(swaps.front().out == A);
  CHECK(swaps.front().in == C);
  CHECK(eligible_moves(fig, {A, B}, MoveType::Add, nullptr).empty());
  CHECK(eligible_moves(fig, {A, B}, MoveType::Drop, nullptr).empty());
}

TEST_CASE("temperature and acceptance") {
  CHECK(temperature_from_delta(0.0, 0.8) == 1.0);
  CHECK(temperature_from_delta(2.0, 0.8) == doctest::Approx(-2.0 / std::log(0.8)));
  Rng rng = make_rng(41, "test-accept");
  const double t = 3.7;
  int accepted = 0;
  const int trials = 200000;
  for (int k = 0; k < trials; ++k) accepted += metropolis_accept(-t, t, rng);
  CHECK(static_cast<double>(accepted) / trials == doctest::Approx(std::exp(-1.0)).epsilon(0.02 / std::exp(-1.0)));
  CHECK(metropolis_accept(0.0, t, rng));
  CHECK(metropolis_accept(1.0, t, rng));
}

TEST_CASE("checkpoint times") {
  SearchLimits l = evals(300);
  l.checkpoint_interval = 100;
  CHECK(l.checkpoint_times() == std::vector<double>{100, 200, 300});
  l.checkpoints = {50, 250, 400};
  CHECK(l.checkpoint_times() == std::vector<double>{50, 250});
}

TEST_CASE("figure 1 searches reach the optimum") {
  for (double budget : {1.0, 0.0}) {
    const auto fig = figure1_instance(2, budget);
    SaaObjective objective(fig, tiny_saa());
    SamParams sp;
    sp.limits = evals(200);
    TsmParams tp;
    tp.limits = evals(200);
    const double want = budget == 1.0 ? 2.0 : 6.0;
    CHECK(sam_solve(fig, objective, sp).best_value == want);
    CHECK(tsm_solve(fig, objective, shortest_path_matrix(fig.graph), tp).best_value == want);
  }
}

TEST_CASE("search invariants") {
  InstanceSpec spec;
  spec.rng_seed = 4;
  const auto card = generate_instance(spec);
  const auto cost = cost_instance(5, 15);
  for (const auto* inst : {&card, &cost}) {
    SaaObjective objective(*inst, tiny_saa(2));
    const auto lengths = shortest_path_matrix(inst->graph);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      SamParams sp;
      sp.limits = evals(400);
      sp.rng_seed = seed;
      const auto s = sam_solve(*inst, objective, sp);
      check_run_invariants(*inst, s);
      CHECK(s.evaluations <= 400);
      TsmParams tp;
      tp.limits = evals(400);
      tp.rng_seed = seed;
      const auto t = tsm_solve(*inst, objective, lengths, tp);
      check_run_invariants(*inst, t);
      CHECK(t.evaluations <= 400);
      CHECK(t.initial == s.initial);
    }
  }
}

TEST_CASE("searches are reproducible on the evaluation clock") {
  const auto inst = cost_instance(6, 15);
  SaaObjective a(inst, tiny_saa(3)), b(inst, tiny_saa(3));
  SamParams sp;
  sp.limits = evals(300);
  const auto ra = sam_solve(inst, a, sp), rb = sam_solve(inst, b, sp);
  CHECK(ra.evaluated == rb.evaluated);
  CHECK(ra.best_value == rb.best_value);
  CHECK(ra.initial_temperature == rb.initial_temperature);
}

TEST_CASE("initial seed must be eligible") {
  SamParams sp;
  sp.limits = evals(50);
  FunctionObjective f(hashed_value);
  // With C = E = 1 the follower always removes the only seed node.
  CHECK(thrown_kind([&] { sam_solve(figure1_instance(1, 1), f, sp); }) == ErrorKind::Infeasible);
}

TEST_CASE("TSM with a full candidate list picks the best eligible neighbour") {
  for (int mode = 0; mode < 2; ++mode) {
    InstanceSpec spec;
    spec.node_count = 10;
    spec.density = 0.2;
    spec.rng_seed = 7;
    if (mode == 1) {
      spec.cost_mode = CostMode::CostBased;
      spec.leader_budget = 45;
      spec.follower_budget = 15;
    }
    const auto inst = generate_instance(spec);
    FunctionObjective f(hashed_value);
    TsmParams tp;
    tp.tau = 1.0;
    tp.mu = 0.0;
    tp.limits = evals(100000);
    const auto r = tsm_solve(inst, f, shortest_path_matrix(inst.graph), tp);
    CHECK(r.stop_reason == "no eligible neighbour");
    REQUIRE(!r.evaluated.empty());

    std::set<SeedSet> visited{r.evaluated[0]};
    std::size_t pos = 1;
    SeedSet current = r.evaluated[0];
    for (const auto& row : r.trace) {
      std::set<SeedSet> candidates;
      for (const auto& s : neighbours(inst, current, row.move)) {
        if (eligible_by_definition(inst, s) && !visited.contains(s)) candidates.insert(s);
      }
      REQUIRE(!candidates.empty());
      REQUIRE(pos + candidates.size() <= r.evaluated.size());
      const std::set<SeedSet> evaluated(r.evaluated.begin() + pos, r.evaluated.begin() + pos + candidates.size());
      CHECK(evaluated == candidates);
      const SeedSet best = *std::max_element(candidates.begin(), candidates.end(), [&](const auto& x, const auto& y) {
        return pseudo_objective(inst, x, hashed_value(x)) < pseudo_objective(inst, y, hashed_value(y));
      });
      CHECK(row.current_set == best);
      visited.insert(candidates.begin(), candidates.end());
      pos += candidates.size();
      current = row.current_set;
    }
    CHECK(pos == r.evaluated.size());
  }
}
