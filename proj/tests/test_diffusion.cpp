#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>

#include "fixtures.hpp"
#include "impd/diffusion.hpp"

using namespace impd;
using namespace impd::testing;

namespace {

std::vector<NodeId> members(const InfluencedSet& s) { return {s.members().begin(), s.members().end()}; }

}  // namespace

TEST_CASE("figure 1 propagation") {
  const auto g = figure1_graph();
  const auto theta = figure1_thresholds();
  CHECK(members(propagate(g, {A, D}, {}, theta)) == std::vector<NodeId>{A, B, C, D, E, F});
  CHECK(members(propagate(g, {A, D}, {A}, theta)) == std::vector<NodeId>{D});
  CHECK(members(propagate(g, {B, C}, {}, theta)) == std::vector<NodeId>{B, C, E, F});
  CHECK(members(propagate(g, {B, C}, {B}, theta)) == std::vector<NodeId>{C, F});
  CHECK(members(propagate(g, {B, C}, {C}, theta)) == std::vector<NodeId>{B, E});
  CHECK(propagate(g, {}, {}, theta).empty());
}

TEST_CASE("deactivation must be within the seed") {
  const auto g = figure1_graph();
  CHECK(thrown_kind([&] { propagate(g, {A}, {B}, figure1_thresholds()); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("spread on a constant sample") {
  const auto g = figure1_graph();
  const auto sample = ThresholdSample::constant(figure1_thresholds(), 7);
  CHECK(spread(g, {B, C}, {}, sample) == 4.0);
  CHECK(spread(g, {B, C}, {B, C}, sample) == 0.0);
  CHECK(realization_counts(g, {A, D}, {A}, sample) == std::vector<int>(7, 1));
}

TEST_CASE("propagation matches the round-based oracle") {
  Rng rng = make_rng(11, "test-diffusion");
  for (int t = 0; t < 300; ++t) {
    const NodeId n = 2 + static_cast<NodeId>(uniform_index(rng, 30));
    const auto g = random_graph(n, 4.0 / n, rng);
    const auto seed = random_subset(n, uniform_index(rng, static_cast<std::uint64_t>(n) + 1), rng);
    std::vector<NodeId> deact;
    for (NodeId v : seed) {
      if (uniform01(rng) < 0.3) deact.push_back(v);
    }
    const auto sample = sample_thresholds_lhs(n, 4, rng);
    // Some exact zeros exercise the zero-threshold scan.
    std::vector<double> theta = row(sample, 0);
    if (t % 3 == 0) theta[uniform_index(rng, static_cast<std::uint64_t>(n))] = 0.0;
    const auto got = propagate(g, SeedSet(seed), DeactivationSet(deact), theta);
    const auto want = naive_propagate(g, seed, deact, theta);
    std::vector<NodeId> want_ids;
    for (NodeId v = 0; v < n; ++v) {
      if (want[v]) want_ids.push_back(v);
    }
    CHECK(members(got) == want_ids);

    double total = 0.0;
    for (std::size_t r = 0; r < sample.size(); ++r) total += naive_count(g, seed, deact, row(sample, r));
    CHECK(spread(g, SeedSet(seed), DeactivationSet(deact), sample) == doctest::Approx(total / 4.0));
  }
}

TEST_CASE("threshold equal to the incoming weight activates") {
  const std::vector<Arc> arcs{{0, 1, 0.4}};
  const auto g = build_graph(2, arcs);
  const std::vector<double> at{0.0, 0.4}, above{0.0, 0.4000001};
  CHECK(propagate(g, {0}, {}, at).size() == 2);
  CHECK(propagate(g, {0}, {}, above).size() == 1);
}

TEST_CASE("total_influenced stops early above the cap") {
  Rng rng = make_rng(12, "test-total");
  const auto g = random_graph(20, 0.2, rng);
  const auto sample = sample_thresholds_lhs(20, 50, rng);
  const SeedSet seed{0, 5, 9};
  const ActivePattern pattern(20, seed, {});
  Propagator prop(g);
  const long long full = total_influenced(prop, pattern, sample);
  const auto counts = realization_counts(g, seed, {}, sample);
  CHECK(full == std::accumulate(counts.begin(), counts.end(), 0LL));
  CHECK(total_influenced(prop, pattern, sample, full) == full);
  CHECK(total_influenced(prop, pattern, sample, full - 1) > full - 1);
}

TEST_CASE("LHS stratification") {
  Rng rng = make_rng(13, "test-lhs");
  const auto one = sample_thresholds_lhs(5, 1, rng);
  CHECK(one.size() == 1);
  const auto s = sample_thresholds_lhs(3, 4, rng);
  for (NodeId v = 0; v < 3; ++v) {
    std::vector<double> col;
    for (std::size_t r = 0; r < 4; ++r) col.push_back(s.value(r, v));
    std::sort(col.begin(), col.end());
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(col[k] > k * 0.25);
      CHECK(col[k] < (k + 1) * 0.25);
    }
  }
  const auto big = sample_thresholds_lhs(2, 10000, rng);
  double mean = 0.0;
  for (std::size_t r = 0; r < big.size(); ++r) mean += big.value(r, 1);
  CHECK(mean / 10000.0 == doctest::Approx(0.5).epsilon(0.02));
  CHECK(thrown_kind([&] { sample_thresholds_lhs(3, 0, rng); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("threshold sample CSV round trip") {
  Rng rng = make_rng(14, "test-csv");
  const auto s = sample_thresholds_lhs(6, 9, rng);
  const auto path = std::filesystem::temp_directory_path() / "impd_test_sample.csv";
  save_threshold_sample(s, 14, path);
  std::uint64_t seed = 0;
  const auto back = load_threshold_sample(path, &seed);
  CHECK(seed == 14);
  REQUIRE(back.size() == 9);
  for (std::size_t r = 0; r < 9; ++r) {
    for (NodeId v = 0; v < 6; ++v) CHECK(back.value(r, v) == s.value(r, v));
  }
  std::filesystem::remove(path);
}
