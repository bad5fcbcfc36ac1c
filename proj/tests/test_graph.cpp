#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "impd/graph.hpp"

using namespace impd;
using namespace impd::testing;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("impd_test_graph_" + name);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("build_graph validates and merges parallel arcs") {
  CHECK(build_graph(2, {}).arc_count() == 0);

  const std::vector<Arc> dup{{0, 1, 0.3}, {0, 1, 0.3}};
  CHECK(build_graph(2, dup).arc_count() == 1);

  const std::vector<Arc> first_kept{{0, 1, 0.3}, {0, 1, 0.9}};
  CHECK(build_graph(2, first_kept).arcs()[0].weight == 0.3);

  const std::vector<Arc> loop{{1, 1, 0.5}};
  CHECK(thrown_kind([&] { build_graph(2, loop); }) == ErrorKind::InvalidArgument);
  const std::vector<Arc> out_of_range{{0, 2, 0.5}};
  CHECK(thrown_kind([&] { build_graph(2, out_of_range); }) == ErrorKind::InvalidArgument);
  const std::vector<Arc> zero{{0, 1, 0.0}};
  CHECK(thrown_kind([&] { build_graph(2, zero); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("figure 1 graph") {
  const auto g = figure1_graph();
  CHECK(g.node_count() == 6);
  CHECK(g.arc_count() == 9);
  CHECK(g.max_in_weight_sum() <= 1.0);
  CHECK(g.in_degree(C) == 2);
  CHECK(g.out_degree(B) == 3);
  CHECK(g.in_weight_sum(C) == doctest::Approx(1.0));
}

TEST_CASE("normalize_in_weights") {
  const std::vector<Arc> heavy{{0, 2, 0.8}, {1, 2, 0.8}, {0, 1, 0.2}, {2, 1, 0.3}};
  const auto g = normalize_in_weights(build_graph(3, heavy));
  for (const auto& nb : g.in_neighbors(2)) CHECK(nb.weight == doctest::Approx(0.5));
  CHECK(g.in_weight_sum(1) == doctest::Approx(0.5));
  CHECK(g.arcs()[2].weight == 0.2);

  Rng rng = make_rng(1, "test-normalize");
  for (int t = 0; t < 100; ++t) {
    const auto r = random_graph(15, 0.4, rng);
    CHECK(r.max_in_weight_sum() <= 1.0 + 1e-12);
  }
}

TEST_CASE("density") {
  const std::vector<Arc> both{{0, 1, 0.5}, {1, 0, 0.5}};
  CHECK(density(build_graph(2, both)) == 1.0);
  CHECK(thrown_kind([] { density(build_graph(1, {})); }) == ErrorKind::InvalidArgument);
  Rng rng = make_rng(2, "test-density");
  const auto g = random_graph(20, 0.2, rng);
  CHECK(density(g) == static_cast<double>(g.arcs().size()) / (20.0 * 19.0));
}

TEST_CASE("Watts-Strogatz arc counts and determinism") {
  Rng a = make_rng(3, "ws");
  const auto g20 = generate_watts_strogatz({20, 0.105, 0.1}, a);
  CHECK(g20.arc_count() >= 38);
  CHECK(g20.arc_count() <= 42);
  CHECK(density(g20) == doctest::Approx(40.0 / 380.0));

  Rng b = make_rng(3, "ws");
  CHECK(generate_watts_strogatz({100, 0.0404, 0.1}, b).arc_count() == doctest::Approx(400).epsilon(0.05));

  Rng c1 = make_rng(9, "ws"), c2 = make_rng(9, "ws");
  CHECK(generate_watts_strogatz({30, 0.2, 0.1}, c1) == generate_watts_strogatz({30, 0.2, 0.1}, c2));

  // Without rewiring the arc set is the ring lattice.
  Rng d = make_rng(4, "ws");
  const auto ring = generate_watts_strogatz({10, 2.0 / 9.0, 0.0}, d);
  CHECK(ring.arc_count() == 20);
  for (const auto& arc : ring.arcs()) {
    const int offset = ((arc.head - arc.tail) % 10 + 10) % 10;
    CHECK((offset == 1 || offset == 9));
  }

  for (double target : {0.05, 0.1, 0.2, 0.3}) {
    Rng r = make_rng(5, "ws");
    const auto g = generate_watts_strogatz({40, target, 0.1}, r);
    CHECK(density(g) == doctest::Approx(target).epsilon(0.05));
    CHECK(g.max_in_weight_sum() <= 1.0 + 1e-12);
  }
}

TEST_CASE("edge list loading") {
  Rng rng = make_rng(1, "edges");
  const auto p = temp_file("dup.txt");
  write_text(p, "10 20\n20 30 0.5\n10 20 0.7\n");
  EdgeListStats stats;
  const auto g = load_edge_list(p, DefaultWeight::InverseOutDegree, rng, &stats);
  CHECK(g.node_count() == 3);
  CHECK(g.arc_count() == 2);
  CHECK(stats.parallel_removed == 1);
  CHECK(g.arcs()[0].weight == doctest::Approx(1.0));  // 1 / out-degree of node 10

  write_text(p, "");
  EdgeListStats empty;
  CHECK(load_edge_list(p, DefaultWeight::InverseOutDegree, rng, &empty).node_count() == 0);
  CHECK(!empty.warnings.empty());

  write_text(p, "1 2\n3 x\n");
  try {
    load_edge_list(p, DefaultWeight::InverseOutDegree, rng);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }

  EdgeListStats sample;
  const auto s = load_edge_list(IMPD_DATA_DIR "/sample_edges.txt", DefaultWeight::InverseOutDegree, rng, &sample);
  CHECK(s.node_count() == 12);
  CHECK(sample.self_loops_dropped == 1);
  CHECK(sample.parallel_removed == 1);
  CHECK(s.max_in_weight_sum() <= 1.0 + 1e-12);
  std::filesystem::remove(p);
}

TEST_CASE("edge list round trip") {
  Rng rng = make_rng(6, "roundtrip");
  const auto g = random_graph(12, 0.3, rng);
  const auto p = temp_file("rt.txt");
  save_edge_list(g, p);
  const auto back = load_edge_list(p, DefaultWeight::Uniform, rng);
  CHECK(back.sorted_arcs() == g.sorted_arcs());
  std::filesystem::remove(p);
}

TEST_CASE("top_outdegree_subgraph") {
  Rng rng = make_rng(7, "sub");
  const auto g = random_graph(10, 0.3, rng);
  CHECK(top_outdegree_subgraph(g, 10).sorted_arcs() == normalize_in_weights(g).sorted_arcs());

  std::vector<Arc> star;
  for (NodeId v = 1; v < 6; ++v) star.push_back({0, v, 0.2});
  std::vector<NodeId> kept;
  const auto hub = top_outdegree_subgraph(build_graph(6, star), 1, &kept);
  CHECK(hub.node_count() == 1);
  CHECK(kept == std::vector<NodeId>{0});
  CHECK(thrown_kind([&] { top_outdegree_subgraph(g, 11); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("shortest paths agree with Floyd-Warshall") {
  const auto fig = shortest_path_matrix(figure1_graph());
  // A->B->E->C (0.7 * 0.2 * 0.9) beats the direct A->B->C (0.7 * 0.1).
  CHECK(fig(A, C) == doctest::Approx(-std::log(0.7) - std::log(0.2) - std::log(0.9)));
  CHECK(fig(A, C) < -std::log(0.7) - std::log(0.1));
  CHECK(fig(A, A) == 0.0);
  CHECK(!fig.reachable(F, A));

  const std::vector<Arc> unit{{0, 1, 1.0}};
  CHECK(shortest_path_matrix(build_graph(2, unit))(0, 1) == 0.0);

  Rng rng = make_rng(8, "fw");
  for (int t = 0; t < 30; ++t) {
    const NodeId n = 2 + static_cast<NodeId>(uniform_index(rng, 49));
    const auto g = random_graph(n, 3.0 / n, rng);
    std::vector<double> d(static_cast<std::size_t>(n) * n, std::numeric_limits<double>::infinity());
    for (NodeId v = 0; v < n; ++v) d[v * n + v] = 0.0;
    for (const auto& a : g.arcs()) d[a.tail * n + a.head] = std::min(d[a.tail * n + a.head], -std::log(a.weight));
    for (NodeId k = 0; k < n; ++k)
      for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
    const auto lengths = shortest_path_matrix(g);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (std::isinf(d[i * n + j])) {
          CHECK(!lengths.reachable(i, j));
        } else {
          CHECK(lengths(i, j) == doctest::Approx(d[i * n + j]).epsilon(1e-9));
        }
      }
    }
  }
}
