#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_set>

#include "impd/error.hpp"
#include "impd/graph.hpp"

namespace impd {

namespace {

struct RawArc {
  long long tail;
  long long head;
  double weight;  // NaN when absent
  bool has_weight;
};

bool parse_int(std::string_view token, long long& out) {
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_double(const std::string& token, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(token, &used);
    return used == token.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

InfluenceGraph load_edge_list(const std::filesystem::path& path, DefaultWeight fallback, Rng& rng,
                              EdgeListStats* stats) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open edge list " + path.string());

  EdgeListStats local;
  std::vector<RawArc> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() < 2 || tokens.size() > 3) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) + ": expected 'tail head [weight]'");
    }
    RawArc arc{};
    if (!parse_int(tokens[0], arc.tail) || !parse_int(tokens[1], arc.head)) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) + ": node ids must be integers");
    }
    arc.has_weight = tokens.size() == 3;
    if (arc.has_weight && (!parse_double(tokens[2], arc.weight) || !(arc.weight > 0.0))) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) + ": weight must be a positive number");
    }
    raw.push_back(arc);
  }
  local.lines = line_no;
  local.arcs_read = raw.size();

  std::map<long long, NodeId> ids;
  for (const RawArc& a : raw) {
    ids.emplace(a.tail, 0);
    ids.emplace(a.head, 0);
  }
  NodeId next = 0;
  for (auto& [original, compact] : ids) compact = next++;

  std::unordered_set<std::uint64_t> seen;
  std::vector<RawArc> kept;
  for (const RawArc& a : raw) {
    if (a.tail == a.head) {
      ++local.self_loops_dropped;
      continue;
    }
    const auto key = (static_cast<std::uint64_t>(ids[a.tail]) << 32) | static_cast<std::uint32_t>(ids[a.head]);
    if (!seen.insert(key).second) {
      ++local.parallel_removed;
      continue;
    }
    kept.push_back(a);
  }

  std::vector<std::size_t> out_degree(ids.size(), 0);
  for (const RawArc& a : kept) ++out_degree[ids[a.tail]];

  std::vector<Arc> arcs;
  arcs.reserve(kept.size());
  for (const RawArc& a : kept) {
    const NodeId tail = ids[a.tail];
    double w = a.weight;
    if (!a.has_weight) {
      w = fallback == DefaultWeight::Uniform ? 1.0 - uniform01(rng) : 1.0 / static_cast<double>(out_degree[tail]);
    }
    arcs.push_back({tail, ids[a.head], w});
  }
  if (raw.empty()) local.warnings.push_back("edge list " + path.string() + " contains no arcs");
  if (stats) *stats = std::move(local);
  return normalize_in_weights(InfluenceGraph::build(next, arcs));
}

void save_edge_list(const InfluenceGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write edge list " + path.string());
  out << "# nodes " << g.node_count() << " arcs " << g.arc_count() << "\n";
  char buf[64];
  for (const Arc& a : g.sorted_arcs()) {
    std::snprintf(buf, sizeof buf, "%.17g", a.weight);
    out << a.tail << ' ' << a.head << ' ' << buf << '\n';
  }
  if (!out) fail(ErrorKind::Io, "failed writing " + path.string());
}

}  // namespace impd
