#include "impd/diffusion.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "impd/error.hpp"

namespace impd {

ThresholdSample::ThresholdSample(NodeId node_count, std::size_t realizations, std::vector<double> values)
    : node_count_(node_count), realizations_(realizations), values_(std::move(values)) {
  if (node_count < 0) fail(ErrorKind::InvalidArgument, "negative node count");
  if (values_.size() != realizations * static_cast<std::size_t>(node_count)) {
    fail(ErrorKind::InvalidArgument, "threshold sample has " + std::to_string(values_.size()) +
                                         " values, expected " +
                                         std::to_string(realizations * static_cast<std::size_t>(node_count)));
  }
  zero_rows_.assign(realizations, 0);
  for (std::size_t r = 0; r < realizations; ++r) {
    for (NodeId v = 0; v < node_count; ++v) {
      const double t = value(r, v);
      if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::InvalidArgument, "threshold outside [0, 1]");
      if (t == 0.0) zero_rows_[r] = 1;
    }
  }
}

ThresholdSample ThresholdSample::constant(std::span<const double> theta, std::size_t realizations) {
  std::vector<double> values;
  values.reserve(theta.size() * realizations);
  for (std::size_t r = 0; r < realizations; ++r) values.insert(values.end(), theta.begin(), theta.end());
  return ThresholdSample(static_cast<NodeId>(theta.size()), realizations, std::move(values));
}

ThresholdSample sample_thresholds_lhs(NodeId node_count, std::size_t realizations, Rng& rng) {
  if (realizations == 0) fail(ErrorKind::InvalidArgument, "sample size must be at least 1");
  const auto n = static_cast<std::size_t>(node_count);
  std::vector<double> values(realizations * n);
  std::vector<double> column(realizations);
  const double width = 1.0 / static_cast<double>(realizations);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < realizations; ++k) {
      // Open-interval draw keeps every value strictly inside its stratum.
      column[k] = (static_cast<double>(k) + uniform_open01(rng)) * width;
    }
    shuffle(std::span<double>(column), rng);
    for (std::size_t r = 0; r < realizations; ++r) values[r * n + v] = column[r];
  }
  return ThresholdSample(node_count, realizations, std::move(values));
}

void save_threshold_sample(const ThresholdSample& sample, std::uint64_t rng_seed, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << "# threshold sample\n# rng_seed " << rng_seed << "\n# nodes " << sample.node_count() << " realizations "
      << sample.size() << "\n";
  char buf[40];
  for (std::size_t r = 0; r < sample.size(); ++r) {
    for (NodeId v = 0; v < sample.node_count(); ++v) {
      std::snprintf(buf, sizeof buf, "%.17g", sample.value(r, v));
      if (v) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) fail(ErrorKind::Io, "failed writing " + path.string());
}

ThresholdSample load_threshold_sample(const std::filesystem::path& path, std::uint64_t* rng_seed) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  long long nodes = -1;
  std::size_t rows = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream head(line.substr(1));
      std::string key;
      head >> key;
      if (key == "rng_seed" && rng_seed) head >> *rng_seed;
      continue;
    }
    std::istringstream fields(line);
    std::string cell;
    long long count = 0;
    while (std::getline(fields, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) + ": bad threshold value");
      }
      ++count;
    }
    if (nodes < 0) nodes = count;
    if (count != nodes) fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) + ": ragged row");
    ++rows;
  }
  return ThresholdSample(static_cast<NodeId>(std::max(nodes, 0LL)), rows, std::move(values));
}

Propagator::Propagator(const InfluenceGraph& g)
    : graph_(&g),
      accumulated_(static_cast<std::size_t>(g.node_count()), 0.0),
      influenced_(static_cast<std::size_t>(g.node_count()), 0) {
  order_.reserve(static_cast<std::size_t>(g.node_count()));
  touched_.reserve(static_cast<std::size_t>(g.node_count()));
}

void Propagator::reset() {
  for (NodeId v : order_) influenced_[v] = 0;
  for (NodeId v : touched_) accumulated_[v] = 0.0;
  order_.clear();
  touched_.clear();
}

std::span<const NodeId> Propagator::run(std::span<const NodeId> sources, std::span<const std::uint8_t> blocked,
                                        std::span<const double> theta, bool scan_zero_thresholds) {
  reset();
  ++runs_;
  for (NodeId s : sources) {
    if (!influenced_[s]) {
      influenced_[s] = 1;
      order_.push_back(s);
    }
  }
  if (scan_zero_thresholds) {
    for (NodeId v = 0; v < graph_->node_count(); ++v) {
      if (theta[v] <= 0.0 && !blocked[v] && !influenced_[v]) {
        influenced_[v] = 1;
        order_.push_back(v);
      }
    }
  }
  // The queue is the influenced list itself; each node spreads exactly once.
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const NodeId u = order_[head];
    for (const Neighbor& nb : graph_->out_neighbors(u)) {
      const NodeId v = nb.node;
      if (influenced_[v] || blocked[v]) continue;
      if (accumulated_[v] == 0.0) touched_.push_back(v);
      accumulated_[v] += nb.weight;
      if (accumulated_[v] >= theta[v]) {
        influenced_[v] = 1;
        order_.push_back(v);
      }
    }
  }
  return order_;
}

int Propagator::count(std::span<const NodeId> sources, std::span<const std::uint8_t> blocked,
                      std::span<const double> theta, bool scan_zero_thresholds) {
  return static_cast<int>(run(sources, blocked, theta, scan_zero_thresholds).size());
}

ActivePattern::ActivePattern(NodeId node_count, const SeedSet& seed, const DeactivationSet& deactivated)
    : blocked(static_cast<std::size_t>(node_count), 0) {
  if (!deactivated.is_subset_of(seed)) {
    fail(ErrorKind::InvalidArgument, "deactivated nodes {" + deactivated.to_string() +
                                         "} are not a subset of the seed {" + seed.to_string() + "}");
  }
  for (NodeId v : seed.members()) {
    if (v < 0 || v >= node_count) fail(ErrorKind::InvalidArgument, "seed node " + std::to_string(v) + " out of range");
  }
  for (NodeId v : deactivated.members()) blocked[v] = 1;
  for (NodeId v : seed.members()) {
    if (!blocked[v]) sources.push_back(v);
  }
}

InfluencedSet propagate(const InfluenceGraph& g, const SeedSet& seed, const DeactivationSet& deactivated,
                        std::span<const double> theta) {
  if (theta.size() != static_cast<std::size_t>(g.node_count())) {
    fail(ErrorKind::InvalidArgument, "threshold vector length does not match node count");
  }
  const ActivePattern pattern(g.node_count(), seed, deactivated);
  Propagator propagator(g);
  auto reached = propagator.run(pattern.sources, pattern.blocked, theta);
  return InfluencedSet(std::vector<NodeId>(reached.begin(), reached.end()));
}

long long total_influenced(Propagator& propagator, const ActivePattern& pattern, const ThresholdSample& sample,
                           long long stop_above) {
  long long total = 0;
  for (std::size_t r = 0; r < sample.size(); ++r) {
    total += propagator.count(pattern.sources, pattern.blocked, sample.realization(r), sample.has_zero_threshold(r));
    if (total > stop_above) return total;
  }
  return total;
}

std::vector<int> realization_counts(const InfluenceGraph& g, const SeedSet& seed, const DeactivationSet& deactivated,
                                    const ThresholdSample& sample) {
  if (sample.node_count() != g.node_count()) fail(ErrorKind::InvalidArgument, "sample does not match graph size");
  const ActivePattern pattern(g.node_count(), seed, deactivated);
  Propagator propagator(g);
  std::vector<int> counts(sample.size());
  for (std::size_t r = 0; r < sample.size(); ++r) {
    counts[r] = propagator.count(pattern.sources, pattern.blocked, sample.realization(r), sample.has_zero_threshold(r));
  }
  return counts;
}

double spread(const InfluenceGraph& g, const SeedSet& seed, const DeactivationSet& deactivated,
              const ThresholdSample& sample) {
  if (sample.node_count() != g.node_count()) fail(ErrorKind::InvalidArgument, "sample does not match graph size");
  if (sample.size() == 0) return 0.0;
  const ActivePattern pattern(g.node_count(), seed, deactivated);
  Propagator propagator(g);
  return static_cast<double>(total_influenced(propagator, pattern, sample)) / static_cast<double>(sample.size());
}

}  // namespace impd
