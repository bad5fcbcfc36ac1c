#include "impd/instance.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "impd/error.hpp"

namespace impd {

const char* to_string(CostMode mode) { return mode == CostMode::Cardinality ? "cardinality" : "cost-based"; }

CostMode parse_cost_mode(const std::string& text) {
  if (text == "cardinality") return CostMode::Cardinality;
  if (text == "cost-based" || text == "cost") return CostMode::CostBased;
  fail(ErrorKind::InvalidArgument, "unknown cost mode '" + text + "'");
}

const char* to_string(BudgetRule rule) {
  switch (rule) {
    case BudgetRule::Explicit: return "explicit";
    case BudgetRule::LeaderFraction: return "leader-fraction";
    case BudgetRule::SeedFraction: return "seed-fraction";
  }
  return "?";
}

BudgetRule parse_budget_rule(const std::string& text) {
  if (text == "explicit") return BudgetRule::Explicit;
  if (text == "leader-fraction") return BudgetRule::LeaderFraction;
  if (text == "seed-fraction") return BudgetRule::SeedFraction;
  fail(ErrorKind::InvalidArgument, "unknown budget rule '" + text + "'");
}

bool within_budget(double cost, double budget) { return cost <= budget + 1e-9 * std::max(1.0, std::fabs(budget)); }

double ImpdInstance::mean_activation_cost() const {
  if (activation_costs.empty()) return 1.0;
  return std::accumulate(activation_costs.begin(), activation_costs.end(), 0.0) /
         static_cast<double>(activation_costs.size());
}

double ImpdInstance::activation_cost(const SeedSet& s) const {
  double total = 0.0;
  for (NodeId v : s.members()) total += activation_costs[v];
  return total;
}

double ImpdInstance::deactivation_cost(const SeedSet& s) const {
  double total = 0.0;
  for (NodeId v : s.members()) total += deactivation_costs[v];
  return total;
}

bool ImpdInstance::leader_feasible(const SeedSet& s) const { return within_budget(activation_cost(s), leader_budget); }

void ImpdInstance::validate() const {
  const auto n = static_cast<std::size_t>(graph.node_count());
  if (activation_costs.size() != n || deactivation_costs.size() != n) {
    fail(ErrorKind::InvalidArgument, "instance '" + name + "': cost vectors must have one entry per node");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(activation_costs[i] > 0.0) || !(deactivation_costs[i] > 0.0) || !std::isfinite(activation_costs[i]) ||
        !std::isfinite(deactivation_costs[i])) {
      fail(ErrorKind::InvalidArgument, "instance '" + name + "': costs must be positive (node " + std::to_string(i) + ")");
    }
    if (cost_mode == CostMode::Cardinality && (activation_costs[i] != 1.0 || deactivation_costs[i] != 1.0)) {
      fail(ErrorKind::InvalidArgument, "instance '" + name + "': cardinality mode needs unit costs");
    }
  }
  if (!(leader_budget >= 0.0) || !(follower_budget >= 0.0)) {
    fail(ErrorKind::InvalidArgument, "instance '" + name + "': budgets must be non-negative");
  }
  if (fixed_thresholds) {
    if (fixed_thresholds->size() != n) fail(ErrorKind::InvalidArgument, "instance '" + name + "': threshold count");
    for (double t : *fixed_thresholds) {
      if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::InvalidArgument, "instance '" + name + "': threshold outside [0,1]");
    }
  }
}

ImpdInstance make_cardinality_instance(std::string name, InfluenceGraph graph, double leader_budget,
                                       double follower_budget) {
  ImpdInstance inst;
  inst.name = std::move(name);
  const auto n = static_cast<std::size_t>(graph.node_count());
  inst.graph = std::move(graph);
  inst.cost_mode = CostMode::Cardinality;
  inst.activation_costs.assign(n, 1.0);
  inst.deactivation_costs.assign(n, 1.0);
  inst.leader_budget = leader_budget;
  inst.follower_budget = follower_budget;
  inst.validate();
  return inst;
}

ThresholdSample draw_thresholds(const ImpdInstance& inst, std::size_t realizations, Rng& rng) {
  if (inst.fixed_thresholds) return ThresholdSample::constant(*inst.fixed_thresholds, realizations);
  return sample_thresholds_lhs(inst.node_count(), realizations, rng);
}

void InstanceSpec::validate() const {
  if (node_count < 2) fail(ErrorKind::InvalidArgument, "instance spec needs n >= 2");
  if (!(density > 0.0 && density <= 1.0)) fail(ErrorKind::InvalidArgument, "density must lie in (0, 1]");
  if (cost_set.empty()) fail(ErrorKind::InvalidArgument, "cost set is empty");
  for (double c : cost_set) {
    if (!(c > 0.0)) fail(ErrorKind::InvalidArgument, "cost set entries must be positive");
  }
  for (double f : {leader_fraction, follower_fraction, seed_fraction}) {
    if (!(f > 0.0 && f < 1.0)) fail(ErrorKind::InvalidArgument, "budget fractions must lie in (0, 1)");
  }
  if (budget_rule == BudgetRule::Explicit && (leader_budget < 0.0 || follower_budget < 0.0)) {
    fail(ErrorKind::InvalidArgument, "budgets must be non-negative");
  }
}

ImpdInstance generate_instance(const InstanceSpec& spec) {
  spec.validate();
  Rng graph_rng = make_rng(spec.rng_seed, "instance-graph");
  Rng cost_rng = make_rng(spec.rng_seed, "instance-costs");

  ImpdInstance inst;
  inst.name = spec.name;
  inst.cost_mode = spec.cost_mode;
  inst.graph = generate_watts_strogatz({spec.node_count, spec.density, spec.rewire_prob}, graph_rng);
  const auto n = static_cast<std::size_t>(spec.node_count);

  auto draw_cost = [&] { return spec.cost_set[uniform_index(cost_rng, spec.cost_set.size())]; };
  if (spec.cost_mode == CostMode::Cardinality) {
    inst.activation_costs.assign(n, 1.0);
    inst.deactivation_costs.assign(n, 1.0);
  } else {
    inst.activation_costs.resize(n);
    inst.deactivation_costs.resize(n);
    for (std::size_t i = 0; i < n; ++i) inst.activation_costs[i] = draw_cost();
    for (std::size_t i = 0; i < n; ++i) inst.deactivation_costs[i] = draw_cost();
  }

  const double mean_cost = std::accumulate(spec.cost_set.begin(), spec.cost_set.end(), 0.0) /
                           static_cast<double>(spec.cost_set.size());
  const double unit = spec.cost_mode == CostMode::Cardinality ? 1.0 : mean_cost;
  std::ostringstream rule;
  switch (spec.budget_rule) {
    case BudgetRule::Explicit:
      inst.leader_budget = spec.leader_budget;
      inst.follower_budget = spec.follower_budget;
      rule << "explicit";
      break;
    case BudgetRule::LeaderFraction: {
      const double seeds = std::floor(spec.leader_fraction * static_cast<double>(n));
      const double deactivations = std::floor(spec.follower_fraction * seeds);
      inst.leader_budget = seeds * unit;
      inst.follower_budget = deactivations * unit;
      rule << "leader-fraction " << spec.leader_fraction << " follower-fraction " << spec.follower_fraction
           << " floor";
      break;
    }
    case BudgetRule::SeedFraction:
      // Only deactivation is cost-based in the follower experiments.
      inst.activation_costs.assign(n, 1.0);
      inst.leader_budget = std::floor(spec.seed_fraction * static_cast<double>(n));
      inst.follower_budget = spec.follower_budget;
      rule << "seed-fraction " << spec.seed_fraction << " floor";
      break;
  }

  std::ostringstream prov;
  prov << "watts-strogatz n=" << spec.node_count << " d=" << spec.density << " p=" << spec.rewire_prob
       << " cost_mode=" << to_string(spec.cost_mode) << " budget_rule=" << rule.str()
       << " rng_seed=" << spec.rng_seed;
  inst.provenance = prov.str();
  inst.validate();
  return inst;
}

SeedSet random_feasible_seed(const ImpdInstance& inst, std::size_t k, Rng& rng) {
  const auto n = static_cast<std::size_t>(inst.node_count());
  if (k > n) fail(ErrorKind::InvalidArgument, "seed size exceeds node count");
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  // Partial Fisher-Yates: the first k slots are a uniform k-subset.
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_index(rng, n - i));
    std::swap(nodes[i], nodes[j]);
  }
  nodes.resize(k);
  return SeedSet(std::move(nodes));
}

namespace {

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Reader {
 public:
  Reader(const std::string& text, std::string origin) : in_(text), origin_(std::move(origin)) {}

  // Next non-empty, comment-stripped line split into tokens.
  std::vector<std::string> next(const char* expecting) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream fields(line);
      std::vector<std::string> tokens;
      for (std::string t; fields >> t;) tokens.push_back(t);
      if (!tokens.empty()) {
        last_line_ = line;
        return tokens;
      }
    }
    error(std::string("unexpected end of file, expecting ") + expecting);
  }

  std::vector<std::string> keyed(const char* key, std::size_t min_values) {
    auto tokens = next(key);
    if (tokens[0] != key || tokens.size() < 1 + min_values) error(std::string("expected '") + key + "'");
    return tokens;
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Parse, origin_ + ":" + std::to_string(line_) + ": " + what);
  }

  double number(const std::string& token) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used == token.size()) return v;
    } catch (const std::exception&) {
    }
    error("'" + token + "' is not a number");
  }

  long long integer(const std::string& token) const {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(token, &used);
      if (used == token.size()) return v;
    } catch (const std::exception&) {
    }
    error("'" + token + "' is not an integer");
  }

  const std::string& last_line() const { return last_line_; }

 private:
  std::istringstream in_;
  std::string origin_;
  std::size_t line_ = 0;
  std::string last_line_;
};

}  // namespace

std::string format_instance(const ImpdInstance& inst) {
  std::ostringstream out;
  out << "impd-instance 1\n";
  out << "name " << (inst.name.empty() ? "unnamed" : inst.name) << "\n";
  out << "provenance " << inst.provenance << "\n";
  out << "cost_mode " << to_string(inst.cost_mode) << "\n";
  out << "nodes " << inst.node_count() << "\n";
  out << "leader_budget " << real(inst.leader_budget) << "\n";
  out << "follower_budget " << real(inst.follower_budget) << "\n";
  out << "arcs " << inst.graph.arc_count() << "\n";
  for (const Arc& a : inst.graph.arcs()) out << a.tail << ' ' << a.head << ' ' << real(a.weight) << "\n";
  out << "costs\n";
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    out << v << ' ' << real(inst.activation_costs[v]) << ' ' << real(inst.deactivation_costs[v]) << "\n";
  }
  if (inst.fixed_thresholds) {
    out << "thresholds fixed\n";
    for (NodeId v = 0; v < inst.node_count(); ++v) out << v << ' ' << real((*inst.fixed_thresholds)[v]) << "\n";
  } else {
    out << "thresholds random\n";
  }
  out << "end\n";
  return out.str();
}

void save_instance(const ImpdInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write instance " + path.string());
  out << format_instance(inst);
  if (!out) fail(ErrorKind::Io, "failed writing " + path.string());
}

ImpdInstance parse_instance(const std::string& text, const std::string& origin) {
  Reader reader(text, origin);
  auto header = reader.next("header");
  if (header.size() != 2 || header[0] != "impd-instance") reader.error("missing 'impd-instance' header");
  if (header[1] != "1") reader.error("unsupported instance format version " + header[1]);

  ImpdInstance inst;
  inst.name = reader.keyed("name", 1)[1];
  {
    reader.keyed("provenance", 0);
    const std::string& line = reader.last_line();
    const auto pos = line.find("provenance");
    std::string rest = line.substr(pos + 10);
    const auto first = rest.find_first_not_of(" \t");
    const auto last = rest.find_last_not_of(" \t\r");
    inst.provenance = first == std::string::npos ? "" : rest.substr(first, last - first + 1);
  }
  try {
    inst.cost_mode = parse_cost_mode(reader.keyed("cost_mode", 1)[1]);
  } catch (const Error& e) {
    reader.error(e.what());
  }
  const long long n = reader.integer(reader.keyed("nodes", 1)[1]);
  if (n < 0) reader.error("negative node count");
  inst.leader_budget = reader.number(reader.keyed("leader_budget", 1)[1]);
  inst.follower_budget = reader.number(reader.keyed("follower_budget", 1)[1]);
  const long long m = reader.integer(reader.keyed("arcs", 1)[1]);
  if (m < 0) reader.error("negative arc count");

  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(m));
  for (long long k = 0; k < m; ++k) {
    auto t = reader.next("an arc line");
    if (t.size() != 3) reader.error("expected 'tail head weight'");
    arcs.push_back({static_cast<NodeId>(reader.integer(t[0])), static_cast<NodeId>(reader.integer(t[1])),
                    reader.number(t[2])});
  }
  try {
    inst.graph = InfluenceGraph::build(static_cast<NodeId>(n), arcs);
  } catch (const Error& e) {
    reader.error(e.what());
  }
  if (inst.graph.arc_count() != arcs.size()) reader.error("duplicate arcs in instance file");

  reader.keyed("costs", 0);
  inst.activation_costs.assign(static_cast<std::size_t>(n), 0.0);
  inst.deactivation_costs.assign(static_cast<std::size_t>(n), 0.0);
  for (long long k = 0; k < n; ++k) {
    auto t = reader.next("a cost line");
    if (t.size() != 3 || reader.integer(t[0]) != k) reader.error("expected '" + std::to_string(k) + " c e'");
    inst.activation_costs[k] = reader.number(t[1]);
    inst.deactivation_costs[k] = reader.number(t[2]);
  }

  auto th = reader.keyed("thresholds", 1);
  if (th[1] == "fixed") {
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (long long k = 0; k < n; ++k) {
      auto t = reader.next("a threshold line");
      if (t.size() != 2 || reader.integer(t[0]) != k) reader.error("expected '" + std::to_string(k) + " theta'");
      theta[k] = reader.number(t[1]);
    }
    inst.fixed_thresholds = std::move(theta);
  } else if (th[1] != "random") {
    reader.error("thresholds must be 'fixed' or 'random'");
  }
  reader.keyed("end", 0);

  try {
    inst.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Parse, origin + ": " + e.what());
  }
  return inst;
}

ImpdInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open instance " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path.string());
}

}  // namespace impd
