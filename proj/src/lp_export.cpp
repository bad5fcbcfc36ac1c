#include <cstdio>
#include <fstream>
#include <string>

#include "impd/error.hpp"
#include "impd/follower.hpp"

namespace impd {

namespace {

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string u_name(NodeId i, std::size_t r) { return "u_" + std::to_string(i) + "_" + std::to_string(r); }
std::string y_name(NodeId i) { return "y_" + std::to_string(i); }

}  // namespace

void export_allp_lp(const ImpdInstance& inst, const SeedSet& seed, const ThresholdSample& sample, double epsilon,
                    const std::filesystem::path& path) {
  const NodeId n = inst.node_count();
  if (sample.node_count() != n) fail(ErrorKind::InvalidArgument, "sample does not match instance");
  if (sample.size() == 0) fail(ErrorKind::InvalidArgument, "sample is empty");
  if (!(epsilon > 0.0)) fail(ErrorKind::InvalidArgument, "epsilon must be positive");
  for (NodeId v : seed.members()) {
    if (v < 0 || v >= n) fail(ErrorKind::InvalidArgument, "seed node out of range");
  }
  const std::size_t count = sample.size();
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());

  out << "\\ ALLP for seed {" << seed.to_string() << "}, " << count << " realizations\n";
  out << "Minimize\n obj:";
  const std::string coef = real(1.0 / static_cast<double>(count));
  for (std::size_t r = 0; r < count; ++r) {
    for (NodeId i = 0; i < n; ++i) out << " + " << coef << ' ' << u_name(i, r);
  }
  out << "\nSubject To\n budget:";
  if (seed.empty()) out << " 0 " << u_name(0, 0);
  for (NodeId i : seed.members()) out << " + " << real(inst.deactivation_costs[i]) << ' ' << y_name(i);
  out << " <= " << real(inst.follower_budget) << '\n';
  for (NodeId i : seed.members()) out << " ylim_" << i << ": " << y_name(i) << " <= 1\n";
  for (std::size_t r = 0; r < count; ++r) {
    for (NodeId i = 0; i < n; ++i) {
      // u_ir >= x_i - y_i
      out << " seed_" << i << '_' << r << ": " << u_name(i, r);
      if (seed.contains(i)) out << " + " << y_name(i) << " >= 1\n";
      else out << " >= 0\n";
    }
  }
  for (std::size_t r = 0; r < count; ++r) {
    for (NodeId i = 0; i < n; ++i) {
      // u_ir + y_i - sum_j w_ji u_jr >= eps - theta_ir
      out << " thr_" << i << '_' << r << ": " << u_name(i, r);
      if (seed.contains(i)) out << " + " << y_name(i);
      for (const Neighbor& nb : inst.graph.in_neighbors(i)) out << " - " << real(nb.weight) << ' ' << u_name(nb.node, r);
      out << " >= " << real(epsilon - sample.value(r, i)) << '\n';
    }
  }
  out << "Binaries\n";
  for (std::size_t r = 0; r < count; ++r) {
    for (NodeId i = 0; i < n; ++i) out << ' ' << u_name(i, r) << '\n';
  }
  for (NodeId i : seed.members()) out << ' ' << y_name(i) << '\n';
  out << "End\n";
  if (!out) fail(ErrorKind::Io, "failed writing " + path.string());
}

}  // namespace impd
