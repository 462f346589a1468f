#include "coagraph/configuration.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "coagraph/errors.hpp"
#include "coagraph/rng.hpp"

namespace coagraph {

StubSystem build_stub_system(DegreeSequence degrees) {
  if (degrees.stub_count % 2 != 0)
    throw OddStubCountError("total stub count is odd");
  StubSystem system;
  system.vertex_first_stub.reserve(degrees.degrees.size() + 1);
  system.stub_owner.reserve(std::size_t(degrees.stub_count));
  std::int64_t next = 0;
  for (std::size_t v = 0; v < degrees.degrees.size(); ++v) {
    system.vertex_first_stub.push_back(next);
    for (int j = 0; j < degrees.degrees[v]; ++j)
      system.stub_owner.push_back(std::int64_t(v));
    next += degrees.degrees[v];
  }
  system.vertex_first_stub.push_back(next);
  system.degrees = std::move(degrees);
  return system;
}

Pairing uniform_pairing(const StubSystem& system, std::uint64_t seed) {
  const std::int64_t S = system.stub_count();
  std::vector<std::int64_t> perm(static_cast<std::size_t>(S));
  std::iota(perm.begin(), perm.end(), std::int64_t(0));
  Rng rng(seed);
  for (std::int64_t i = S - 1; i > 0; --i)
    std::swap(perm[std::size_t(i)], perm[rng.below(std::uint64_t(i) + 1)]);
  Pairing pairing;
  pairing.mate.resize(std::size_t(S));
  for (std::int64_t i = 0; i < S; i += 2) {
    pairing.mate[std::size_t(perm[std::size_t(i)])] = perm[std::size_t(i + 1)];
    pairing.mate[std::size_t(perm[std::size_t(i + 1)])] = perm[std::size_t(i)];
  }
  return pairing;
}

Pairing pairing_from_pairs(
    const StubSystem& system,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
  Pairing pairing;
  pairing.mate.assign(std::size_t(system.stub_count()), -1);
  for (const auto& [s, t] : pairs) {
    if (s == t || pairing.mate[std::size_t(s)] != -1 ||
        pairing.mate[std::size_t(t)] != -1)
      throw Error("not a fixed-point-free involution");
    pairing.mate[std::size_t(s)] = t;
    pairing.mate[std::size_t(t)] = s;
  }
  for (std::int64_t m : pairing.mate)
    if (m < 0) throw Error("unpaired stub");
  return pairing;
}

ClusterPartition clusters(const StubSystem& system, const Pairing& pairing) {
  const std::int64_t n = system.vertex_count();
  ClusterPartition partition;
  partition.cluster_of.assign(std::size_t(n), -1);

  std::vector<std::int64_t> stack;
  for (std::int64_t v0 = 0; v0 < n; ++v0) {
    if (partition.cluster_of[std::size_t(v0)] != -1) continue;
    const auto id = std::int64_t(partition.clusters.size());
    partition.clusters.emplace_back();
    ClusterSummary& summary = partition.clusters.back();
    stack.push_back(v0);
    partition.cluster_of[std::size_t(v0)] = id;
    while (!stack.empty()) {
      const std::int64_t v = stack.back();
      stack.pop_back();
      summary.member_vertices.push_back(v);
      ++summary.vertex_count;
      const std::int64_t first = system.first_stub(v);
      for (int j = 0; j < system.degree(v); ++j) {
        const std::int64_t s = first + j;
        const std::int64_t t = pairing.mate[std::size_t(s)];
        const std::int64_t w = system.owner(t);
        if (s < t) {
          ++summary.edge_count;
          if (w == v) ++summary.loop_count;
        }
        if (partition.cluster_of[std::size_t(w)] == -1) {
          partition.cluster_of[std::size_t(w)] = id;
          stack.push_back(w);
        }
      }
    }
    summary.is_tree = summary.loop_count == 0 &&
                      summary.edge_count == summary.vertex_count - 1;
  }

  // Multi-edge excess: duplicate non-loop edges, counted per cluster.
  std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> edges;
  edges.reserve(std::size_t(system.stub_count() / 2));
  for (std::int64_t s = 0; s < system.stub_count(); ++s) {
    const std::int64_t t = pairing.mate[std::size_t(s)];
    if (s >= t) continue;
    const std::int64_t u = system.owner(s), w = system.owner(t);
    if (u == w) continue;
    edges.emplace_back(partition.cluster_of[std::size_t(u)], std::min(u, w),
                       std::max(u, w));
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] == edges[i - 1])
      ++partition.clusters[std::size_t(std::get<0>(edges[i]))].multi_edge_excess;
  return partition;
}

std::map<std::int64_t, std::int64_t> cluster_size_counts(
    const ClusterPartition& partition) {
  std::map<std::int64_t, std::int64_t> counts;
  for (const auto& cluster : partition.clusters) ++counts[cluster.vertex_count];
  return counts;
}

void dump_pairing(const Pairing& pairing, std::ostream& out) {
  for (std::int64_t s = 0; s < std::int64_t(pairing.mate.size()); ++s) {
    const std::int64_t t = pairing.mate[std::size_t(s)];
    if (s < t) out << s << ' ' << t << '\n';
  }
}

}  // namespace coagraph
