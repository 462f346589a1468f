#ifndef COAGRAPH_CONFIGURATION_HPP_
#define COAGRAPH_CONFIGURATION_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "coagraph/degree_law.hpp"

namespace coagraph {

/// Stubs of vertex v occupy indices [first(v), first(v) + d(v)).
struct StubSystem {
  DegreeSequence degrees;
  std::vector<std::int64_t> stub_owner;        // length S, stub -> vertex
  std::vector<std::int64_t> vertex_first_stub; // length n+1, prefix sums

  std::int64_t stub_count() const { return degrees.stub_count; }
  std::int64_t vertex_count() const { return degrees.vertex_count(); }
  std::int64_t first_stub(std::int64_t v) const { return vertex_first_stub[v]; }
  int degree(std::int64_t v) const { return degrees.degrees[std::size_t(v)]; }
  std::int64_t owner(std::int64_t s) const { return stub_owner[std::size_t(s)]; }
};

/// Fixed-point-free involution on stub indices.
struct Pairing {
  std::vector<std::int64_t> mate;
};

struct ClusterSummary {
  std::int64_t vertex_count = 0;
  std::int64_t edge_count = 0;       // stubs in cluster / 2
  std::int64_t loop_count = 0;       // pairs with both stubs on one vertex
  std::int64_t multi_edge_excess = 0;
  bool is_tree = false;
  std::vector<std::int64_t> member_vertices;
};

struct ClusterPartition {
  std::vector<std::int64_t> cluster_of;  // vertex -> cluster id
  std::vector<ClusterSummary> clusters;
};

StubSystem build_stub_system(DegreeSequence degrees);

/// Uniform over all (S-1)!! pairings: seeded shuffle of the stub indices,
/// then pair positions (2i, 2i+1).
Pairing uniform_pairing(const StubSystem& system, std::uint64_t seed);

Pairing pairing_from_pairs(
    const StubSystem& system,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs);

ClusterPartition clusters(const StubSystem& system, const Pairing& pairing);

std::map<std::int64_t, std::int64_t> cluster_size_counts(
    const ClusterPartition& partition);

/// One line per pair "s t" with s < t, sorted by s.
void dump_pairing(const Pairing& pairing, std::ostream& out);

}  // namespace coagraph

#endif  // COAGRAPH_CONFIGURATION_HPP_
