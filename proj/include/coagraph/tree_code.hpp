#ifndef COAGRAPH_TREE_CODE_HPP_
#define COAGRAPH_TREE_CODE_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coagraph/configuration.hpp"

namespace coagraph {

/// Degree sequence of a planar rooted tree in breadth-first order. Valid
/// codes satisfy the ballot condition: partial sums p_j > 2(j-1) for j < k
/// and p_k = 2(k-1).
struct TreeCode {
  std::vector<int> d;

  std::size_t size() const { return d.size(); }
  /// Stubs of the coded tree: 2(k-1).
  std::int64_t stub_count() const { return 2 * (std::int64_t(d.size()) - 1); }
  auto operator<=>(const TreeCode&) const = default;
};

bool is_valid_code(std::span<const int> d);
inline bool is_valid_code(const TreeCode& code) { return is_valid_code(code.d); }

/// Canonical materialization of a code: vertices in BFS positions, stub
/// slot 0 of every non-origin vertex is its parent-pointing stub, children
/// attached in slot order. `system`/`pairing` expose the stub-level view
/// used by reroot.
struct PlanarTree {
  std::vector<std::int64_t> parent;                // -1 at the origin
  std::vector<std::vector<std::int64_t>> children;
  StubSystem system;
  Pairing pairing;
};

PlanarTree decode(const TreeCode& code);

/// BFS code of the cluster containing root_stub, or nullopt when that
/// cluster is not a tree (the empty-structure outcome; a value, not an
/// error). Stubs around each vertex carry their index order as the cyclic
/// order.
std::optional<TreeCode> encode(const StubSystem& system, const Pairing& pairing,
                               std::int64_t root_stub);

/// Same as encode(), but with an epoch-stamped visited buffer so repeated
/// calls over one system cost O(cluster) instead of O(n).
class Encoder {
 public:
  explicit Encoder(std::int64_t vertex_count);
  std::optional<TreeCode> encode(const StubSystem& system,
                                 const Pairing& pairing,
                                 std::int64_t root_stub);

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> queue_;
};

/// Re-root at the given stub (indexed in BFS-vertex then slot order) and
/// re-encode; length and degree multiset are preserved.
TreeCode reroot(const TreeCode& code, std::int64_t stub);

/// All of D_k, in lexicographic order.
std::vector<TreeCode> enumerate_codes(int k);

/// Comma-separated degrees, e.g. "3,4,1,1,3,3,1,1,3,1,1,1,1".
TreeCode parse_tree_code(std::string_view text);
std::string format_tree_code(const TreeCode& code);

}  // namespace coagraph

#endif  // COAGRAPH_TREE_CODE_HPP_
