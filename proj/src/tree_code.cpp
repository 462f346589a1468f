#include "coagraph/tree_code.hpp"

#include <charconv>

#include "coagraph/errors.hpp"

namespace coagraph {

bool is_valid_code(std::span<const int> d) {
  const auto k = std::int64_t(d.size());
  if (k < 2) return false;
  std::int64_t partial = 0;
  for (std::int64_t j = 1; j <= k; ++j) {
    const int degree = d[std::size_t(j - 1)];
    if (degree < 1) return false;
    partial += degree;
    if (j < k) {
      if (partial <= 2 * (j - 1)) return false;
    } else {
      if (partial != 2 * (k - 1)) return false;
    }
  }
  return true;
}

PlanarTree decode(const TreeCode& code) {
  if (!is_valid_code(code)) throw InvalidCodeError(format_tree_code(code));
  const auto k = std::int64_t(code.size());
  PlanarTree tree;
  tree.system = build_stub_system(sequence_from_degrees(code.d));
  tree.pairing.mate.assign(std::size_t(tree.system.stub_count()), -1);
  tree.parent.assign(std::size_t(k), -1);
  tree.children.assign(std::size_t(k), {});

  std::int64_t next = 1;
  for (std::int64_t v = 0; v < k; ++v) {
    const int degree = tree.system.degree(v);
    // Slot 0 of a non-origin vertex points at its parent; the rest (all
    // slots, at the origin) point at children in BFS order.
    for (int slot = (v == 0 ? 0 : 1); slot < degree; ++slot) {
      const std::int64_t child = next++;
      tree.parent[std::size_t(child)] = v;
      tree.children[std::size_t(v)].push_back(child);
      const std::int64_t ps = tree.system.first_stub(v) + slot;
      const std::int64_t cs = tree.system.first_stub(child);
      tree.pairing.mate[std::size_t(ps)] = cs;
      tree.pairing.mate[std::size_t(cs)] = ps;
    }
  }
  return tree;
}

Encoder::Encoder(std::int64_t vertex_count)
    : stamp_(std::size_t(vertex_count), 0) {}

std::optional<TreeCode> Encoder::encode(const StubSystem& system,
                                        const Pairing& pairing,
                                        std::int64_t root_stub) {
  if (root_stub < 0 || root_stub >= system.stub_count())
    throw StubOutOfRangeError("root stub " + std::to_string(root_stub));
  ++epoch_;
  const std::int64_t origin = system.owner(root_stub);
  stamp_[std::size_t(origin)] = epoch_;
  queue_.clear();
  queue_.emplace_back(origin, root_stub);
  TreeCode code;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const auto [v, entry] = queue_[head];
    const int degree = system.degree(v);
    const std::int64_t first = system.first_stub(v);
    code.d.push_back(degree);
    // Stubs in cyclic index order starting at the entry stub; at the
    // origin the entry stub itself points at a child, elsewhere it points
    // at the parent and is skipped.
    const int entry_offset = int(entry - first);
    for (int j = (v == origin && head == 0 ? 0 : 1); j < degree; ++j) {
      const std::int64_t s = first + (entry_offset + j) % degree;
      const std::int64_t t = pairing.mate[std::size_t(s)];
      const std::int64_t w = system.owner(t);
      if (stamp_[std::size_t(w)] == epoch_) return std::nullopt;  // loop/multi/cycle
      stamp_[std::size_t(w)] = epoch_;
      queue_.emplace_back(w, t);
    }
  }
  return code;
}

std::optional<TreeCode> encode(const StubSystem& system, const Pairing& pairing,
                               std::int64_t root_stub) {
  Encoder encoder(system.vertex_count());
  return encoder.encode(system, pairing, root_stub);
}

TreeCode reroot(const TreeCode& code, std::int64_t stub) {
  PlanarTree tree = decode(code);
  if (stub < 0 || stub >= tree.system.stub_count())
    throw StubOutOfRangeError("stub " + std::to_string(stub) + " of " +
                              std::to_string(tree.system.stub_count()));
  auto rerooted = encode(tree.system, tree.pairing, stub);
  return *rerooted;  // a tree stays a tree under re-rooting
}

namespace {

void enumerate_rec(int k, std::int64_t partial, std::vector<int>& prefix,
                   std::vector<TreeCode>& out) {
  const auto j = std::int64_t(prefix.size());
  if (j == k) {
    if (partial == 2 * (k - 1)) out.push_back(TreeCode{prefix});
    return;
  }
  // Remaining degrees are >= 1 and the ballot condition must stay strict.
  for (int d = 1; partial + d + (k - 1 - j) <= 2 * (k - 1); ++d) {
    if (j + 1 < k && partial + d <= 2 * j) continue;
    prefix.push_back(d);
    enumerate_rec(k, partial + d, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<TreeCode> enumerate_codes(int k) {
  std::vector<TreeCode> out;
  if (k < 2) return out;
  std::vector<int> prefix;
  enumerate_rec(k, 0, prefix, out);
  return out;
}

TreeCode parse_tree_code(std::string_view text) {
  TreeCode code;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = text.substr(pos, comma - pos);
    int degree = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), degree);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size())
      throw ParseError("bad degree: " + std::string(item));
    code.d.push_back(degree);
    pos = comma + 1;
  }
  return code;
}

std::string format_tree_code(const TreeCode& code) {
  std::string out;
  for (int d : code.d) {
    if (!out.empty()) out += ',';
    out += std::to_string(d);
  }
  return out;
}

}  // namespace coagraph
