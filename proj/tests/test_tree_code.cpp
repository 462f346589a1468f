#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "coagraph/errors.hpp"
#include "coagraph/oracle.hpp"
#include "coagraph/tree_code.hpp"

using namespace coagraph;

TEST_CASE("code validity per the partial-sum condition") {
  CHECK(is_valid_code(parse_tree_code("1,1")));
  CHECK(is_valid_code(parse_tree_code("2,1,1")));
  CHECK(is_valid_code(parse_tree_code("3,4,1,1,3,3,1,1,3,1,1,1,1")));
  CHECK_FALSE(is_valid_code(parse_tree_code("1,1,2")));
  CHECK_FALSE(is_valid_code(parse_tree_code("1")));
  CHECK_FALSE(is_valid_code(parse_tree_code("2,2")));
  CHECK_FALSE(is_valid_code(parse_tree_code("2,1,0,1")));
}

TEST_CASE("decode produces the canonical tree") {
  const PlanarTree star = decode(parse_tree_code("2,1,1"));
  CHECK(star.parent == std::vector<std::int64_t>{-1, 0, 0});
  REQUIRE(star.children.size() == 3);
  CHECK(star.children[0] == std::vector<std::int64_t>{1, 2});
  CHECK(star.children[1].empty());

  const PlanarTree edge = decode(parse_tree_code("1,1"));
  CHECK(edge.parent == std::vector<std::int64_t>{-1, 0});
  CHECK(edge.pairing.mate == std::vector<std::int64_t>{1, 0});

  CHECK_THROWS_AS(decode(parse_tree_code("1,1,2")), InvalidCodeError);
}

TEST_CASE("encode basics") {
  const StubSystem pair = build_stub_system(sequence_from_degrees({1, 1}));
  const Pairing matched = pairing_from_pairs(pair, {{0, 1}});
  CHECK(encode(pair, matched, 0) == parse_tree_code("1,1"));
  CHECK(encode(pair, matched, 1) == parse_tree_code("1,1"));

  const StubSystem loop = build_stub_system(sequence_from_degrees({2}));
  CHECK_FALSE(encode(loop, pairing_from_pairs(loop, {{0, 1}}), 0).has_value());

  CHECK_THROWS_AS(encode(pair, matched, 2), StubOutOfRangeError);
}

TEST_CASE("enumerate_codes sizes follow the Catalan numbers") {
  CHECK(enumerate_codes(2).size() == 1);
  CHECK(enumerate_codes(3).size() == 2);
  CHECK(enumerate_codes(4).size() == 5);
  CHECK(enumerate_codes(5).size() == 14);
  CHECK(enumerate_codes(6).size() == 42);
  for (int k = 2; k <= 6; ++k)
    for (const TreeCode& code : enumerate_codes(k)) CHECK(is_valid_code(code));
}

TEST_CASE("round trip encode(decode) is the identity for k <= 6") {
  for (int k = 2; k <= 6; ++k) {
    for (const TreeCode& code : enumerate_codes(k)) {
      const PlanarTree tree = decode(code);
      const auto back = encode(tree.system, tree.pairing, 0);
      REQUIRE(back.has_value());
      CHECK(*back == code);
    }
  }
}

TEST_CASE("re-rooting preserves validity, length and degree multiset") {
  for (int k = 2; k <= 6; ++k) {
    for (const TreeCode& code : enumerate_codes(k)) {
      std::multiset<int> degrees(code.d.begin(), code.d.end());
      for (std::int64_t s = 0; s < code.stub_count(); ++s) {
        const TreeCode r = reroot(code, s);
        CHECK(is_valid_code(r));
        CHECK(r.size() == code.size());
        CHECK(std::multiset<int>(r.d.begin(), r.d.end()) == degrees);
      }
    }
  }
}

TEST_CASE("re-rooting is reversible") {
  for (int k = 2; k <= 5; ++k) {
    for (const TreeCode& code : enumerate_codes(k)) {
      for (std::int64_t s = 0; s < code.stub_count(); ++s) {
        const TreeCode r = reroot(code, s);
        bool inverted = false;
        for (std::int64_t t = 0; t < r.stub_count() && !inverted; ++t)
          inverted = reroot(r, t) == code;
        CHECK(inverted);
      }
    }
  }
}

TEST_CASE("re-rooting worked examples") {
  CHECK(reroot(parse_tree_code("1,1"), 0) == parse_tree_code("1,1"));
  CHECK(reroot(parse_tree_code("1,1"), 1) == parse_tree_code("1,1"));
  // Root stubs of the two leaves of the 3-vertex star/path.
  CHECK(reroot(parse_tree_code("2,1,1"), 2) == parse_tree_code("1,2,1"));
  CHECK(reroot(parse_tree_code("2,1,1"), 3) == parse_tree_code("1,2,1"));
  CHECK_THROWS_AS(reroot(parse_tree_code("2,1,1"), 4), StubOutOfRangeError);
  CHECK_THROWS_AS(reroot(parse_tree_code("1,1,2"), 0), InvalidCodeError);
}

TEST_CASE("nine-vertex re-rooting example") {
  const TreeCode left = parse_tree_code("2,2,1,3,3,1,1,2,1");
  const TreeCode right = parse_tree_code("3,3,1,2,1,2,1,2,1");
  CHECK(reroot(left, 8) == right);
}

TEST_CASE("encode verdict matches cluster diagnostics on tiny systems") {
  const std::vector<std::vector<int>> degree_sets = {
      {1, 1},    {2},          {2, 1, 1},    {2, 2},
      {3, 1, 1, 1}, {2, 2, 1, 1}, {1, 1, 1, 1}, {3, 2, 2, 1}};
  for (const auto& degrees : degree_sets) {
    const StubSystem system =
        build_stub_system(sequence_from_degrees(degrees));
    oracle::enumerate_pairings(system, [&](const Pairing& pairing) {
      const ClusterPartition partition = clusters(system, pairing);
      Encoder encoder(system.vertex_count());
      for (std::int64_t s = 0; s < system.stub_count(); ++s) {
        const auto& cluster = partition.clusters[std::size_t(
            partition.cluster_of[std::size_t(system.owner(s))])];
        const auto code = encoder.encode(system, pairing, s);
        CHECK(code.has_value() == cluster.is_tree);
        if (code) CHECK(std::int64_t(code->size()) == cluster.vertex_count);
      }
    });
  }
}

TEST_CASE("code text round trip") {
  const TreeCode fig = parse_tree_code("3,4,1,1,3,3,1,1,3,1,1,1,1");
  CHECK(format_tree_code(fig) == "3,4,1,1,3,3,1,1,3,1,1,1,1");
  CHECK_THROWS_AS(parse_tree_code("1,a,1"), ParseError);
}
