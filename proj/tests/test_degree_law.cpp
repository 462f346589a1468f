#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "coagraph/degree_law.hpp"
#include "coagraph/errors.hpp"

using namespace coagraph;

TEST_CASE("from_probabilities validates and caches moments") {
  const DegreeLaw point = from_probabilities({{1, 1.0}});
  CHECK(point.m == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(point.support_max == 1);
  CHECK(point.mass(1) == 1.0);
  CHECK(point.mass(2) == 0.0);

  const DegreeLaw mix = from_probabilities({{1, 0.8}, {3, 0.2}});
  CHECK(mix.m == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(mix.support_max == 3);

  CHECK_THROWS_AS(from_probabilities({{1, 0.5}, {2, 0.6}}),
                  NonProbabilityError);
  CHECK_THROWS_AS(from_probabilities({{1, 0.5}, {1, 0.5}}),
                  NonProbabilityError);
  CHECK_THROWS_AS(from_probabilities({{0, 1.0}}), NonProbabilityError);
  CHECK_THROWS_AS(from_probabilities({{1, -0.1}, {2, 1.1}}),
                  NonProbabilityError);
  CHECK_THROWS_AS(from_probabilities({}), NonProbabilityError);
  // Zero-mass atoms are dropped from the support.
  const DegreeLaw dropped = from_probabilities({{1, 0.0}, {2, 1.0}});
  CHECK(dropped.weights.size() == 1);
  CHECK(dropped.support_max == 2);
}

TEST_CASE("size-biased law and offspring shift") {
  const DegreeLaw one = from_probabilities({{1, 1.0}});
  CHECK(size_biased(one).mass(1) == doctest::Approx(1.0));
  const DegreeLaw two = from_probabilities({{2, 1.0}});
  CHECK(size_biased(two).mass(2) == doctest::Approx(1.0));

  const DegreeLaw mix = from_probabilities({{1, 0.8}, {3, 0.2}});
  const DegreeLaw biased = size_biased(mix);
  CHECK(biased.mass(1) == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
  CHECK(biased.mass(3) == doctest::Approx(3.0 / 7.0).epsilon(1e-14));
  double total = 0.0;
  for (const auto& [i, p] : biased.weights) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(offspring_law(one).mass(0) == doctest::Approx(1.0));
  CHECK(offspring_law(two).mass(1) == doctest::Approx(1.0));
  const OffspringLaw nu = offspring_law(mix);
  CHECK(nu.mass(0) == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
  CHECK(nu.mass(2) == doctest::Approx(3.0 / 7.0).epsilon(1e-14));
  CHECK(nu.mean == doctest::Approx(6.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("criticality values and the moment identity") {
  CHECK(criticality(from_probabilities({{2, 1.0}})) == doctest::Approx(0.0));
  CHECK(criticality(from_probabilities({{1, 1.0}})) == doctest::Approx(-1.0));
  CHECK(criticality(from_probabilities({{1, 0.8}, {3, 0.2}})) ==
        doctest::Approx(-0.2).epsilon(1e-14));

  const std::vector<DegreeLaw> laws = {
      from_probabilities({{1, 1.0}}),
      from_probabilities({{1, 0.8}, {3, 0.2}}),
      from_probabilities({{1, 0.5}, {3, 0.5}}),
      from_probabilities({{1, 0.25}, {2, 0.25}, {4, 0.5}})};
  for (const DegreeLaw& mu : laws) {
    const OffspringLaw nu = offspring_law(mu);
    CHECK(criticality(mu) ==
          doctest::Approx(mu.m * (nu.mean - 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("quota sequences follow exact quotas and fix parity") {
  const DegreeLaw mix = from_probabilities({{1, 0.8}, {3, 0.2}});
  const DegreeSequence ten = degree_sequence(mix, 10, SequenceMode::quota, 0);
  CHECK(ten.stub_count == 14);
  CHECK(std::count(ten.degrees.begin(), ten.degrees.end(), 1) == 8);
  CHECK(std::count(ten.degrees.begin(), ten.degrees.end(), 3) == 2);

  const DegreeLaw one = from_probabilities({{1, 1.0}});
  const DegreeSequence three = degree_sequence(one, 3, SequenceMode::quota, 0);
  CHECK(three.degrees == std::vector<int>{1, 1, 2});
  CHECK(three.stub_count == 4);
  const DegreeSequence four = degree_sequence(one, 4, SequenceMode::quota, 0);
  CHECK(four.degrees == std::vector<int>{1, 1, 1, 1});
  CHECK(four.stub_count == 4);
}

TEST_CASE("quota empirical law converges to mu") {
  const DegreeLaw mu = from_probabilities({{1, 0.35}, {2, 0.2}, {5, 0.45}});
  const std::size_t n = 1000;
  const DegreeSequence seq = degree_sequence(mu, n, SequenceMode::quota, 0);
  REQUIRE(seq.degrees.size() == n);
  std::map<int, double> empirical;
  for (int d : seq.degrees) empirical[d] += 1.0 / double(n);
  const double bound = double(mu.weights.size() + 1) / double(n);
  for (const auto& [i, p] : mu.weights)
    CHECK(std::abs(empirical[i] - p) <= bound);
}

TEST_CASE("iid sequences are seeded and parity-fixed") {
  const DegreeLaw mu = from_probabilities({{1, 0.8}, {3, 0.2}});
  const DegreeSequence a = degree_sequence(mu, 501, SequenceMode::iid, 42);
  const DegreeSequence b = degree_sequence(mu, 501, SequenceMode::iid, 42);
  const DegreeSequence c = degree_sequence(mu, 501, SequenceMode::iid, 43);
  CHECK(a.degrees == b.degrees);
  CHECK(a.degrees != c.degrees);
  CHECK(a.stub_count % 2 == 0);
  for (int d : a.degrees) CHECK(d >= 1);
}

TEST_CASE("law text round trips") {
  const DegreeLaw mu = parse_degree_law("1:0.8,3:0.2");
  CHECK(mu.m == doctest::Approx(1.4));
  const DegreeLaw again = parse_degree_law(format_degree_law(mu));
  CHECK(again.weights == mu.weights);

  const OffspringLaw nu = parse_offspring_law("0:4/7,2:3/7");
  CHECK(nu.mass(0) == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
  const OffspringLaw nu2 = parse_offspring_law(format_offspring_law(nu));
  CHECK(nu2.weights == nu.weights);

  CHECK_THROWS_AS(parse_degree_law("1=0.8"), ParseError);
  CHECK_THROWS_AS(parse_degree_law("x:0.8,3:0.2"), ParseError);
  CHECK_THROWS_AS(parse_offspring_law("0:abc"), ParseError);
}

TEST_CASE("truncated poisson offspring law") {
  const OffspringLaw nu = truncated_poisson(0.5);
  double total = 0.0;
  for (const auto& [i, p] : nu.weights) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(nu.mean == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(nu.mass(0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-10));
  CHECK_THROWS_AS(truncated_poisson(0.0), NonProbabilityError);
}

TEST_CASE("explicit sequences") {
  const DegreeSequence seq = sequence_from_degrees({2, 1, 1});
  CHECK(seq.stub_count == 4);
  CHECK(seq.vertex_count() == 3);
  CHECK_THROWS_AS(sequence_from_degrees({1, 0, 1}), Error);
}
