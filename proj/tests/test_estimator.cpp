#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coagraph/errors.hpp"
#include "coagraph/estimator.hpp"
#include "coagraph/rng.hpp"

using namespace coagraph;

namespace {

const DegreeLaw kOne = parse_degree_law("1:1");
const DegreeLaw kMix = parse_degree_law("1:0.8,3:0.2");

const StructureReport::Row& row_for(const StructureReport& report,
                                    const char* code_text) {
  const TreeCode code = parse_tree_code(code_text);
  for (const auto& row : report.rows)
    if (row.code == code) return row;
  REQUIRE(false);
  return report.rows.front();
}

}  // namespace

TEST_CASE("stub classification is a partition of the stubs") {
  const StubSystem system = build_stub_system(
      sequence_from_degrees({3, 1, 2, 2, 1, 1, 4, 2, 1, 1}));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Pairing pairing = uniform_pairing(system, seed);
    const StubClassification counts = classify_stubs(system, pairing, 4);
    std::int64_t total = counts.other_tree_count + counts.null_count;
    for (const auto& [code, count] : counts.code_counts) {
      CHECK(std::int64_t(code.size()) <= 4);
      total += count;
    }
    CHECK(total == system.stub_count());
  }
}

TEST_CASE("unit degrees give a perfect matching every replicate") {
  const StructureReport report =
      run_structure_experiment(kOne, 10, 8, 4, SequenceMode::quota, 3);
  const auto& dimer = row_for(report, "1,1");
  CHECK(dimer.mean == 1.0);
  CHECK(dimer.se == 0.0);
  CHECK(report.null_mean == 0.0);
  CHECK(report.other_tree_mean == 0.0);
  CHECK(dimer.target == doctest::Approx(1.0));
}

TEST_CASE("fixed-sequence experiment matches the exact oracle values") {
  const DegreeSequence path = sequence_from_degrees({2, 1, 1});
  const StructureReport report = run_structure_experiment(path, 20000, 4, 5);
  CHECK_FALSE(report.has_targets);
  const auto check_against = [&](const char* code_text, double exact) {
    const auto& row = row_for(report, code_text);
    CHECK(std::abs(row.mean - exact) <= 4.0 * row.se + 1e-12);
  };
  check_against("2,1,1", 1.0 / 3.0);
  check_against("1,2,1", 1.0 / 3.0);
  check_against("1,1", 1.0 / 6.0);
  CHECK(std::abs(report.null_mean - 1.0 / 6.0) <= 4.0 * report.null_se);
}

TEST_CASE("structure experiment tracks the two-ancestor targets") {
  const StructureReport report =
      run_structure_experiment(kMix, 20000, 10, 4, SequenceMode::quota, 7);
  CHECK(report.has_targets);
  const auto& dimer = row_for(report, "1,1");
  CHECK(dimer.target == doctest::Approx(16.0 / 49.0).epsilon(1e-12));
  CHECK(std::abs(dimer.z) <= 4.0);
  CHECK(report.null_mean < 0.05);
  // Per-law parity: no 3-vertex tree exists, so its rows sit at zero.
  const auto& odd = row_for(report, "2,1,1");
  CHECK(odd.target == 0.0);
  CHECK(odd.mean == 0.0);
}

TEST_CASE("cluster-size densities") {
  const SizeReport dimers =
      run_cluster_size_experiment(kOne, 100, 5, 4, SequenceMode::quota, 5);
  CHECK(dimers.rows[1].k == 2);
  CHECK(dimers.rows[1].mean == 0.5);
  CHECK(dimers.rows[1].se == 0.0);
  CHECK(dimers.rows[1].target == doctest::Approx(0.5));

  const SizeReport mix =
      run_cluster_size_experiment(kMix, 20000, 10, 5, SequenceMode::quota, 5);
  const auto& k2 = mix.rows[1];
  CHECK(std::abs(k2.mean - 0.7 * 16.0 / 49.0) <= 4.0 * k2.se);
  CHECK(mix.rows[2].k == 3);
  CHECK(mix.rows[2].mean == 0.0);  // parity obstruction
  CHECK(mix.weighted_l1 < 0.05);
}

TEST_CASE("experiments are reproducible from the seed") {
  const StructureReport a =
      run_structure_experiment(kMix, 5000, 5, 4, SequenceMode::iid, 11);
  const StructureReport b =
      run_structure_experiment(kMix, 5000, 5, 4, SequenceMode::iid, 11);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].mean == b.rows[i].mean);
    CHECK(a.rows[i].se == b.rows[i].se);
  }
  CHECK(a.null_mean == b.null_mean);
}

TEST_CASE("convergence sweep") {
  const SweepReport trivial = convergence_sweep(kOne, {100, 1000}, 3, 4, 1);
  CHECK_FALSE(trivial.criticality_warning);
  for (const SweepPoint& point : trivial.points) {
    CHECK(point.max_abs_error == 0.0);
    CHECK(point.report.null_mean == 0.0);
  }

  const SweepReport sweep = convergence_sweep(kMix, {500, 20000}, 10, 4, 2);
  REQUIRE(sweep.points.size() == 2);
  CHECK(sweep.points[0].report.null_mean > sweep.points[1].report.null_mean);

  const DegreeLaw super = parse_degree_law("1:0.5,3:0.5");
  CHECK(convergence_sweep(super, {500}, 2, 4, 3).criticality_warning);
}

TEST_CASE("re-rooting invariance experiment") {
  const OffspringLaw delta0 = parse_offspring_law("0:1");
  const RerootReport trivial =
      run_rerooting_experiment(delta0, 5000, 64, 5, 17);
  CHECK(trivial.tv_pre_post == 0.0);
  CHECK(trivial.tv_post_exact == 0.0);
  CHECK(trivial.pass);

  const OffspringLaw mix = parse_offspring_law("0:4/7,2:3/7");
  const RerootReport report =
      run_rerooting_experiment(mix, 20000, 1024, 5, 17);
  CHECK(report.censored == 0);
  CHECK(report.tv_pre_post <= report.band_pre_post);
  CHECK(report.tv_post_exact <= report.band_post_exact);
  CHECK(report.pass);

  const OffspringLaw delta1 = parse_offspring_law("1:1");
  CHECK_THROWS_AS(run_rerooting_experiment(delta1, 1000, 64, 5, 17),
                  CensoredExcessError);
}

TEST_CASE("Dwass goodness of fit") {
  const OffspringLaw delta0 = parse_offspring_law("0:1");
  const DwassReport trivial = run_dwass_check(delta0, 2000, 6, 23);
  CHECK(trivial.chi_square == 0.0);
  CHECK(trivial.pass);
  CHECK_FALSE(trivial.zero_expected_hit);

  const OffspringLaw bernoulli = parse_offspring_law("0:0.5,1:0.5");
  const DwassReport bern = run_dwass_check(bernoulli, 20000, 10, 23);
  CHECK(bern.pass);
  const auto& k3 = bern.bins[1];
  REQUIRE(k3.k == 3);
  const double freq = double(k3.observed) / double(bern.samples);
  const double sigma = std::sqrt(0.25 * 0.75 / double(bern.samples));
  CHECK(std::abs(freq - 0.25) <= 4.0 * sigma);

  const OffspringLaw mix = parse_offspring_law("0:4/7,2:3/7");
  const DwassReport parity = run_dwass_check(mix, 20000, 9, 23);
  CHECK_FALSE(parity.zero_expected_hit);
  CHECK(parity.pass);
  for (const auto& bin : parity.bins)
    if (bin.k % 2 == 1) {
      CHECK(bin.expected == 0.0);
      CHECK(bin.observed == 0);
    }
}
