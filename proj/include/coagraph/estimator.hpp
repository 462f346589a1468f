#ifndef COAGRAPH_ESTIMATOR_HPP_
#define COAGRAPH_ESTIMATOR_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "coagraph/configuration.hpp"
#include "coagraph/degree_law.hpp"
#include "coagraph/gw_law.hpp"
#include "coagraph/tree_code.hpp"

namespace coagraph {

/// One classification of every stub of one pairing: tracked tree codes
/// (size <= cap), larger trees lumped, non-tree stubs in null_count.
struct StubClassification {
  std::map<TreeCode, std::int64_t> code_counts;
  std::int64_t other_tree_count = 0;
  std::int64_t null_count = 0;
};

StubClassification classify_stubs(const StubSystem& system,
                                  const Pairing& pairing, int code_size_cap);

/// rho_n estimates across replicates, one row per tracked code plus the
/// lumped other-tree and null (empty structure) rows.
struct StructureReport {
  struct Row {
    TreeCode code;
    double mean = 0.0;
    double se = 0.0;      // standard error of the mean across replicates
    double target = 0.0;  // gw2_mass when has_targets
    double z = 0.0;       // (mean - target) / se, 0 when se = 0 and exact
  };

  std::vector<Row> rows;  // lexicographic in code
  double other_tree_mean = 0.0, other_tree_se = 0.0;
  double null_mean = 0.0, null_se = 0.0;
  bool has_targets = false;

  std::int64_t n = 0;
  std::int64_t stub_count = 0;  // of the last replicate's sequence
  int replicates = 0;
  int code_size_cap = 0;
  SequenceMode mode = SequenceMode::quota;
  std::uint64_t seed = 0;
};

/// One degree sequence + pairing per replicate; rows carry gw2_mass targets.
StructureReport run_structure_experiment(const DegreeLaw& mu, std::int64_t n,
                                         int replicates, int code_size_cap,
                                         SequenceMode mode, std::uint64_t seed);

/// Fixed explicit sequence (oracle-scale cross-checks); no targets attached.
StructureReport run_structure_experiment(const DegreeSequence& degrees,
                                         int replicates, int code_size_cap,
                                         std::uint64_t seed);

/// Cluster-size densities C_n(k)/n against the limiting concentrations.
struct SizeReport {
  struct Row {
    int k = 0;
    double mean = 0.0;
    double se = 0.0;
    double target = 0.0;  // m/(k(k-1)) nu^{*k}(k-2)
  };

  std::vector<Row> rows;   // k = 1..k_cap
  double weighted_l1 = 0.0;  // sum k |mean - target| over k >= 2
  std::int64_t n = 0;
  int replicates = 0;
  SequenceMode mode = SequenceMode::quota;
  std::uint64_t seed = 0;
};

SizeReport run_cluster_size_experiment(const DegreeLaw& mu, std::int64_t n,
                                       int replicates, int k_cap,
                                       SequenceMode mode, std::uint64_t seed);

/// Error and null-mass trajectories across n (trend acceptance).
struct SweepPoint {
  std::int64_t n = 0;
  double max_abs_error = 0.0;  // max |mean - target| over tracked codes
  StructureReport report;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  bool criticality_warning = false;  // Q(mu) > 0: limit claims off warranty
  int replicates = 0;
  std::uint64_t seed = 0;
};

SweepReport convergence_sweep(const DegreeLaw& mu,
                              const std::vector<std::int64_t>& n_list,
                              int replicates, int code_size_cap,
                              std::uint64_t seed);

/// Re-rooting invariance: GW2 codes re-rooted at a uniform stub should be
/// GW2 again. Both the pre/post comparison and the post-vs-exact one are
/// reported with their 4-sigma bands.
struct RerootReport {
  double tv_pre_post = 0.0;
  double band_pre_post = 0.0;
  double tv_post_exact = 0.0;
  double band_post_exact = 0.0;
  std::int64_t samples = 0;
  std::int64_t censored = 0;
  bool pass = false;  // both TVs inside their bands
};

RerootReport run_rerooting_experiment(const OffspringLaw& nu,
                                      std::int64_t samples,
                                      std::int64_t size_cap,
                                      int report_size_cap, std::uint64_t seed);

/// Pearson chi-square of sampled total progeny against Dwass probabilities,
/// sizes k = 2..k_cap individually and everything larger lumped.
struct DwassReport {
  struct Bin {
    int k = 0;  // 0 marks the tail bin
    std::int64_t observed = 0;
    double expected = 0.0;
  };

  std::vector<Bin> bins;
  double chi_square = 0.0;
  double threshold = 0.0;  // df + 4 sqrt(2 df)
  int df = 0;
  bool zero_expected_hit = false;  // some bin with expected 0 was observed
  std::int64_t samples = 0;
  std::int64_t censored = 0;
  bool pass = false;
};

DwassReport run_dwass_check(const OffspringLaw& nu, std::int64_t samples,
                            int k_cap, std::uint64_t seed);

}  // namespace coagraph

#endif  // COAGRAPH_ESTIMATOR_HPP_
