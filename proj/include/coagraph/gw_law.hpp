#ifndef COAGRAPH_GW_LAW_HPP_
#define COAGRAPH_GW_LAW_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "coagraph/degree_law.hpp"
#include "coagraph/rng.hpp"
#include "coagraph/tree_code.hpp"

namespace coagraph {

/// Finite-support distribution over non-negative integers; convolution
/// truncation sheds mass into `shed` instead of dropping it.
struct Distribution {
  std::vector<double> weights;  // index = value
  double shed = 0.0;

  double mass(int value) const {
    return value >= 0 && value < int(weights.size())
               ? weights[std::size_t(value)]
               : 0.0;
  }
};

/// Two-ancestor Galton-Watson mass of a code: prod nu(d_i - 1).
double gw2_mass(const TreeCode& code, const OffspringLaw& nu);

/// k-th convolution power of nu, truncated at `cap`; exact (no shed mass)
/// when k * support_max(nu) <= cap.
Distribution convolution_power(const OffspringLaw& nu, int k, int cap);

/// Total-progeny law of the two-ancestor process: (2/k) nu^{*k}(k-2).
double dwass_total_progeny(const OffspringLaw& nu, int k);

/// Limiting cluster concentration target for C_n(k)/n:
/// m/(k(k-1)) nu^{*k}(k-2) with nu the offspring law of mu.
double limit_concentration(const DegreeLaw& mu, int k);

/// BFS code of two nu-Galton-Watson trees joined by a root edge; nullopt
/// when the population exceeds size_cap (censoring, a value not an error).
std::optional<TreeCode> sample_gw2_tree(const OffspringLaw& nu, Rng& rng,
                                        std::int64_t size_cap);

struct TvReport {
  double tv = 0.0;
  double band = 0.0;  // 4-sigma multinomial acceptance band
  std::int64_t samples = 0;
  std::int64_t rejected = 0;  // size-1 trees discarded
  std::int64_t censored = 0;
  bool pass = false;
};

/// Empirical check of the single-ancestor Poisson identity: samples
/// GW(Poisson(p)) trees from one ancestor, rejects size-1 trees, codes each
/// with the ancestor as origin (origin degree = its child count, root stub
/// = first child stub), and reports total-variation distance to the exact
/// two-ancestor law over codes of size <= report_size_cap.
TvReport poisson_conditioned_law_check(double p, std::int64_t samples,
                                       std::uint64_t seed,
                                       int report_size_cap = 6,
                                       std::int64_t size_cap = 1000000);

/// 4-sigma band for the half-L1 distance between an empirical law over the
/// given cell probabilities and its target; n2 = 0 means the target is
/// exact. Shared by the re-rooting and Poisson checks.
double tv_band(const std::vector<double>& cell_probs, std::int64_t n1,
               std::int64_t n2);

}  // namespace coagraph

#endif  // COAGRAPH_GW_LAW_HPP_
