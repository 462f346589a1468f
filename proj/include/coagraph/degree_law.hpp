#ifndef COAGRAPH_DEGREE_LAW_HPP_
#define COAGRAPH_DEGREE_LAW_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace coagraph {

/// A probability law on positive integers (degrees), finite support.
/// Construct through from_probabilities() / parse_degree_law(); immutable
/// after that.
struct DegreeLaw {
  std::vector<std::pair<int, double>> weights;  // sorted by degree, mass > 0
  int support_max = 0;
  double m = 0.0;  // first moment

  double mass(int degree) const;
};

/// Offspring law on non-negative integers (the size-biased law shifted down
/// by one).
struct OffspringLaw {
  std::vector<std::pair<int, double>> weights;  // sorted by value, mass > 0
  int support_max = 0;
  double mean = 0.0;

  double mass(int value) const;
};

struct DegreeSequence {
  std::vector<int> degrees;        // one entry per vertex, all >= 1
  std::int64_t stub_count = 0;     // sum of degrees, always even

  std::int64_t vertex_count() const { return std::int64_t(degrees.size()); }
};

enum class SequenceMode { quota, iid };

DegreeLaw from_probabilities(const std::vector<std::pair<int, double>>& weights);

/// Parse "i:p,i:p,..." (p decimal or "a/b"); format is the inverse.
DegreeLaw parse_degree_law(std::string_view text);
std::string format_degree_law(const DegreeLaw& law);

OffspringLaw parse_offspring_law(std::string_view text);
std::string format_offspring_law(const OffspringLaw& nu);

/// mu*(i) = i mu(i) / m.
DegreeLaw size_biased(const DegreeLaw& law);

/// nu(i) = mu*(i+1).
OffspringLaw offspring_law(const DegreeLaw& law);

/// Poisson(p) truncated at total tail mass < tail_tol, renormalized.
OffspringLaw truncated_poisson(double p, double tail_tol = 1e-12);

/// Q(mu) = sum i(i-2) mu(i); <= 0 is the no-giant-component regime.
double criticality(const DegreeLaw& law);

/// Materialize n degrees. quota: floor(n mu(i)) per degree plus
/// largest-remainder completion (ties to smaller degree). iid: n seeded
/// draws. Odd stub totals are fixed by incrementing the last vertex.
DegreeSequence degree_sequence(const DegreeLaw& law, std::size_t n,
                               SequenceMode mode, std::uint64_t seed);

DegreeSequence sequence_from_degrees(std::vector<int> degrees);

}  // namespace coagraph

#endif  // COAGRAPH_DEGREE_LAW_HPP_
