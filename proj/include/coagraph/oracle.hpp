#ifndef COAGRAPH_ORACLE_HPP_
#define COAGRAPH_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coagraph/configuration.hpp"
#include "coagraph/degree_law.hpp"
#include "coagraph/tree_code.hpp"

namespace coagraph::oracle {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Enumeration is bounded at S <= 16 stubs (15!! = 2,027,025 pairings).
constexpr std::int64_t kMaxEnumerationStubs = 16;

/// (S-1)!! = S! / ((S/2)! 2^{S/2}), exact.
BigInt pairing_count(std::int64_t S);

/// Every pairing exactly once, in lexicographic order of the sorted pair
/// list.
void enumerate_pairings(const StubSystem& system,
                        const std::function<void(const Pairing&)>& visit);

/// Lemma-style split test: pairings with no cross pair between the two
/// vertex parts factorize as pairing_count(S1) * pairing_count(S2).
bool split_factorization_check(const StubSystem& system,
                               const std::vector<bool>& in_first_part);

/// Exact #{(pairing, root stub) : the rooted cluster has this code}, by
/// exhaustive enumeration. With `spanning` the cluster must also cover all
/// vertices (0 on any size mismatch).
BigInt rooted_structure_count(const StubSystem& system, const TreeCode& code,
                              bool spanning = false);

/// Exact number of pairings whose configuration is a spanning tree.
BigInt tree_pairing_count(const StubSystem& system);

/// The printed counting formulas next to the enumerated truths. The
/// enumerated values are authoritative; the printed ones are surfaced for
/// reporting only (they disagree with enumeration on small instances).
struct PrintedFormulaReport {
  BigInt lemma2_printed;          // M(d) * prod d_i
  BigInt lemma2_variant;          // (k!/M(d)) * prod d_i
  BigInt enumerated_rooted;       // spanning rooted-structure count
  BigInt prop1_printed;           // (k-1)! * prod d_i
  BigInt enumerated_tree_pairings;
};

PrintedFormulaReport printed_formula_report(const StubSystem& system,
                                            const TreeCode& code);

/// E[rho] for every code at once, exact over the uniform pairing; null_mass
/// is the expected stub fraction in non-tree clusters.
struct RhoTable {
  std::map<TreeCode, BigRat> tree_mass;
  BigRat null_mass;
};

RhoTable exact_rho_table(const StubSystem& system);

/// Single-code convenience: nullopt requests the non-tree mass.
BigRat exact_rho_expectation(const StubSystem& system,
                             const std::optional<TreeCode>& code);

// Exact-rational Galton-Watson arithmetic for desk-scale cross-checks.
using RationalLaw = std::vector<std::pair<int, BigRat>>;  // value -> mass

RationalLaw rational_offspring_from_degree_law(const RationalLaw& mu);
std::vector<BigRat> convolution_power_exact(const RationalLaw& nu, int k,
                                            int cap);
BigRat dwass_exact(const RationalLaw& nu, int k);
BigRat gw2_mass_exact(const TreeCode& code, const RationalLaw& nu);

}  // namespace coagraph::oracle

#endif  // COAGRAPH_ORACLE_HPP_
