#include "coagraph/oracle.hpp"

#include <algorithm>

#include "coagraph/errors.hpp"

namespace coagraph::oracle {

BigInt pairing_count(std::int64_t S) {
  if (S < 0 || S % 2 != 0) throw OddStubCountError("S = " + std::to_string(S));
  BigInt count = 1;
  for (std::int64_t i = S - 1; i > 1; i -= 2) count *= i;
  return count;
}

namespace {

void check_enumerable(const StubSystem& system) {
  if (system.stub_count() > kMaxEnumerationStubs)
    throw TooLargeError("enumeration capped at S <= 16, got S = " +
                        std::to_string(system.stub_count()));
  if (system.stub_count() % 2 != 0)
    throw OddStubCountError("S = " + std::to_string(system.stub_count()));
}

void enumerate_rec(std::vector<std::int64_t>& mate, std::int64_t S,
                   const std::function<void(const Pairing&)>& visit) {
  std::int64_t s = 0;
  while (s < S && mate[std::size_t(s)] != -1) ++s;
  if (s == S) {
    Pairing pairing;
    pairing.mate = mate;
    visit(pairing);
    return;
  }
  for (std::int64_t t = s + 1; t < S; ++t) {
    if (mate[std::size_t(t)] != -1) continue;
    mate[std::size_t(s)] = t;
    mate[std::size_t(t)] = s;
    enumerate_rec(mate, S, visit);
    mate[std::size_t(s)] = -1;
    mate[std::size_t(t)] = -1;
  }
}

}  // namespace

void enumerate_pairings(const StubSystem& system,
                        const std::function<void(const Pairing&)>& visit) {
  check_enumerable(system);
  std::vector<std::int64_t> mate(std::size_t(system.stub_count()), -1);
  enumerate_rec(mate, system.stub_count(), visit);
}

bool split_factorization_check(const StubSystem& system,
                               const std::vector<bool>& in_first_part) {
  check_enumerable(system);
  std::int64_t s1 = 0;
  for (std::int64_t v = 0; v < system.vertex_count(); ++v)
    if (in_first_part[std::size_t(v)]) s1 += system.degree(v);
  const std::int64_t s2 = system.stub_count() - s1;
  if (s1 % 2 != 0 || s2 % 2 != 0)
    throw OddStubCountError("split parts must have even stub totals");

  BigInt no_cross = 0;
  enumerate_pairings(system, [&](const Pairing& pairing) {
    for (std::int64_t s = 0; s < system.stub_count(); ++s) {
      const std::int64_t t = pairing.mate[std::size_t(s)];
      if (s < t && in_first_part[std::size_t(system.owner(s))] !=
                       in_first_part[std::size_t(system.owner(t))])
        return;
    }
    ++no_cross;
  });
  return no_cross == pairing_count(s1) * pairing_count(s2);
}

BigInt rooted_structure_count(const StubSystem& system, const TreeCode& code,
                              bool spanning) {
  check_enumerable(system);
  if (!is_valid_code(code)) throw InvalidCodeError(format_tree_code(code));
  if (spanning && std::int64_t(code.size()) != system.vertex_count())
    return 0;
  BigInt count = 0;
  Encoder encoder(system.vertex_count());
  enumerate_pairings(system, [&](const Pairing& pairing) {
    for (std::int64_t s = 0; s < system.stub_count(); ++s) {
      const auto rooted = encoder.encode(system, pairing, s);
      if (rooted && *rooted == code) ++count;
    }
  });
  return count;
}

BigInt tree_pairing_count(const StubSystem& system) {
  check_enumerable(system);
  BigInt count = 0;
  Encoder encoder(system.vertex_count());
  enumerate_pairings(system, [&](const Pairing& pairing) {
    const auto rooted = encoder.encode(system, pairing, 0);
    if (rooted && std::int64_t(rooted->size()) == system.vertex_count())
      ++count;
  });
  return count;
}

namespace {

BigInt factorial(std::int64_t n) {
  BigInt out = 1;
  for (std::int64_t i = 2; i <= n; ++i) out *= i;
  return out;
}

BigInt multinomial_of_multiplicities(const std::vector<int>& values) {
  std::vector<int> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  BigInt denom = 1;
  std::int64_t run = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    ++run;
    if (i + 1 == sorted.size() || sorted[i + 1] != sorted[i]) {
      denom *= factorial(run);
      run = 0;
    }
  }
  return factorial(std::int64_t(sorted.size())) / denom;
}

}  // namespace

PrintedFormulaReport printed_formula_report(const StubSystem& system,
                                            const TreeCode& code) {
  check_enumerable(system);
  const auto k = std::int64_t(code.size());
  if (system.vertex_count() != k || system.stub_count() != 2 * (k - 1))
    throw Error("printed formulas apply to the spanning case only");
  BigInt degree_product = 1;
  for (int d : system.degrees.degrees) degree_product *= d;
  const BigInt multinomial = multinomial_of_multiplicities(code.d);
  PrintedFormulaReport report;
  report.lemma2_printed = multinomial * degree_product;
  report.lemma2_variant = (factorial(k) / multinomial) * degree_product;
  report.enumerated_rooted = rooted_structure_count(system, code);
  report.prop1_printed = factorial(k - 1) * degree_product;
  report.enumerated_tree_pairings = tree_pairing_count(system);
  return report;
}

RhoTable exact_rho_table(const StubSystem& system) {
  check_enumerable(system);
  const std::int64_t S = system.stub_count();
  std::map<TreeCode, std::int64_t> counts;
  std::int64_t pairings = 0;
  Encoder encoder(system.vertex_count());
  enumerate_pairings(system, [&](const Pairing& pairing) {
    ++pairings;
    for (std::int64_t s = 0; s < S; ++s) {
      const auto rooted = encoder.encode(system, pairing, s);
      if (rooted) ++counts[*rooted];
    }
  });
  RhoTable table;
  const BigInt denom = BigInt(pairings) * S;
  BigRat total = 0;
  for (const auto& [code, count] : counts) {
    const BigRat mass = BigRat(BigInt(count), denom);
    table.tree_mass[code] = mass;
    total += mass;
  }
  table.null_mass = BigRat(1) - total;
  return table;
}

BigRat exact_rho_expectation(const StubSystem& system,
                             const std::optional<TreeCode>& code) {
  const RhoTable table = exact_rho_table(system);
  if (!code) return table.null_mass;
  const auto it = table.tree_mass.find(*code);
  return it == table.tree_mass.end() ? BigRat(0) : it->second;
}

RationalLaw rational_offspring_from_degree_law(const RationalLaw& mu) {
  BigRat m = 0;
  for (const auto& [i, p] : mu) m += BigRat(i) * p;
  RationalLaw nu;
  nu.reserve(mu.size());
  for (const auto& [i, p] : mu) nu.emplace_back(i - 1, BigRat(i) * p / m);
  return nu;
}

std::vector<BigRat> convolution_power_exact(const RationalLaw& nu, int k,
                                            int cap) {
  std::vector<BigRat> acc(1, BigRat(1));
  for (int step = 0; step < k; ++step) {
    std::vector<BigRat> next(std::size_t(cap) + 1, BigRat(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] == 0) continue;
      for (const auto& [j, p] : nu) {
        const std::size_t out = i + std::size_t(j);
        if (out <= std::size_t(cap)) next[out] += acc[i] * p;
      }
    }
    acc.swap(next);
  }
  return acc;
}

BigRat dwass_exact(const RationalLaw& nu, int k) {
  if (k < 2) throw Error("total progeny of two ancestors is at least 2");
  const auto conv = convolution_power_exact(nu, k, k - 2);
  return BigRat(2, k) * conv[std::size_t(k - 2)];
}

BigRat gw2_mass_exact(const TreeCode& code, const RationalLaw& nu) {
  if (!is_valid_code(code)) throw InvalidCodeError(format_tree_code(code));
  BigRat mass = 1;
  for (int d : code.d) {
    BigRat factor = 0;
    for (const auto& [j, p] : nu)
      if (j == d - 1) factor = p;
    mass *= factor;
    if (mass == 0) return mass;
  }
  return mass;
}

}  // namespace coagraph::oracle
