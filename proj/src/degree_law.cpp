#include "coagraph/degree_law.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "coagraph/errors.hpp"
#include "coagraph/rng.hpp"

namespace coagraph {

namespace {

constexpr double kProbabilityTol = 1e-12;

double lookup(const std::vector<std::pair<int, double>>& weights, int key) {
  auto it = std::lower_bound(weights.begin(), weights.end(), key,
                             [](const auto& w, int k) { return w.first < k; });
  if (it != weights.end() && it->first == key) return it->second;
  return 0.0;
}

double parse_mass(std::string_view token) {
  const auto slash = token.find('/');
  auto to_double = [](std::string_view s) {
    double out = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw ParseError("bad number: " + std::string(s));
    return out;
  };
  if (slash == std::string_view::npos) return to_double(token);
  return to_double(token.substr(0, slash)) / to_double(token.substr(slash + 1));
}

std::vector<std::pair<int, double>> parse_weight_list(std::string_view text) {
  std::vector<std::pair<int, double>> weights;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = text.substr(pos, comma - pos);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("expected i:p, got: " + std::string(item));
    int degree = 0;
    const std::string_view dtext = item.substr(0, colon);
    const auto res = std::from_chars(dtext.data(), dtext.data() + dtext.size(), degree);
    if (res.ec != std::errc() || res.ptr != dtext.data() + dtext.size())
      throw ParseError("bad integer: " + std::string(dtext));
    weights.emplace_back(degree, parse_mass(item.substr(colon + 1)));
    pos = comma + 1;
  }
  return weights;
}

std::string format_weight_list(const std::vector<std::pair<int, double>>& weights) {
  std::string out;
  char buf[64];
  for (const auto& [i, p] : weights) {
    if (!out.empty()) out += ',';
    std::snprintf(buf, sizeof buf, "%d:%.17g", i, p);
    out += buf;
  }
  return out;
}

void validate_weights(std::vector<std::pair<int, double>>& weights, int min_value) {
  std::sort(weights.begin(), weights.end());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i].first < min_value)
      throw NonProbabilityError("supported value below minimum");
    if (i > 0 && weights[i].first == weights[i - 1].first)
      throw NonProbabilityError("duplicate support point");
    if (weights[i].second < 0.0) throw NonProbabilityError("negative mass");
  }
  double total = 0.0;
  for (const auto& [i, p] : weights) total += p;
  if (std::abs(total - 1.0) > kProbabilityTol)
    throw NonProbabilityError("masses sum to " + std::to_string(total));
  std::erase_if(weights, [](const auto& w) { return w.second == 0.0; });
  if (weights.empty()) throw ZeroSupportError("law has empty support");
}

}  // namespace

double DegreeLaw::mass(int degree) const { return lookup(weights, degree); }
double OffspringLaw::mass(int value) const { return lookup(weights, value); }

DegreeLaw from_probabilities(const std::vector<std::pair<int, double>>& weights) {
  DegreeLaw law;
  law.weights = weights;
  validate_weights(law.weights, 1);
  law.support_max = law.weights.back().first;
  law.m = 0.0;
  for (const auto& [i, p] : law.weights) law.m += double(i) * p;
  return law;
}

DegreeLaw parse_degree_law(std::string_view text) {
  return from_probabilities(parse_weight_list(text));
}

std::string format_degree_law(const DegreeLaw& law) {
  return format_weight_list(law.weights);
}

OffspringLaw parse_offspring_law(std::string_view text) {
  OffspringLaw nu;
  nu.weights = parse_weight_list(text);
  validate_weights(nu.weights, 0);
  nu.support_max = nu.weights.back().first;
  nu.mean = 0.0;
  for (const auto& [i, p] : nu.weights) nu.mean += double(i) * p;
  return nu;
}

std::string format_offspring_law(const OffspringLaw& nu) {
  return format_weight_list(nu.weights);
}

DegreeLaw size_biased(const DegreeLaw& law) {
  DegreeLaw biased;
  biased.weights.reserve(law.weights.size());
  for (const auto& [i, p] : law.weights)
    biased.weights.emplace_back(i, double(i) * p / law.m);
  biased.support_max = law.support_max;
  biased.m = 0.0;
  for (const auto& [i, p] : biased.weights) biased.m += double(i) * p;
  return biased;
}

OffspringLaw offspring_law(const DegreeLaw& law) {
  const DegreeLaw biased = size_biased(law);
  OffspringLaw nu;
  nu.weights.reserve(biased.weights.size());
  for (const auto& [i, p] : biased.weights) nu.weights.emplace_back(i - 1, p);
  nu.support_max = nu.weights.back().first;
  nu.mean = biased.m - 1.0;
  return nu;
}

OffspringLaw truncated_poisson(double p, double tail_tol) {
  if (p <= 0.0) throw NonProbabilityError("poisson parameter must be positive");
  std::vector<std::pair<int, double>> weights;
  double mass = std::exp(-p);
  double total = 0.0;
  for (int i = 0; total < 1.0 - tail_tol; ++i) {
    weights.emplace_back(i, mass);
    total += mass;
    mass *= p / double(i + 1);
  }
  OffspringLaw nu;
  nu.weights = std::move(weights);
  for (auto& [i, q] : nu.weights) q /= total;
  nu.support_max = nu.weights.back().first;
  nu.mean = 0.0;
  for (const auto& [i, q] : nu.weights) nu.mean += double(i) * q;
  return nu;
}

double criticality(const DegreeLaw& law) {
  double q = 0.0;
  for (const auto& [i, p] : law.weights) q += double(i) * double(i - 2) * p;
  return q;
}

DegreeSequence degree_sequence(const DegreeLaw& law, std::size_t n,
                               SequenceMode mode, std::uint64_t seed) {
  DegreeSequence seq;
  seq.degrees.reserve(n + 1);
  if (mode == SequenceMode::quota) {
    struct Quota {
      int degree;
      std::size_t count;
      double remainder;
    };
    std::vector<Quota> quotas;
    std::size_t assigned = 0;
    for (const auto& [i, p] : law.weights) {
      const double exact = double(n) * p;
      const auto base = std::size_t(std::floor(exact));
      quotas.push_back({i, base, exact - double(base)});
      assigned += base;
    }
    // Largest-remainder completion, ties to the smaller degree.
    std::vector<std::size_t> order(quotas.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (quotas[a].remainder != quotas[b].remainder)
        return quotas[a].remainder > quotas[b].remainder;
      return quotas[a].degree < quotas[b].degree;
    });
    for (std::size_t j = 0; assigned < n; ++j) {
      ++quotas[order[j % order.size()]].count;
      ++assigned;
    }
    for (const auto& q : quotas)
      seq.degrees.insert(seq.degrees.end(), q.count, q.degree);
  } else {
    Rng rng(seed);
    std::vector<double> cdf;
    cdf.reserve(law.weights.size());
    double total = 0.0;
    for (const auto& [i, p] : law.weights) cdf.push_back(total += p);
    cdf.back() = 1.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double u = rng.unit();
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const auto idx = std::size_t(it - cdf.begin());
      seq.degrees.push_back(law.weights[std::min(idx, law.weights.size() - 1)].first);
    }
  }
  seq.stub_count = std::accumulate(seq.degrees.begin(), seq.degrees.end(),
                                   std::int64_t(0));
  if (seq.stub_count % 2 != 0) {
    seq.degrees.back() += 1;
    seq.stub_count += 1;
  }
  return seq;
}

DegreeSequence sequence_from_degrees(std::vector<int> degrees) {
  DegreeSequence seq;
  for (int d : degrees)
    if (d < 1) throw Error("degrees must be >= 1");
  seq.degrees = std::move(degrees);
  seq.stub_count = std::accumulate(seq.degrees.begin(), seq.degrees.end(),
                                   std::int64_t(0));
  return seq;
}

}  // namespace coagraph
