#include "coagraph/gw_law.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "coagraph/errors.hpp"
#include "coagraph/kernels.hpp"

namespace coagraph {

double gw2_mass(const TreeCode& code, const OffspringLaw& nu) {
  if (!is_valid_code(code)) throw InvalidCodeError(format_tree_code(code));
  double mass = 1.0;
  for (int d : code.d) {
    mass *= nu.mass(d - 1);
    if (mass == 0.0) return 0.0;
  }
  return mass;
}

Distribution convolution_power(const OffspringLaw& nu, int k, int cap) {
  std::vector<double> base(std::size_t(nu.support_max) + 1, 0.0);
  for (const auto& [i, p] : nu.weights) base[std::size_t(i)] = p;

  Distribution acc;
  acc.weights = {1.0};  // delta at 0
  std::vector<double> next;
  for (int step = 0; step < k; ++step) {
    const auto out_len =
        std::min<std::size_t>(acc.weights.size() + base.size() - 1,
                              std::size_t(cap) + 1);
    next.assign(out_len, 0.0);
    for (std::size_t i = 0; i < acc.weights.size(); ++i) {
      const double w = acc.weights[i];
      if (w == 0.0) continue;
      if (i < out_len) {
        const std::size_t len = std::min(base.size(), out_len - i);
        kernels::axpy(next.data() + i, base.data(), w, len);
        for (std::size_t j = len; j < base.size(); ++j)
          acc.shed += w * base[j];
      } else {
        acc.shed += w;  // entire translate lands past the cap
      }
    }
    acc.weights.swap(next);
  }
  return acc;
}

double dwass_total_progeny(const OffspringLaw& nu, int k) {
  if (k < 2) throw Error("total progeny of two ancestors is at least 2");
  const Distribution conv = convolution_power(nu, k, std::max(k - 2, 0));
  return 2.0 / double(k) * conv.mass(k - 2);
}

double limit_concentration(const DegreeLaw& mu, int k) {
  if (k < 2) throw Error("cluster concentration targets start at k = 2");
  const OffspringLaw nu = offspring_law(mu);
  const Distribution conv = convolution_power(nu, k, std::max(k - 2, 0));
  return mu.m / (double(k) * double(k - 1)) * conv.mass(k - 2);
}

namespace {

int draw(const OffspringLaw& nu, Rng& rng) {
  const double u = rng.unit();
  double cum = 0.0;
  for (const auto& [i, p] : nu.weights) {
    cum += p;
    if (u < cum) return i;
  }
  return nu.weights.back().first;
}

}  // namespace

std::optional<TreeCode> sample_gw2_tree(const OffspringLaw& nu, Rng& rng,
                                        std::int64_t size_cap) {
  if (size_cap < 2) throw Error("size_cap must be >= 2");
  TreeCode code;
  // The origin's root stub points at the co-ancestor, so all of its
  // 1 + xi stubs face BFS children; every later vertex has one parent stub.
  const int d1 = 1 + draw(nu, rng);
  code.d.push_back(d1);
  std::int64_t pending = d1;
  while (pending > 0) {
    if (std::int64_t(code.size()) >= size_cap) return std::nullopt;
    const int d = 1 + draw(nu, rng);
    code.d.push_back(d);
    pending += d - 2;
  }
  return code;
}

double tv_band(const std::vector<double>& cell_probs, std::int64_t n1,
               std::int64_t n2) {
  // Half-L1 of independent multinomial deviations: mean + 4 sd under a
  // normal approximation per cell.
  const double inv = 1.0 / double(n1) + (n2 > 0 ? 1.0 / double(n2) : 0.0);
  double mean = 0.0, var = 0.0;
  for (double p : cell_probs) {
    const double cell_var = p * (1.0 - p) * inv;
    mean += std::sqrt(cell_var * 2.0 / std::numbers::pi);
    var += cell_var * (1.0 - 2.0 / std::numbers::pi);
  }
  return 0.5 * (mean + 4.0 * std::sqrt(var));
}

TvReport poisson_conditioned_law_check(double p, std::int64_t samples,
                                       std::uint64_t seed, int report_size_cap,
                                       std::int64_t size_cap) {
  if (p <= 0.0 || p > 1.0) throw Error("poisson parameter must be in (0, 1]");
  const OffspringLaw nu = truncated_poisson(p);
  Rng rng(seed);
  TvReport report;
  std::map<TreeCode, std::int64_t> counts;
  std::int64_t other = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    // Single ancestor: origin degree is its child count (the root stub is
    // the first child stub); trees of size 1 are rejected.
    int d1;
    do {
      d1 = rng.poisson(p);
      ++report.rejected;
    } while (d1 == 0);
    --report.rejected;
    TreeCode code;
    code.d.push_back(d1);
    std::int64_t pending = d1;
    bool censored = false;
    while (pending > 0) {
      if (std::int64_t(code.size()) >= size_cap) {
        censored = true;
        break;
      }
      const int d = 1 + rng.poisson(p);
      code.d.push_back(d);
      pending += d - 2;
    }
    if (censored) {
      ++report.censored;
      ++other;
    } else if (int(code.size()) <= report_size_cap) {
      ++counts[code];
    } else {
      ++other;
    }
  }
  report.samples = samples;

  // Exact two-ancestor law over the same cells.
  std::vector<double> cell_probs;
  double tracked_mass = 0.0;
  double tv = 0.0;
  std::map<TreeCode, double> exact;
  for (int k = 2; k <= report_size_cap; ++k)
    for (const TreeCode& code : enumerate_codes(k))
      exact[code] = gw2_mass(code, nu);
  for (const auto& [code, mass] : exact) {
    const auto it = counts.find(code);
    const double freq =
        it == counts.end() ? 0.0 : double(it->second) / double(samples);
    tv += std::abs(freq - mass);
    tracked_mass += mass;
    cell_probs.push_back(mass);
    if (it != counts.end()) counts.erase(it);
  }
  for (const auto& [code, count] : counts) {
    tv += double(count) / double(samples);  // sampled codes the target misses
    cell_probs.push_back(0.0);
  }
  tv += std::abs(double(other) / double(samples) - (1.0 - tracked_mass));
  cell_probs.push_back(1.0 - tracked_mass);
  report.tv = 0.5 * tv;
  report.band = tv_band(cell_probs, samples, 0);
  report.pass = report.tv <= report.band;
  return report;
}

}  // namespace coagraph
