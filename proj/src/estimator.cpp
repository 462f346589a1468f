#include "coagraph/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coagraph/errors.hpp"
#include "coagraph/rng.hpp"

namespace coagraph {

StubClassification classify_stubs(const StubSystem& system,
                                  const Pairing& pairing, int code_size_cap) {
  StubClassification out;
  const ClusterPartition partition = clusters(system, pairing);
  Encoder encoder(system.vertex_count());
  for (const ClusterSummary& cluster : partition.clusters) {
    const std::int64_t stubs = 2 * cluster.edge_count;
    if (!cluster.is_tree) {
      out.null_count += stubs;
      continue;
    }
    if (cluster.vertex_count > code_size_cap) {
      out.other_tree_count += stubs;
      continue;
    }
    for (std::int64_t v : cluster.member_vertices) {
      const std::int64_t first = system.first_stub(v);
      for (int i = 0; i < system.degree(v); ++i) {
        const auto code = encoder.encode(system, pairing, first + i);
        ++out.code_counts[*code];  // tree cluster: encode always succeeds
      }
    }
  }
  return out;
}

namespace {

struct Accumulator {
  double sum = 0.0, sum_sq = 0.0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
  }
  double mean(int r) const { return sum / r; }
  double se(int r) const {
    if (r < 2) return 0.0;
    const double m = mean(r);
    const double var = std::max(0.0, (sum_sq - double(r) * m * m) / (r - 1));
    return std::sqrt(var / r);
  }
};

double z_score(double mean, double se, double target) {
  if (se > 0.0) return (mean - target) / se;
  return mean == target ? 0.0 : std::numeric_limits<double>::infinity();
}

StructureReport aggregate_structure(
    const std::vector<TreeCode>& tracked,
    const std::vector<Accumulator>& code_acc, const Accumulator& other_acc,
    const Accumulator& null_acc, int replicates) {
  StructureReport report;
  report.replicates = replicates;
  report.rows.reserve(tracked.size());
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    StructureReport::Row row;
    row.code = tracked[i];
    row.mean = code_acc[i].mean(replicates);
    row.se = code_acc[i].se(replicates);
    report.rows.push_back(row);
  }
  report.other_tree_mean = other_acc.mean(replicates);
  report.other_tree_se = other_acc.se(replicates);
  report.null_mean = null_acc.mean(replicates);
  report.null_se = null_acc.se(replicates);
  return report;
}

std::vector<TreeCode> tracked_codes(int code_size_cap) {
  std::vector<TreeCode> tracked;
  for (int k = 2; k <= code_size_cap; ++k)
    for (TreeCode& code : enumerate_codes(k)) tracked.push_back(std::move(code));
  return tracked;
}

}  // namespace

StructureReport run_structure_experiment(const DegreeLaw& mu, std::int64_t n,
                                         int replicates, int code_size_cap,
                                         SequenceMode mode,
                                         std::uint64_t seed) {
  if (n < 2) throw Error("n must be >= 2");
  if (replicates < 1) throw Error("replicates must be >= 1");
  if (code_size_cap < 2) throw Error("code_size_cap must be >= 2");

  const std::vector<TreeCode> tracked = tracked_codes(code_size_cap);
  std::map<TreeCode, std::size_t> index;
  for (std::size_t i = 0; i < tracked.size(); ++i) index[tracked[i]] = i;

  std::vector<Accumulator> code_acc(tracked.size());
  Accumulator other_acc, null_acc;
  std::int64_t stub_count = 0;
  for (int r = 0; r < replicates; ++r) {
    const std::uint64_t rep = derive_seed(seed, std::uint64_t(r));
    const DegreeSequence degrees =
        degree_sequence(mu, std::size_t(n), mode, derive_seed(rep, 0));
    const StubSystem system = build_stub_system(degrees);
    const Pairing pairing = uniform_pairing(system, derive_seed(rep, 1));
    const StubClassification counts =
        classify_stubs(system, pairing, code_size_cap);
    stub_count = system.stub_count();
    const double S = double(stub_count);
    for (std::size_t i = 0; i < tracked.size(); ++i) {
      const auto it = counts.code_counts.find(tracked[i]);
      code_acc[i].add(it == counts.code_counts.end() ? 0.0
                                                     : double(it->second) / S);
    }
    other_acc.add(double(counts.other_tree_count) / S);
    null_acc.add(double(counts.null_count) / S);
  }

  StructureReport report =
      aggregate_structure(tracked, code_acc, other_acc, null_acc, replicates);
  report.has_targets = true;
  const OffspringLaw nu = offspring_law(mu);
  for (auto& row : report.rows) {
    row.target = gw2_mass(row.code, nu);
    row.z = z_score(row.mean, row.se, row.target);
  }
  report.n = n;
  report.stub_count = stub_count;
  report.code_size_cap = code_size_cap;
  report.mode = mode;
  report.seed = seed;
  return report;
}

StructureReport run_structure_experiment(const DegreeSequence& degrees,
                                         int replicates, int code_size_cap,
                                         std::uint64_t seed) {
  if (replicates < 1) throw Error("replicates must be >= 1");
  const StubSystem system = build_stub_system(degrees);
  const std::vector<TreeCode> tracked = tracked_codes(code_size_cap);

  std::vector<Accumulator> code_acc(tracked.size());
  Accumulator other_acc, null_acc;
  const double S = double(system.stub_count());
  for (int r = 0; r < replicates; ++r) {
    const Pairing pairing =
        uniform_pairing(system, derive_seed(seed, std::uint64_t(r)));
    const StubClassification counts =
        classify_stubs(system, pairing, code_size_cap);
    for (std::size_t i = 0; i < tracked.size(); ++i) {
      const auto it = counts.code_counts.find(tracked[i]);
      code_acc[i].add(it == counts.code_counts.end() ? 0.0
                                                     : double(it->second) / S);
    }
    other_acc.add(double(counts.other_tree_count) / S);
    null_acc.add(double(counts.null_count) / S);
  }

  StructureReport report =
      aggregate_structure(tracked, code_acc, other_acc, null_acc, replicates);
  report.n = system.vertex_count();
  report.stub_count = system.stub_count();
  report.code_size_cap = code_size_cap;
  report.seed = seed;
  return report;
}

SizeReport run_cluster_size_experiment(const DegreeLaw& mu, std::int64_t n,
                                       int replicates, int k_cap,
                                       SequenceMode mode, std::uint64_t seed) {
  if (n < 2) throw Error("n must be >= 2");
  if (replicates < 1) throw Error("replicates must be >= 1");
  if (k_cap < 2) throw Error("k_cap must be >= 2");

  std::vector<Accumulator> acc(static_cast<std::size_t>(k_cap));
  for (int r = 0; r < replicates; ++r) {
    const std::uint64_t rep = derive_seed(seed, std::uint64_t(r));
    const DegreeSequence degrees =
        degree_sequence(mu, std::size_t(n), mode, derive_seed(rep, 0));
    const StubSystem system = build_stub_system(degrees);
    const Pairing pairing = uniform_pairing(system, derive_seed(rep, 1));
    const auto sizes = cluster_size_counts(clusters(system, pairing));
    for (int k = 1; k <= k_cap; ++k) {
      const auto it = sizes.find(k);
      acc[std::size_t(k - 1)].add(
          it == sizes.end() ? 0.0 : double(it->second) / double(n));
    }
  }

  SizeReport report;
  report.rows.reserve(std::size_t(k_cap));
  for (int k = 1; k <= k_cap; ++k) {
    SizeReport::Row row;
    row.k = k;
    row.mean = acc[std::size_t(k - 1)].mean(replicates);
    row.se = acc[std::size_t(k - 1)].se(replicates);
    row.target = k >= 2 ? limit_concentration(mu, k) : 0.0;
    if (k >= 2) report.weighted_l1 += k * std::abs(row.mean - row.target);
    report.rows.push_back(row);
  }
  report.n = n;
  report.replicates = replicates;
  report.mode = mode;
  report.seed = seed;
  return report;
}

SweepReport convergence_sweep(const DegreeLaw& mu,
                              const std::vector<std::int64_t>& n_list,
                              int replicates, int code_size_cap,
                              std::uint64_t seed) {
  SweepReport sweep;
  sweep.replicates = replicates;
  sweep.seed = seed;
  sweep.criticality_warning = criticality(mu) > 0.0;
  sweep.points.reserve(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    SweepPoint point;
    point.n = n_list[i];
    point.report = run_structure_experiment(
        mu, n_list[i], replicates, code_size_cap, SequenceMode::quota,
        derive_seed(seed, std::uint64_t(i)));
    for (const auto& row : point.report.rows)
      point.max_abs_error =
          std::max(point.max_abs_error, std::abs(row.mean - row.target));
    sweep.points.push_back(std::move(point));
  }
  return sweep;
}

RerootReport run_rerooting_experiment(const OffspringLaw& nu,
                                      std::int64_t samples,
                                      std::int64_t size_cap,
                                      int report_size_cap,
                                      std::uint64_t seed) {
  if (samples < 1) throw Error("samples must be >= 1");
  Rng rng(seed);
  std::map<TreeCode, std::int64_t> pre, post;
  std::int64_t pre_other = 0, post_other = 0, censored = 0;
  const std::int64_t censor_limit = samples / 100;
  for (std::int64_t s = 0; s < samples; ++s) {
    const auto code = sample_gw2_tree(nu, rng, size_cap);
    if (!code) {
      if (++censored > censor_limit)
        throw CensoredExcessError("more than 1% of samples hit size_cap");
      continue;
    }
    const TreeCode rerooted = reroot(*code, rng.below(code->stub_count()));
    if (int(code->size()) <= report_size_cap)
      ++pre[*code];
    else
      ++pre_other;
    if (int(rerooted.size()) <= report_size_cap)
      ++post[rerooted];
    else
      ++post_other;
  }
  const std::int64_t n_eff = samples - censored;

  std::vector<double> cell_probs;
  double tracked_mass = 0.0, tv_pre_post = 0.0, tv_post_exact = 0.0;
  for (int k = 2; k <= report_size_cap; ++k) {
    for (const TreeCode& code : enumerate_codes(k)) {
      const auto ip = pre.find(code);
      const auto iq = post.find(code);
      const double fp = ip == pre.end() ? 0.0 : double(ip->second) / n_eff;
      const double fq = iq == post.end() ? 0.0 : double(iq->second) / n_eff;
      const double mass = gw2_mass(code, nu);
      tv_pre_post += std::abs(fp - fq);
      tv_post_exact += std::abs(fq - mass);
      tracked_mass += mass;
      cell_probs.push_back(mass);
    }
  }
  tv_pre_post += std::abs(double(pre_other) - double(post_other)) / n_eff;
  tv_post_exact +=
      std::abs(double(post_other) / n_eff - (1.0 - tracked_mass));
  cell_probs.push_back(1.0 - tracked_mass);

  RerootReport report;
  report.tv_pre_post = 0.5 * tv_pre_post;
  report.band_pre_post = tv_band(cell_probs, n_eff, n_eff);
  report.tv_post_exact = 0.5 * tv_post_exact;
  report.band_post_exact = tv_band(cell_probs, n_eff, 0);
  report.samples = samples;
  report.censored = censored;
  report.pass = report.tv_pre_post <= report.band_pre_post &&
                report.tv_post_exact <= report.band_post_exact;
  return report;
}

DwassReport run_dwass_check(const OffspringLaw& nu, std::int64_t samples,
                            int k_cap, std::uint64_t seed) {
  if (samples < 1) throw Error("samples must be >= 1");
  if (k_cap < 2) throw Error("k_cap must be >= 2");
  const std::int64_t size_cap = std::max<std::int64_t>(4 * k_cap, 64);
  Rng rng(seed);
  std::vector<std::int64_t> observed(std::size_t(k_cap) + 1, 0);  // [0] = tail
  std::int64_t censored = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    const auto code = sample_gw2_tree(nu, rng, size_cap);
    if (!code) {
      ++censored;
      ++observed[0];  // censored trees exceed size_cap > k_cap: tail
      continue;
    }
    const auto k = std::int64_t(code->size());
    ++observed[std::size_t(k <= k_cap ? k : 0)];
  }
  if (censored * 10 > samples)
    throw CensoredExcessError("more than 10% of samples hit size_cap");

  DwassReport report;
  double head_mass = 0.0;
  for (int k = 2; k <= k_cap; ++k) {
    DwassReport::Bin bin;
    bin.k = k;
    bin.observed = observed[std::size_t(k)];
    const double p = dwass_total_progeny(nu, k);
    bin.expected = p * double(samples);
    head_mass += p;
    report.bins.push_back(bin);
  }
  DwassReport::Bin tail;
  tail.observed = observed[0];
  tail.expected = (1.0 - head_mass) * double(samples);
  report.bins.push_back(tail);

  int live_bins = 0;
  for (const auto& bin : report.bins) {
    if (bin.expected > 0.0) {
      ++live_bins;
      const double diff = double(bin.observed) - bin.expected;
      report.chi_square += diff * diff / bin.expected;
    } else if (bin.observed > 0) {
      report.zero_expected_hit = true;
    }
  }
  report.df = std::max(live_bins - 1, 0);
  report.threshold = report.df + 4.0 * std::sqrt(2.0 * report.df);
  report.samples = samples;
  report.censored = censored;
  report.pass = !report.zero_expected_hit && report.chi_square <= report.threshold;
  return report;
}

}  // namespace coagraph
