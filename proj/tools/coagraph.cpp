// Command-line front door: parses an experiment description, runs the
// corresponding library routine, and emits a CSV (or JSON) report with the
// full configuration embedded so every artifact is self-describing.

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coagraph/configuration.hpp"
#include "coagraph/degree_law.hpp"
#include "coagraph/errors.hpp"
#include "coagraph/estimator.hpp"
#include "coagraph/gw_law.hpp"
#include "coagraph/kernels.hpp"
#include "coagraph/oracle.hpp"
#include "coagraph/smoluchowski.hpp"
#include "coagraph/tree_code.hpp"

namespace {

using namespace coagraph;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(std::int64_t x) { return std::to_string(x); }

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(const Table& table, std::ostream& out) {
  for (const auto& [key, value] : table.meta)
    out << "# " << key << "=" << value << "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << csv_quote(table.header[i]);
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << csv_quote(row[i]);
    out << "\n";
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  for (const auto& [key, value] : table.meta) doc["metadata"][key] = value;
  doc["header"] = table.header;
  doc["rows"] = table.rows;
  out << doc.dump(2) << "\n";
}

struct GlobalOptions {
  bool deterministic = false;
  bool json = false;
};

void emit(const Table& table, const std::string& out_path,
          const GlobalOptions& global) {
  Table final_table = table;
  if (!global.deterministic) {
    const std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    final_table.meta.emplace_back("timestamp", buf);
  }
  final_table.meta.emplace_back("build_rev", COAGRAPH_BUILD_REV);
  if (out_path.empty() || out_path == "-") {
    global.json ? write_json(final_table, std::cout)
                : write_csv(final_table, std::cout);
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error("cannot open output file: " + out_path);
    global.json ? write_json(final_table, file) : write_csv(final_table, file);
  }
}

std::string mode_name(SequenceMode mode) {
  return mode == SequenceMode::quota ? "quota" : "iid";
}

SequenceMode parse_mode(const std::string& text) {
  if (text == "quota") return SequenceMode::quota;
  if (text == "iid") return SequenceMode::iid;
  throw CLI::ValidationError("--mode", "must be quota or iid");
}

std::vector<std::string> structure_rows_header() {
  return {"kind", "code", "mean", "se", "target", "z"};
}

void append_structure_rows(Table& table, const StructureReport& report,
                           const std::string& prefix = "") {
  auto push = [&](std::vector<std::string> row) {
    if (!prefix.empty()) row.insert(row.begin(), prefix);
    table.rows.push_back(std::move(row));
  };
  for (const auto& row : report.rows)
    push({"code", format_tree_code(row.code), fmt(row.mean), fmt(row.se),
          report.has_targets ? fmt(row.target) : "",
          report.has_targets ? fmt(row.z) : ""});
  push({"other-tree", "", fmt(report.other_tree_mean),
        fmt(report.other_tree_se), "", ""});
  push({"null", "", fmt(report.null_mean), fmt(report.null_se),
        report.has_targets ? fmt(0.0) : "", ""});
}

int cmd_gw_exact(const std::string& law_text, int max_size,
                 const std::string& out, const GlobalOptions& global) {
  const DegreeLaw mu = parse_degree_law(law_text);
  const OffspringLaw nu = offspring_law(mu);
  Table table;
  table.meta = {{"command", "gw exact"},
                {"law", format_degree_law(mu)},
                {"offspring_law", format_offspring_law(nu)},
                {"max_size", std::to_string(max_size)}};
  table.header = {"kind", "k", "code", "mass"};
  for (int k = 2; k <= max_size; ++k)
    for (const TreeCode& code : enumerate_codes(k))
      table.rows.push_back({"code", std::to_string(k), format_tree_code(code),
                            fmt(gw2_mass(code, nu))});
  for (int k = 2; k <= max_size; ++k)
    table.rows.push_back(
        {"dwass", std::to_string(k), "", fmt(dwass_total_progeny(nu, k))});
  emit(table, out, global);
  return 0;
}

int cmd_simulate_rho(const std::string& law_text, std::int64_t n,
                     int replicates, int code_size_cap,
                     const std::string& mode_text, std::uint64_t seed,
                     const std::string& out, const GlobalOptions& global) {
  const DegreeLaw mu = parse_degree_law(law_text);
  const SequenceMode mode = parse_mode(mode_text);
  const StructureReport report =
      run_structure_experiment(mu, n, replicates, code_size_cap, mode, seed);
  Table table;
  table.meta = {{"command", "simulate rho"},
                {"law", format_degree_law(mu)},
                {"n", fmt(n)},
                {"replicates", std::to_string(replicates)},
                {"code_size_cap", std::to_string(code_size_cap)},
                {"mode", mode_name(mode)},
                {"seed", std::to_string(seed)},
                {"stub_count", fmt(report.stub_count)}};
  table.header = structure_rows_header();
  append_structure_rows(table, report);
  emit(table, out, global);
  return 0;
}

int cmd_simulate_sizes(const std::string& law_text, std::int64_t n,
                       int replicates, int k_cap, const std::string& mode_text,
                       std::uint64_t seed, const std::string& out,
                       const GlobalOptions& global) {
  const DegreeLaw mu = parse_degree_law(law_text);
  const SequenceMode mode = parse_mode(mode_text);
  const SizeReport report =
      run_cluster_size_experiment(mu, n, replicates, k_cap, mode, seed);
  Table table;
  table.meta = {{"command", "simulate sizes"},
                {"law", format_degree_law(mu)},
                {"n", fmt(n)},
                {"replicates", std::to_string(replicates)},
                {"k_cap", std::to_string(k_cap)},
                {"mode", mode_name(mode)},
                {"seed", std::to_string(seed)},
                {"weighted_l1", fmt(report.weighted_l1)}};
  table.header = {"k", "density_mean", "se", "target"};
  for (const auto& row : report.rows)
    table.rows.push_back(
        {std::to_string(row.k), fmt(row.mean), fmt(row.se), fmt(row.target)});
  emit(table, out, global);
  return 0;
}

int cmd_sweep(const std::string& law_text,
              const std::vector<std::int64_t>& n_list, int replicates,
              int code_size_cap, std::uint64_t seed, const std::string& out,
              const GlobalOptions& global) {
  const DegreeLaw mu = parse_degree_law(law_text);
  const SweepReport sweep =
      convergence_sweep(mu, n_list, replicates, code_size_cap, seed);
  Table table;
  std::string n_text;
  for (std::size_t i = 0; i < n_list.size(); ++i)
    n_text += (i ? "," : "") + fmt(n_list[i]);
  table.meta = {{"command", "sweep"},
                {"law", format_degree_law(mu)},
                {"n_list", n_text},
                {"replicates", std::to_string(replicates)},
                {"code_size_cap", std::to_string(code_size_cap)},
                {"seed", std::to_string(seed)},
                {"criticality_warning",
                 sweep.criticality_warning ? "true" : "false"}};
  table.header = {"n", "kind", "code", "mean", "se", "target", "z"};
  for (const SweepPoint& point : sweep.points) {
    append_structure_rows(table, point.report, fmt(point.n));
    table.rows.push_back(
        {fmt(point.n), "max-abs-error", "", fmt(point.max_abs_error), "", "",
         ""});
  }
  emit(table, out, global);
  return 0;
}

int cmd_reroot_test(const std::string& nu_text, std::int64_t samples,
                    std::int64_t size_cap, int report_size_cap,
                    std::uint64_t seed, const std::string& out,
                    const GlobalOptions& global) {
  const OffspringLaw nu = parse_offspring_law(nu_text);
  const RerootReport report =
      run_rerooting_experiment(nu, samples, size_cap, report_size_cap, seed);
  Table table;
  table.meta = {{"command", "reroot-test"},
                {"offspring_law", format_offspring_law(nu)},
                {"samples", fmt(samples)},
                {"size_cap", fmt(size_cap)},
                {"report_size_cap", std::to_string(report_size_cap)},
                {"seed", std::to_string(seed)}};
  table.header = {"tv_pre_post", "band_pre_post", "tv_post_exact",
                  "band_post_exact", "censored", "pass"};
  table.rows.push_back({fmt(report.tv_pre_post), fmt(report.band_pre_post),
                        fmt(report.tv_post_exact), fmt(report.band_post_exact),
                        fmt(report.censored), report.pass ? "true" : "false"});
  emit(table, out, global);
  return 0;
}

int cmd_dwass_check(const std::string& nu_text, std::int64_t samples, int k_cap,
                    std::uint64_t seed, const std::string& out,
                    const GlobalOptions& global) {
  const OffspringLaw nu = parse_offspring_law(nu_text);
  const DwassReport report = run_dwass_check(nu, samples, k_cap, seed);
  Table table;
  table.meta = {{"command", "dwass-check"},
                {"offspring_law", format_offspring_law(nu)},
                {"samples", fmt(samples)},
                {"k_cap", std::to_string(k_cap)},
                {"seed", std::to_string(seed)},
                {"chi_square", fmt(report.chi_square)},
                {"threshold", fmt(report.threshold)},
                {"df", std::to_string(report.df)},
                {"censored", fmt(report.censored)},
                {"pass", report.pass ? "true" : "false"}};
  table.header = {"k", "observed", "expected"};
  for (const auto& bin : report.bins)
    table.rows.push_back({bin.k == 0 ? "tail" : std::to_string(bin.k),
                          fmt(bin.observed), fmt(bin.expected)});
  emit(table, out, global);
  return 0;
}

int cmd_oracle(const std::vector<int>& degrees, const std::string& out,
               const GlobalOptions& global) {
  const StubSystem system = build_stub_system(sequence_from_degrees(degrees));
  const oracle::RhoTable rho = oracle::exact_rho_table(system);
  const auto n = system.vertex_count();
  const bool spanning_case = system.stub_count() == 2 * (n - 1);
  Table table;
  std::string degree_text;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    degree_text += (i ? "," : "") + std::to_string(degrees[i]);
  table.meta = {{"command", "oracle"},
                {"degrees", degree_text},
                {"pairings", oracle::pairing_count(system.stub_count()).str()}};
  if (spanning_case)
    table.meta.emplace_back("tree_pairings",
                            oracle::tree_pairing_count(system).str());
  table.header = {"code",
                  "exact_expectation_num",
                  "exact_expectation_den",
                  "value",
                  "printed_formula",
                  "variant",
                  "enumerated"};
  for (const auto& [code, mass] : rho.tree_mass) {
    std::vector<std::string> row = {
        format_tree_code(code), numerator(mass).str(), denominator(mass).str(),
        fmt(double(mass)), "", "", ""};
    if (spanning_case && std::int64_t(code.size()) == n) {
      const auto report = oracle::printed_formula_report(system, code);
      row[4] = report.lemma2_printed.str();
      row[5] = report.lemma2_variant.str();
      row[6] = report.enumerated_rooted.str();
    }
    table.rows.push_back(std::move(row));
  }
  table.rows.push_back({"null", numerator(rho.null_mass).str(),
                        denominator(rho.null_mass).str(),
                        fmt(double(rho.null_mass)), "", "", ""});
  emit(table, out, global);
  return 0;
}

int cmd_smolu(const std::string& law_text, int a_max, int k_max, double horizon,
              double dt, const std::string& method_text, int k_report,
              const std::string& checkpoints_out, const std::string& out,
              const GlobalOptions& global) {
  const DegreeLaw mu = parse_degree_law(law_text);
  if (a_max <= 0) a_max = 2 * mu.support_max;
  const Method method = [&] {
    if (method_text == "rk4") return Method::rk4;
    if (method_text == "euler") return Method::euler;
    throw CLI::ValidationError("--method", "must be rk4 or euler");
  }();
  const ConcentrationGrid initial = initial_monomers(mu, a_max, k_max);
  const double initial_mass = initial.total_mass();
  const IntegrateResult result = integrate(initial, horizon, dt, method);
  const double final_mass = result.final.total_mass();
  const double drift =
      horizon > 0.0
          ? std::abs(final_mass + result.final.shed_mass - initial_mass) /
                horizon
          : 0.0;
  const bool valid = result.final.shed_mass < 1e-4 * initial_mass;

  if (!checkpoints_out.empty()) {
    Table checkpoints;
    checkpoints.meta = {{"command", "smolu checkpoints"},
                        {"law", format_degree_law(mu)}};
    checkpoints.header = {"t", "a", "k", "c"};
    for (const Checkpoint& cp : result.checkpoints)
      for (int a = 0; a <= cp.grid.a_max; ++a)
        for (int k = 1; k <= cp.grid.k_max; ++k)
          if (cp.grid.at(a, k) != 0.0)
            checkpoints.rows.push_back({fmt(cp.t), std::to_string(a),
                                        std::to_string(k),
                                        fmt(cp.grid.at(a, k))});
    emit(checkpoints, checkpoints_out, global);
  }

  Table table;
  table.meta = {{"command", "smolu"},
                {"law", format_degree_law(mu)},
                {"a_max", std::to_string(a_max)},
                {"k_max", std::to_string(k_max)},
                {"horizon", fmt(horizon)},
                {"dt", fmt(dt)},
                {"method", method_text},
                {"initial_mass", fmt(initial_mass)},
                {"final_mass", fmt(final_mass)},
                {"shed_mass", fmt(result.final.shed_mass)},
                {"mass_drift_per_unit_time", fmt(drift)},
                {"valid", valid ? "true" : "false"}};
  table.header = {"k", "computed", "target", "abs_error"};
  for (const SteadyStateRow& row :
       steady_state_error(result.final, mu, k_report))
    table.rows.push_back({std::to_string(row.k), fmt(row.computed),
                          fmt(row.target), fmt(row.abs_error)});
  emit(table, out, global);
  return 0;
}

int cmd_poisson_check(double p, std::int64_t samples, int report_size_cap,
                      std::uint64_t seed, const std::string& out,
                      const GlobalOptions& global) {
  const TvReport report =
      poisson_conditioned_law_check(p, samples, seed, report_size_cap);
  Table table;
  table.meta = {{"command", "poisson-check"},
                {"p", fmt(p)},
                {"samples", fmt(samples)},
                {"report_size_cap", std::to_string(report_size_cap)},
                {"seed", std::to_string(seed)}};
  table.header = {"tv", "band", "rejected", "censored", "pass"};
  table.rows.push_back({fmt(report.tv), fmt(report.band), fmt(report.rejected),
                        fmt(report.censored),
                        report.pass ? "true" : "false"});
  emit(table, out, global);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"configuration-model cluster statistics laboratory"};
  app.set_config("--config");
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_flag("--deterministic", global.deterministic,
               "suppress the timestamp metadata line");
  app.add_flag("--json", global.json, "emit JSON instead of CSV");

  // Defaults shared by the statistical subcommands.
  std::string law = "1:0.8,3:0.2";
  std::string nu_text = "0:4/7,2:3/7";
  std::string mode = "quota";
  std::string out;
  std::uint64_t seed = 1;
  std::int64_t n = 100000, samples = 100000, size_cap = 1024;
  int replicates = 20, code_size_cap = 8, k_cap = 8, max_size = 6;
  int report_size_cap = 5;

  auto* gw = app.add_subcommand("gw", "exact two-ancestor tree law");
  gw->require_subcommand(1);
  auto* gw_exact = gw->add_subcommand("exact", "code/mass table");
  gw_exact->add_option("--law", law, "degree law, e.g. 1:0.8,3:0.2");
  gw_exact->add_option("--max-size", max_size, "largest code size listed");
  gw_exact->add_option("--out", out, "output path (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo experiments");
  simulate->require_subcommand(1);
  auto* rho = simulate->add_subcommand("rho", "rooted-structure measure");
  rho->add_option("--law", law);
  rho->add_option("--n", n);
  rho->add_option("--replicates", replicates);
  rho->add_option("--code-size-cap", code_size_cap);
  rho->add_option("--mode", mode, "quota or iid");
  rho->add_option("--seed", seed);
  rho->add_option("--out", out);
  auto* sizes = simulate->add_subcommand("sizes", "cluster-size densities");
  sizes->add_option("--law", law);
  sizes->add_option("--n", n);
  sizes->add_option("--replicates", replicates);
  sizes->add_option("--k-cap", k_cap);
  sizes->add_option("--mode", mode, "quota or iid");
  sizes->add_option("--seed", seed);
  sizes->add_option("--out", out);

  std::vector<std::int64_t> n_list = {1000, 10000, 100000};
  auto* sweep = app.add_subcommand("sweep", "convergence across n");
  sweep->add_option("--law", law);
  sweep->add_option("--n-list", n_list)->delimiter(',');
  sweep->add_option("--replicates", replicates);
  sweep->add_option("--code-size-cap", code_size_cap);
  sweep->add_option("--seed", seed);
  sweep->add_option("--out", out);

  auto* reroot_cmd = app.add_subcommand("reroot-test", "re-rooting invariance");
  reroot_cmd->add_option("--nu", nu_text, "offspring law, e.g. 0:4/7,2:3/7");
  reroot_cmd->add_option("--samples", samples);
  reroot_cmd->add_option("--size-cap", size_cap);
  reroot_cmd->add_option("--report-size-cap", report_size_cap);
  reroot_cmd->add_option("--seed", seed);
  reroot_cmd->add_option("--out", out);

  int dwass_k_cap = 10;
  auto* dwass = app.add_subcommand("dwass-check", "total-progeny chi-square");
  dwass->add_option("--nu", nu_text);
  dwass->add_option("--samples", samples);
  dwass->add_option("--k-cap", dwass_k_cap);
  dwass->add_option("--seed", seed);
  dwass->add_option("--out", out);

  std::vector<int> degrees = {2, 1, 1};
  auto* oracle_cmd = app.add_subcommand("oracle", "exact desk-scale tables");
  oracle_cmd->add_option("--degrees", degrees)->delimiter(',');
  oracle_cmd->add_option("--out", out);

  int a_max = 0, k_max = 64, smolu_k_report = 8;
  double horizon = 1000.0, dt = 1e-2;
  std::string method = "rk4", checkpoints_out;
  auto* smolu = app.add_subcommand("smolu", "coagulation integration");
  smolu->add_option("--law", law);
  smolu->add_option("--a-max", a_max, "0 means 2 * max degree");
  smolu->add_option("--k-max", k_max);
  smolu->add_option("--t", horizon);
  smolu->add_option("--dt", dt);
  smolu->add_option("--method", method, "rk4 or euler");
  smolu->add_option("--k-report", smolu_k_report);
  smolu->add_option("--checkpoints-out", checkpoints_out);
  smolu->add_option("--out", out);

  double p = 0.5;
  int poisson_cap = 6;
  auto* poisson =
      app.add_subcommand("poisson-check", "size-conditioned law comparison");
  poisson->add_option("--p", p);
  poisson->add_option("--samples", samples);
  poisson->add_option("--report-size-cap", poisson_cap);
  poisson->add_option("--seed", seed);
  poisson->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gw_exact->parsed()) return cmd_gw_exact(law, max_size, out, global);
    if (rho->parsed())
      return cmd_simulate_rho(law, n, replicates, code_size_cap, mode, seed,
                              out, global);
    if (sizes->parsed())
      return cmd_simulate_sizes(law, n, replicates, k_cap, mode, seed, out,
                                global);
    if (sweep->parsed())
      return cmd_sweep(law, n_list, replicates, code_size_cap, seed, out,
                       global);
    if (reroot_cmd->parsed())
      return cmd_reroot_test(nu_text, samples, size_cap, report_size_cap, seed,
                             out, global);
    if (dwass->parsed())
      return cmd_dwass_check(nu_text, samples, dwass_k_cap, seed, out, global);
    if (oracle_cmd->parsed()) return cmd_oracle(degrees, out, global);
    if (smolu->parsed())
      return cmd_smolu(law, a_max, k_max, horizon, dt, method, smolu_k_report,
                       checkpoints_out, out, global);
    if (poisson->parsed())
      return cmd_poisson_check(p, samples, poisson_cap, seed, out, global);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
