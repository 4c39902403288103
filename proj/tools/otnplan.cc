// otnplan: survivable MPLS-over-OTN design from the command line.
//
// Exit status: 0 ok, 1 infeasible plan or failed verification, 2 usage or
// schema error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "otnplan/configuration.h"
#include "otnplan/planner.h"
#include "otnplan/report.h"
#include "otnplan/verify.h"

namespace fs = std::filesystem;
using namespace otnplan;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") std::cout << text;
  else write_file(out_path, text);
}

std::string default_out_dir() {
  const char* env = std::getenv("OTNPLAN_OUT_DIR");
  return env != nullptr && *env != '\0' ? env : ".";
}

std::string extension(ReportFormat f) {
  switch (f) {
    case ReportFormat::kTable: return "txt";
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kJson: return "json";
  }
  return "txt";
}

template <typename F>
auto wrap_usage(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// ---- plan ----

struct PlanArgs {
  std::string instance;
  std::string mode = "none";
  std::string approach = "sequential";
  std::string cost_ratio;
  double gap = 0.03;
  double time_limit = 300.0;
  std::string out_dir;
  bool emit_lp = false;
  std::string solution_in;
  bool verify = false;
  std::string report_format = "table";
};

std::string phase_file(int index, const std::string& phase, const std::string& ext) {
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%02d-", index);
  return prefix + phase + "." + ext;
}

int run_plan(const PlanArgs& a) {
  Instance inst = load_instance(a.instance);
  if (!a.cost_ratio.empty()) {
    inst.ratios = wrap_usage([&] { return CostRatios::from_label(a.cost_ratio); });
    inst.refresh_costs();
  }
  for (const auto& problem : check_instance(inst)) throw SchemaError(problem);
  const SurvivabilityMode mode = wrap_usage([&] { return parse_mode(a.mode); });
  const Approach approach = wrap_usage([&] { return parse_approach(a.approach); });
  const ReportFormat format = wrap_usage([&] { return parse_report_format(a.report_format); });
  if (a.gap < 0) throw UsageError("--gap must be >= 0");

  const fs::path out = a.out_dir.empty() ? default_out_dir() : a.out_dir;
  const std::string stem = fs::path(a.instance).stem().string() + "-" + a.mode + "-" + a.approach;

  PlanOptions opt;
  opt.gap = a.gap;
  opt.time_limit_seconds = a.time_limit;
  Planner planner(inst, mode, approach, opt);
  int index = 0;
  try {
    while (!planner.done()) {
      const PhaseModel& phase = planner.build_next();
      const std::string name = planner.next_phase();
      ++index;
      if (a.emit_lp) {
        write_file(out / (stem + "-" + phase_file(index, name, "lp")), milp::emit_lp(phase.model, name));
      }
      const fs::path sol = a.solution_in.empty() ? fs::path() : fs::path(a.solution_in) / phase_file(index, name, "sol");
      if (!sol.empty() && fs::exists(sol) && phase.model.variable_count() > 0) {
        const auto listing = milp::parse_solution_listing(read_file(sol));
        std::vector<double> values(phase.model.variable_count(), 0.0);
        for (const auto& [var, value] : listing) {
          auto id = phase.model.find_variable(var);
          if (!id) throw SchemaError(sol.string() + ": unknown variable " + var);
          values[*id] = value;
        }
        const auto problems = milp::check_solution(phase.model, values);
        if (!problems.empty()) throw SchemaError(sol.string() + ": " + problems.front());
        PhaseReport report;
        report.status = milp::SolveStatus::kOptimal;
        report.objective = phase.model.evaluate_objective(values);
        report.best_bound = report.objective;
        report.gap = 0.0;
        planner.accept(values, report);
      } else {
        planner.solve_next();
      }
    }
  } catch (const PlanError& e) {
    std::cerr << "plan: infeasible: " << e.what() << '\n';
    return kFailed;
  }
  if (a.emit_lp) {
    std::cout << "wrote " << index << " phase models to " << out.string() << '\n';
    return kOk;
  }

  const NetworkConfiguration& cfg = planner.configuration();
  write_file(out / (stem + ".config.json"), configuration_to_json(cfg));
  const std::string report = emit_report({report_column(cfg)}, format);
  write_file(out / (stem + ".report." + extension(format)), report);
  std::cout << report;

  if (a.verify) {
    const auto rest = check_restorability(cfg, enumerate_failures(cfg));
    const auto violations = check_disjointness(cfg);
    std::string text = restorability_to_text(rest, cfg.instance.topology);
    for (const auto& v : violations) text += "violation " + v + "\n";
    write_file(out / (stem + ".verify.txt"), text);
    if (rest.restorability() < 1.0 || rest.contention > 0 || !violations.empty()) {
      std::cerr << "plan: verification failed\n";
      return kFailed;
    }
  }
  return kOk;
}

// ---- verify ----

int run_verify(const std::string& path, const std::string& out) {
  const NetworkConfiguration cfg = load_configuration(path);
  const auto rest = check_restorability(cfg, enumerate_failures(cfg));
  const auto violations = check_disjointness(cfg);
  std::string text = restorability_to_text(rest, cfg.instance.topology);
  for (const auto& v : violations) text += "violation " + v + "\n";
  emit(out, text);
  return rest.restorability() < 1.0 || rest.contention > 0 || !violations.empty() ? kFailed : kOk;
}

// ---- report ----

int run_report(const std::vector<std::string>& paths, const std::string& format_text, int baseline,
               const std::string& cost_ratio, const std::string& out) {
  const ReportFormat format = wrap_usage([&] { return parse_report_format(format_text); });
  std::vector<ReportColumn> cols;
  for (const auto& p : paths) {
    const NetworkConfiguration cfg = load_configuration(p);
    std::optional<UnitCosts> costs;
    if (!cost_ratio.empty()) {
      costs = derive_unit_costs(wrap_usage([&] { return CostRatios::from_label(cost_ratio); }),
                                cfg.instance.params.capacity);
    }
    cols.push_back(report_column(cfg, "", costs));
  }
  std::optional<std::size_t> base;
  if (baseline >= 0) {
    if (static_cast<std::size_t>(baseline) >= cols.size()) throw UsageError("--baseline out of range");
    base = static_cast<std::size_t>(baseline);
  }
  emit(out, emit_report(cols, format, base));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Survivable MPLS-over-OTN network design"};
  app.require_subcommand(1);

  PlanArgs pa;
  auto* plan_cmd = app.add_subcommand("plan", "Design a network for one mode and approach");
  plan_cmd->add_option("instance", pa.instance, "Instance JSON file")->required();
  plan_cmd->add_option("--mode", pa.mode,
                       "none | single-layer | ml-double-protection | ml-spare-unprotected | ml-interlayer-brs");
  plan_cmd->add_option("--approach", pa.approach, "sequential | integrated");
  plan_cmd->add_option("--cost-ratio", pa.cost_ratio, "cr1 | cr2 | cr3 (overrides the instance)");
  plan_cmd->add_option("--gap", pa.gap, "Relative optimality gap per phase");
  plan_cmd->add_option("--time-limit", pa.time_limit, "Seconds per phase");
  plan_cmd->add_option("--out-dir", pa.out_dir, "Output directory (default $OTNPLAN_OUT_DIR or .)");
  plan_cmd->add_flag("--emit-lp", pa.emit_lp, "Write one .lp file per phase instead of a configuration");
  plan_cmd->add_option("--solution-in", pa.solution_in, "Directory with NN-<phase>.sol listings to use");
  plan_cmd->add_flag("--verify", pa.verify, "Check restorability and protection rules");
  plan_cmd->add_option("--report-format", pa.report_format, "table | csv | json");

  std::string verify_path, verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "Check restorability of a configuration");
  verify_cmd->add_option("configuration", verify_path, "Configuration JSON")->required();
  verify_cmd->add_option("--out", verify_out, "Report file (default stdout)");

  std::vector<std::string> report_paths;
  std::string report_format = "table", report_ratio, report_out;
  int baseline = -1;
  auto* report_cmd = app.add_subcommand("report", "Compare resource usage of configurations");
  report_cmd->add_option("configurations", report_paths, "Configuration JSON files")->required();
  report_cmd->add_option("--format", report_format, "table | csv | json");
  report_cmd->add_option("--baseline", baseline, "Column index for relative cost differences");
  report_cmd->add_option("--cost-ratio", report_ratio, "Reprice with cr1 | cr2 | cr3");
  report_cmd->add_option("--out", report_out, "Output file (default stdout)");

  int gen_nodes = 8;
  double gen_connectivity = 3.0;
  std::uint64_t gen_seed = 1;
  int gen_wavelengths = 32;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen-topology", "Random bi-connected topology");
  gen_cmd->add_option("--nodes", gen_nodes)->check(CLI::Range(3, 1000));
  gen_cmd->add_option("--connectivity", gen_connectivity, "Average node degree");
  gen_cmd->add_option("--seed", gen_seed);
  gen_cmd->add_option("--wavelengths", gen_wavelengths);
  gen_cmd->add_option("--out", gen_out, "Output file (default stdout)");

  std::string est_instance, est_approach = "sequential";
  int est_nodes = 0, est_lsps = 0, est_links = 0, est_q = 2;
  auto* est_cmd = app.add_subcommand("estimate-size", "Variable count of the logical design model");
  est_cmd->add_option("--instance", est_instance, "Take sizes from an instance");
  est_cmd->add_option("--nodes", est_nodes);
  est_cmd->add_option("--lsps", est_lsps);
  est_cmd->add_option("--links", est_links);
  est_cmd->add_option("--parallel", est_q, "Q");
  est_cmd->add_option("--approach", est_approach, "sequential | integrated");

  std::string or_instance, or_mode = "none", or_approach = "sequential", or_out;
  auto* or_cmd = app.add_subcommand("oracle", "Exhaustive optimum for small instances");
  or_cmd->add_option("instance", or_instance)->required();
  or_cmd->add_option("--mode", or_mode);
  or_cmd->add_option("--approach", or_approach);
  or_cmd->add_option("--out", or_out, "Write the configuration JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*plan_cmd) return run_plan(pa);
    if (*verify_cmd) return run_verify(verify_path, verify_out);
    if (*report_cmd) return run_report(report_paths, report_format, baseline, report_ratio, report_out);
    if (*gen_cmd) {
      if (gen_connectivity < 2.0 || gen_connectivity > gen_nodes - 1) {
        throw UsageError("--connectivity must lie in [2, nodes - 1]");
      }
      emit(gen_out, topology_to_json(generate_topology(gen_nodes, gen_connectivity, gen_seed, gen_wavelengths)) + "\n");
      return kOk;
    }
    if (*est_cmd) {
      const Approach ap = wrap_usage([&] { return parse_approach(est_approach); });
      if (!est_instance.empty()) {
        const Instance inst = load_instance(est_instance);
        est_nodes = inst.topology.node_count();
        est_lsps = static_cast<int>(inst.lsps.size());
        est_links = inst.topology.link_count();
        est_q = inst.params.max_parallel;
      }
      if (est_nodes < 2 || est_lsps < 1) throw UsageError("need --instance or --nodes and --lsps");
      std::cout << estimate_problem_size(est_nodes, est_lsps, est_q, est_links, ap) << '\n';
      return kOk;
    }
    if (*or_cmd) {
      const Instance inst = load_instance(or_instance);
      const SurvivabilityMode mode = wrap_usage([&] { return parse_mode(or_mode); });
      const Approach ap = wrap_usage([&] { return parse_approach(or_approach); });
      OracleResult r;
      try {
        r = wrap_usage([&] { return brute_force_optimum(inst, mode, ap); });
      } catch (const std::runtime_error& e) {
        if (dynamic_cast<const UsageError*>(&e)) throw;
        std::cerr << "oracle: infeasible: " << e.what() << '\n';
        return kFailed;
      }
      std::printf("%.4f\n", r.cost);
      if (!or_out.empty()) write_file(or_out, configuration_to_json(r.config));
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
