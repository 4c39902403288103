// Acceptance suite: one PASS/FAIL line per criterion. Exit code 0 only when
// every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "otnplan/formulation.h"
#include "otnplan/planner.h"
#include "otnplan/verify.h"

namespace {

using namespace otnplan;
using Clock = std::chrono::steady_clock;

const std::string kData = OTNPLAN_TEST_DATA_DIR;

const SurvivabilityMode kModes[] = {SurvivabilityMode::kNone, SurvivabilityMode::kSingleLayer,
                                    SurvivabilityMode::kDoubleProtection,
                                    SurvivabilityMode::kSpareUnprotected,
                                    SurvivabilityMode::kInterlayerBrs};
const Approach kApproaches[] = {Approach::kSequential, Approach::kIntegrated};

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 16) notes.push_back(why);
  }
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Instance random_instance(int n, double d, std::uint64_t topo_seed, int k, std::mt19937& rng, int q = 1) {
  Instance inst;
  inst.topology = generate_topology(n, d, topo_seed, 32);
  std::uniform_int_distribution<int> node(0, n - 1), bw(1, 8);
  for (int id = 0; id < k; ++id) {
    int s = node(rng), t;
    do t = node(rng);
    while (t == s);
    inst.lsps.push_back({id, s, t, Bandwidth::from_tenths(bw(rng) * 5)});
  }
  inst.params.max_parallel = q;
  inst.params.max_interfaces = SystemParams::default_interfaces(n, q);
  inst.refresh_costs();
  return inst;
}

PlanOptions exact() {
  PlanOptions o;
  o.gap = 0.0;
  return o;
}

// Planner output for one (instance, mode, approach); empty on PlanError.
struct Planned {
  std::optional<NetworkConfiguration> config;
  std::string error;
};

struct SmallCase {
  std::string name;
  Instance instance;
  std::map<std::pair<SurvivabilityMode, Approach>, Planned> plans;
};

std::vector<SmallCase>& small_cases() {
  static std::vector<SmallCase> cases = [] {
    std::vector<SmallCase> out;
    std::mt19937 rng(2024);
    for (int t = 0; t < 20; ++t) {
      const int n = 4 + t % 2;
      const double d = n == 4 ? 2 + (t % 3 == 0) : 2 + (t % 3);
      const int k = 1 + t % 3;
      SmallCase c{"r" + std::to_string(t) + "(n" + std::to_string(n) + ",k" + std::to_string(k) + ")",
                  random_instance(n, d, 100 + t, k, rng), {}};
      for (auto mode : kModes) {
        for (auto ap : kApproaches) {
          Planned p;
          try {
            p.config = plan(c.instance, mode, ap, exact());
          } catch (const PlanError& e) {
            p.error = e.what();
          }
          c.plans[{mode, ap}] = std::move(p);
        }
      }
      out.push_back(std::move(c));
    }
    return out;
  }();
  return cases;
}

std::string label(const std::string& name, SurvivabilityMode m, Approach a) {
  return name + " " + to_string(m) + "/" + to_string(a);
}

// Reference resource counts priced with CR1 at 10 Gbps.
Outcome cost_identities() {
  Outcome o;
  const UnitCosts cr1 = derive_unit_costs(CostRatios::cr1(), Bandwidth::from_gbps(10));
  struct Row {
    int lps, wl;
    double transit, total, optical, tolerance;
  };
  const Row rows[] = {
      {143, 329, 262.5, 3628, 987, 0}, {160, 334, 100, 3802, 1002, 0}, {148, 297, 97.5, 3485, 891, 0},
      {148, 267, 97.5, 3395, 801, 0},  {208, 596, 107.5, 5410, 1788, 0}, {226, 505, 52.5, 5399, 1515, 0},
      {216, 490, 52.5, 5184, 1470, 0}, {216, 480, 52.5, 5154, 1440, 0},  {56, 140, 124, 1471, 420, 0},
      {82, 172, 94, 1985, 516, 0},     {66, 138, 92, 1626, 414, 0.012}, {66, 108, 92, 1537, 324, 0.012}};
  int checked = 0;
  for (const Row& r : rows) {
    const CostBreakdown c = total_cost(r.lps, r.wl, r.transit, cr1);
    // Printed totals carry no decimals.
    const bool total_ok = r.tolerance == 0 ? std::round(c.total) == r.total
                                           : std::fabs(c.total - r.total) <= r.tolerance * r.total;
    if (!total_ok || std::round(c.optical()) != r.optical) {
      o.fail(std::to_string(r.lps) + "/" + std::to_string(r.wl) + ": got " + fmt("%.2f", c.total) + "/" +
             fmt("%.2f", c.optical()) + ", want " + fmt("%.0f", r.total) + "/" + fmt("%.0f", r.optical));
    }
    ++checked;
  }
  o.detail = std::to_string(checked) + " columns";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  int compared = 0, infeasible = 0;
  for (const auto& c : small_cases()) {
    for (auto mode : kModes) {
      for (auto ap : kApproaches) {
        const Planned& p = c.plans.at({mode, ap});
        std::optional<double> oracle;
        try {
          oracle = brute_force_optimum(c.instance, mode, ap).cost;
        } catch (const std::runtime_error&) {
        }
        ++compared;
        if (!p.config && !oracle) {
          ++infeasible;
          continue;
        }
        if (!p.config || !oracle) {
          o.fail(label(c.name, mode, ap) + ": " + (p.config ? "oracle infeasible" : p.error));
          continue;
        }
        const double got = total_cost(*p.config).total;
        if (std::fabs(got - *oracle) > 1e-6) {
          o.fail(label(c.name, mode, ap) + ": planner " + fmt("%.3f", got) + " oracle " + fmt("%.3f", *oracle));
        }
      }
    }
  }
  o.detail = std::to_string(small_cases().size()) + " instances x 5 modes x 2 approaches, " +
             std::to_string(compared) + " comparisons, " + std::to_string(infeasible) + " infeasible in both";
  return o;
}

void check_restorable(Outcome& o, const NetworkConfiguration& cfg, const std::string& what) {
  const auto rep = check_restorability(cfg, enumerate_failures(cfg));
  const auto viol = check_disjointness(cfg);
  if (rep.restorability() < 1.0 || rep.contention > 0 || !viol.empty()) {
    o.fail(what + ": restorability " + fmt("%.3f", rep.restorability()) + ", contention " +
           std::to_string(rep.contention) + ", violations " + std::to_string(viol.size()) +
           (viol.empty() ? "" : " (" + viol.front() + ")"));
  }
}

Outcome restorability() {
  Outcome o;
  int checked = 0;
  for (const auto& c : small_cases()) {
    for (const auto& [key, p] : c.plans) {
      if (key.first == SurvivabilityMode::kNone || !p.config) continue;
      check_restorable(o, *p.config, label(c.name, key.first, key.second));
      ++checked;
    }
  }
  std::mt19937 rng(1);
  const Instance six = random_instance(6, 4, 1, 10, rng);
  PlanOptions opt;
  opt.gap = 0.03;
  for (auto mode : kModes) {
    if (mode == SurvivabilityMode::kNone) continue;
    for (auto ap : kApproaches) {
      try {
        check_restorable(o, plan(six, mode, ap, opt), label("six", mode, ap));
      } catch (const PlanError& e) {
        o.fail(label("six", mode, ap) + ": " + e.what());
      }
      ++checked;
    }
  }
  o.detail = std::to_string(checked) + " protected configurations";
  return o;
}

Outcome ml_ordering() {
  Outcome o;
  int checked = 0;
  for (const auto& c : small_cases()) {
    for (auto ap : kApproaches) {
      const auto& dp = c.plans.at({SurvivabilityMode::kDoubleProtection, ap});
      const auto& su = c.plans.at({SurvivabilityMode::kSpareUnprotected, ap});
      const auto& brs = c.plans.at({SurvivabilityMode::kInterlayerBrs, ap});
      if (!dp.config || !su.config || !brs.config) continue;
      const double a = total_cost(*dp.config).total, b = total_cost(*su.config).total,
                   e = total_cost(*brs.config).total;
      ++checked;
      if (a < b - 1e-6 || b < e - 1e-6) {
        o.fail(c.name + " " + to_string(ap) + ": " + fmt("%.2f", a) + " " + fmt("%.2f", b) + " " + fmt("%.2f", e));
      }
    }
  }
  if (checked == 0) o.fail("no instance solved in all three modes");
  o.detail = std::to_string(checked) + " instance/approach triples";
  return o;
}

Outcome integrated_vs_sequential() {
  Outcome o;
  int compared = 0, fewer = 0, more = 0, mpls = 0;
  for (const auto& c : small_cases()) {
    for (auto mode : kModes) {
      const auto& s = c.plans.at({mode, Approach::kSequential});
      const auto& i = c.plans.at({mode, Approach::kIntegrated});
      if (!s.config || !i.config) continue;
      const CostBreakdown cs = total_cost(*s.config), ci = total_cost(*i.config);
      ++compared;
      fewer += ci.wavelengths < cs.wavelengths;
      if (ci.wavelengths > cs.wavelengths) {
        ++more;
        o.fail(c.name + " " + to_string(mode) + ": integrated " + std::to_string(ci.wavelengths) +
               " wavelengths, sequential " + std::to_string(cs.wavelengths) + " (cost " + fmt("%.1f", ci.total) +
               " vs " + fmt("%.1f", cs.total) + ")");
      }
      if (ci.lightpaths != cs.lightpaths || std::fabs(ci.transit_gbps - cs.transit_gbps) > 1e-9) {
        ++mpls;
        o.fail(c.name + " " + to_string(mode) + ": MPLS layer differs, lightpaths " +
               std::to_string(ci.lightpaths) + " vs " + std::to_string(cs.lightpaths) + ", transit " +
               fmt("%.1f", ci.transit_gbps) + " vs " + fmt("%.1f", cs.transit_gbps) + ", cost " +
               fmt("%.1f", ci.total) + " vs " + fmt("%.1f", cs.total));
      }
    }
  }
  if (compared < 10) o.fail("only " + std::to_string(compared) + " comparable pairs");
  const Instance tie = load_instance(kData + "/tie_ring6.json");
  const int ws = total_cost(plan(tie, SurvivabilityMode::kNone, Approach::kSequential, exact())).wavelengths;
  const int wi = total_cost(plan(tie, SurvivabilityMode::kNone, Approach::kIntegrated, exact())).wavelengths;
  if (wi >= ws) {
    o.fail("tie_ring6: integrated " + std::to_string(wi) + " wavelengths, sequential " + std::to_string(ws));
  }
  o.detail = std::to_string(compared) + " pairs, integrated uses fewer wavelengths on " + std::to_string(fewer) +
             " and more on " + std::to_string(more) + ", MPLS layer differs on " + std::to_string(mpls) +
             "; tie_ring6 " + std::to_string(ws) + " -> " + std::to_string(wi) + " wavelengths";
  return o;
}

Outcome connectivity_trend() {
  Outcome o;
  std::mt19937 rng(5);
  const Instance base = random_instance(8, 2, 3, 6, rng);
  std::string counts;
  for (auto mode : {SurvivabilityMode::kNone}) {
    int previous = -1;
    for (double d : {2.0, 4.0, 7.0}) {
      Instance inst = base;
      inst.topology = generate_topology(8, d, 3, 32);
      int w = -1;
      try {
        w = total_cost(plan(inst, mode, Approach::kSequential, exact())).wavelengths;
      } catch (const PlanError& e) {
        o.fail(to_string(mode) + " d=" + fmt("%.0f", d) + ": " + e.what());
      }
      counts += (counts.empty() ? "" : " ") + to_string(mode) + "@" + fmt("%.0f", d) + "=" + std::to_string(w);
      if (previous >= 0 && w > previous) o.fail(to_string(mode) + " wavelengths rise at d=" + fmt("%.0f", d));
      previous = w;
    }
  }
  o.detail = counts;
  return o;
}

LogicalPhaseInput working_input(const Instance& inst, bool joint) {
  LogicalPhaseInput in;
  in.instance = &inst;
  in.joint = joint;
  for (const auto& l : inst.lsps) in.lsps.push_back(l.id);
  in.residual_interfaces.assign(inst.topology.node_count(), inst.params.max_interfaces);
  in.residual_wavelengths.assign(inst.topology.link_count(), inst.params.wavelengths);
  return in;
}

Outcome size_estimates() {
  Outcome o;
  const auto seq = estimate_problem_size(12, 126, 2, 24, Approach::kSequential);
  const auto integ = estimate_problem_size(12, 126, 2, 24, Approach::kIntegrated);
  if (seq != 18144 || integ != 25056) {
    o.fail("estimates " + std::to_string(seq) + "/" + std::to_string(integ));
  }
  int fixtures = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kData)) {
    if (entry.path().extension() != ".json") continue;
    const Instance inst = load_instance(entry.path().string());
    const int n = inst.topology.node_count(), k = static_cast<int>(inst.lsps.size()),
              q = inst.params.max_parallel, e = inst.topology.link_count();
    for (auto ap : kApproaches) {
      const PhaseModel m = ap == Approach::kSequential ? build_logical_design(working_input(inst, false))
                                                       : build_integrated(working_input(inst, true));
      const double est = static_cast<double>(estimate_problem_size(n, k, q, e, ap));
      const double got = static_cast<double>(m.vars.routing_variable_count());
      if (got > 2 * est || 2 * got < est) {
        o.fail(entry.path().filename().string() + " " + to_string(ap) + ": " + fmt("%.0f", got) +
               " variables vs estimate " + fmt("%.0f", est));
      }
    }
    ++fixtures;
  }
  o.detail = std::to_string(seq) + "/" + std::to_string(integ) + ", " + std::to_string(fixtures) + " fixtures";
  return o;
}

// Exhaustive optimum of a pure binary model; nullopt when infeasible.
std::optional<double> enumerate(const milp::Model& m) {
  const int n = m.variable_count();
  std::optional<double> best;
  std::vector<double> x(n);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    for (int j = 0; j < n; ++j) x[j] = (bits >> j) & 1u;
    bool ok = true;
    for (const auto& c : m.constraints()) {
      double lhs = 0;
      for (const auto& t : c.terms) lhs += t.coef * x[t.var];
      ok = c.relation == milp::Relation::kLessEqual      ? lhs <= c.rhs + 1e-9
           : c.relation == milp::Relation::kGreaterEqual ? lhs >= c.rhs - 1e-9
                                                         : std::fabs(lhs - c.rhs) <= 1e-9;
      if (!ok) break;
    }
    if (!ok) continue;
    const double v = m.evaluate_objective(x);
    if (!best || v < *best) best = v;
  }
  return best;
}

Outcome solver_soundness() {
  Outcome o;
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> coef(-6, 6), rel(0, 5);
  int infeasible = 0, max_n = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t * 18 / 49;
    const int rows = 1 + t % 6;
    max_n = std::max(max_n, n);
    milp::Model m;
    for (int j = 0; j < n; ++j) m.add_binary("x" + std::to_string(j), coef(rng));
    for (int r = 0; r < rows; ++r) {
      std::vector<milp::Term> terms;
      double pos = 0, neg = 0;
      for (int j = 0; j < n; ++j) {
        const int a = coef(rng);
        if (a == 0) continue;
        terms.push_back({j, static_cast<double>(a)});
        (a > 0 ? pos : neg) += a;
      }
      const int kind = rel(rng);
      const auto relation = kind < 3 ? milp::Relation::kLessEqual
                            : kind < 5 ? milp::Relation::kGreaterEqual
                                       : milp::Relation::kEqual;
      std::uniform_int_distribution<int> rhs(static_cast<int>(neg), static_cast<int>(pos));
      m.add_constraint("c" + std::to_string(r), "random", terms, relation, rhs(rng));
    }
    const auto truth = enumerate(m);
    milp::MilpOptions opt;
    opt.gap = 0.0;
    const milp::Solution s = milp::solve_milp(m, opt);
    if (!truth) {
      ++infeasible;
      if (s.status != milp::SolveStatus::kInfeasible) o.fail("model " + std::to_string(t) + ": missed infeasibility");
      continue;
    }
    if (s.status != milp::SolveStatus::kOptimal || std::fabs(s.objective - *truth) > 1e-6) {
      o.fail("model " + std::to_string(t) + ": " + milp::to_string(s.status) + " " + fmt("%.3f", s.objective) +
             " vs " + fmt("%.3f", *truth));
    }
    if (s.has_incumbent() && !milp::check_solution(m, s.values, 1e-6).empty()) {
      o.fail("model " + std::to_string(t) + ": incumbent fails the re-check");
    }
  }
  o.detail = "50 models up to " + std::to_string(max_n) + " binaries, " + std::to_string(infeasible) + " infeasible";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cost identities", cost_identities},
      {"oracle equivalence", oracle_equivalence},
      {"restorability", restorability},
      {"multilayer cost ordering", ml_ordering},
      {"integrated vs sequential", integrated_vs_sequential},
      {"connectivity trend", connectivity_trend},
      {"problem-size estimates", size_estimates},
      {"solver soundness", solver_soundness},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s %d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", ++index, name.c_str(), o.detail.c_str(), secs);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
