#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "otnplan/formulation.h"
#include "otnplan/planner.h"
#include "otnplan/verify.h"

namespace {

using namespace otnplan;

const std::string kData = OTNPLAN_BENCH_DATA_DIR;

PlanOptions exact() {
  PlanOptions o;
  o.gap = 0.0;
  return o;
}

// Multi-row 0/1 knapsack with n items.
milp::Model knapsack(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> w(1, 20), v(1, 30);
  milp::Model m;
  std::vector<milp::Term> a, b;
  for (int j = 0; j < n; ++j) {
    const int x = m.add_binary("x" + std::to_string(j), -v(rng));
    a.push_back({x, static_cast<double>(w(rng))});
    b.push_back({x, static_cast<double>(w(rng))});
  }
  m.add_constraint("a", "knapsack", a, milp::Relation::kLessEqual, 5.0 * n);
  m.add_constraint("b", "knapsack", b, milp::Relation::kLessEqual, 4.0 * n);
  return m;
}

void BM_SolveKnapsack(benchmark::State& state) {
  const milp::Model m = knapsack(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(milp::solve_milp(m));
}
BENCHMARK(BM_SolveKnapsack)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_SolveLpRelaxation(benchmark::State& state) {
  const milp::Model m = knapsack(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(milp::solve_lp(m));
}
BENCHMARK(BM_SolveLpRelaxation)->Arg(30)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_GenerateTopology(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_topology(12, 4, ++seed));
}
BENCHMARK(BM_GenerateTopology);

void BM_BuildLogicalDesignBundled(benchmark::State& state) {
  const Instance inst = load_instance(kData + "/nationwide12.json");
  LogicalPhaseInput in;
  in.instance = &inst;
  in.joint = state.range(0) != 0;
  for (const auto& l : inst.lsps) in.lsps.push_back(l.id);
  in.residual_interfaces.assign(inst.topology.node_count(), inst.params.max_interfaces);
  in.residual_wavelengths.assign(inst.topology.link_count(), inst.params.wavelengths);
  for (auto _ : state) benchmark::DoNotOptimize(in.joint ? build_integrated(in) : build_logical_design(in));
}
BENCHMARK(BM_BuildLogicalDesignBundled)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PlanRing(benchmark::State& state) {
  const Instance inst = load_instance(kData + "/ring4.json");
  const auto mode = static_cast<SurvivabilityMode>(state.range(0));
  const auto ap = static_cast<Approach>(state.range(1));
  state.SetLabel(to_string(mode) + "/" + to_string(ap));
  for (auto _ : state) benchmark::DoNotOptimize(plan(inst, mode, ap, exact()));
}
BENCHMARK(BM_PlanRing)
    ->ArgsProduct({{static_cast<int>(SurvivabilityMode::kNone), static_cast<int>(SurvivabilityMode::kSingleLayer),
                    static_cast<int>(SurvivabilityMode::kDoubleProtection),
                    static_cast<int>(SurvivabilityMode::kSpareUnprotected),
                    static_cast<int>(SurvivabilityMode::kInterlayerBrs)},
                   {static_cast<int>(Approach::kSequential), static_cast<int>(Approach::kIntegrated)}})
    ->Unit(benchmark::kMillisecond);

void BM_PlanTieRing(benchmark::State& state) {
  const Instance inst = load_instance(kData + "/tie_ring6.json");
  const auto ap = static_cast<Approach>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(plan(inst, SurvivabilityMode::kNone, ap, exact()));
}
BENCHMARK(BM_PlanTieRing)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CheckRestorability(benchmark::State& state) {
  const auto cfg = plan(load_instance(kData + "/ring4.json"), SurvivabilityMode::kInterlayerBrs,
                        Approach::kSequential, exact());
  const auto scenarios = enumerate_failures(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(check_restorability(cfg, scenarios));
}
BENCHMARK(BM_CheckRestorability)->Unit(benchmark::kMicrosecond);

void BM_OracleRing(benchmark::State& state) {
  const Instance inst = load_instance(kData + "/ring4.json");
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimum(inst, SurvivabilityMode::kSingleLayer));
}
BENCHMARK(BM_OracleRing)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
