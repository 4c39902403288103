#include "otnplan/planner.h"

#include <algorithm>

namespace otnplan {

namespace {

enum class Step {
  kWorkingLogical,
  kWorkingRouting,
  kProtectionLogical,
  kProtectionRouting,
  kOpticalProtection,
  kWorkingJoint,
  kProtectionJoint,
};

const char* step_name(Step s) {
  switch (s) {
    case Step::kWorkingLogical: return "working-logical";
    case Step::kWorkingRouting: return "working-routing";
    case Step::kProtectionLogical: return "protection-logical";
    case Step::kProtectionRouting: return "protection-routing";
    case Step::kOpticalProtection: return "optical-protection";
    case Step::kWorkingJoint: return "working-joint";
    case Step::kProtectionJoint: return "protection-joint";
  }
  return "?";
}

bool riding(const LogicalRoute& r, const LightpathKey& key) {
  for (const auto& h : r.hops)
    if (h.key() == key) return true;
  return false;
}

}  // namespace

struct Planner::State {
  Instance inst;
  SurvivabilityMode mode;
  Approach approach;
  PlanOptions opt;
  std::vector<Step> steps;
  std::size_t next = 0;
  NetworkConfiguration cfg;
  ExclusionSets sets;
  std::vector<LogicalPhaseInput::ForbiddenGrouping> forbidden;
  std::vector<LogicalPhaseInput::ForbiddenGrouping> forbidden_working;
  int retries = 0;

  bool built = false;
  bool logical = false;
  PhaseModel model;
  LogicalPhaseInput logical_in;
  RoutingPhaseInput routing_in;

  std::vector<int> interfaces_left() const {
    std::vector<int> left(inst.topology.node_count(), inst.params.max_interfaces);
    for (const auto& lp : cfg.lightpaths) {
      --left[lp.key.i];
      --left[lp.key.j];
    }
    return left;
  }

  // Free wavelengths per link. Under interlayer BRS optical protection
  // shares with protection-carrying lightpaths, so only w1 + s counts there.
  std::vector<int> wavelengths_left(bool optical_protection) const {
    const auto loads = link_loads(cfg);
    std::vector<int> left;
    for (const auto& l : loads) {
      int used = l.w1 + l.w2 + l.s;
      if (mode == SurvivabilityMode::kInterlayerBrs) used = l.w1 + (optical_protection ? l.s : l.w2 + l.s);
      left.push_back(inst.params.wavelengths - used);
    }
    return left;
  }

  void reset_protection() {
    std::erase_if(cfg.lightpaths, [](const Lightpath& lp) { return lp.status == LpStatus::kProtection; });
    cfg.protection.clear();
  }

  void sort_lightpaths() {
    std::stable_sort(cfg.lightpaths.begin(), cfg.lightpaths.end(), [](const auto& a, const auto& b) {
      if (a.status != b.status) return a.status == LpStatus::kWorking;
      return a.key < b.key;
    });
  }

  LogicalPhaseInput base_logical(LpStatus status, bool joint) {
    LogicalPhaseInput in;
    in.instance = &inst;
    in.status = status;
    in.joint = joint;
    in.residual_interfaces = interfaces_left();
    in.residual_wavelengths = wavelengths_left(false);
    if (status == LpStatus::kWorking) {
      for (const auto& l : inst.lsps) in.lsps.push_back(l.id);
      in.forbidden = forbidden_working;
    } else {
      sets = compute_exclusion_sets(cfg, mode);
      in.lsps = protected_lsps(cfg, mode);
      in.lsp_exclusions = sets.lsp;
      for (int id : in.lsps) in.working_routes[id] = cfg.working.at(id);
      if (joint) in.carried_exclusions = sets.carried;
      in.forbidden = forbidden;
    }
    return in;
  }

  void build_protection_routing() {
    const auto& topo = inst.topology;
    routing_in = RoutingPhaseInput{&topo, false, {}, wavelengths_left(false), inst.costs.wavelength};
    const std::vector<int> unlimited(topo.link_count(), 1);
    for (std::size_t idx = 0; idx < cfg.lightpaths.size(); ++idx) {
      const Lightpath& lp = cfg.lightpaths[idx];
      if (lp.status != LpStatus::kProtection) continue;
      Exclusion ex = pbeta_exclusion(sets, cfg, lp.key);
      if (shortest_fiber_path(topo, lp.key.i, lp.key.j, ex, unlimited).empty()) {
        LogicalPhaseInput::ForbiddenGrouping g{lp.key.i, lp.key.j, {}};
        for (const auto& [id, r] : cfg.protection)
          if (riding(r, lp.key)) g.lsps.push_back(id);
        ++retries;
        if (retries > opt.max_retries) {
          throw PlanError(step_name(Step::kProtectionRouting), retries - 1,
                          "exclusions disconnect protection-carrying lightpath " + to_string(lp.key));
        }
        forbidden.push_back(std::move(g));
        reset_protection();
        next = std::find(steps.begin(), steps.end(), Step::kProtectionLogical) - steps.begin();
        return;
      }
      routing_in.lightpaths.push_back({static_cast<int>(idx), lp.key, std::move(ex), std::nullopt});
    }
  }

  void build_optical_protection() {
    const auto& topo = inst.topology;
    routing_in = RoutingPhaseInput{&topo, true, {}, wavelengths_left(true), inst.costs.wavelength};
    const std::vector<int> unlimited(topo.link_count(), 1);
    for (std::size_t idx = 0; idx < cfg.lightpaths.size(); ++idx) {
      const Lightpath& lp = cfg.lightpaths[idx];
      if (lp.status == LpStatus::kProtection && mode != SurvivabilityMode::kDoubleProtection) continue;
      Exclusion ex = protection_lightpath_exclusion(cfg, lp);
      Exclusion check = ex;
      for (int e : lp.route.links(topo)) check.links.insert(e);
      if (shortest_fiber_path(topo, lp.key.i, lp.key.j, check, unlimited).empty()) {
        // If interface contention alone cuts the pLP off, split the mixed
        // riders and plan again from the working design.
        const std::vector<int> riders = mixed_riders(cfg, lp.key);
        Exclusion partial = protection_lightpath_exclusion(cfg, lp, false);
        for (int e : lp.route.links(topo)) partial.links.insert(e);
        if (!riders.empty() && retries < opt.max_retries &&
            !shortest_fiber_path(topo, lp.key.i, lp.key.j, partial, unlimited).empty()) {
          ++retries;
          forbidden_working.push_back({lp.key.i, lp.key.j, riders});
          forbidden.clear();
          cfg.lightpaths.clear();
          cfg.working.clear();
          cfg.protection.clear();
          next = 0;
          return;
        }
        // Otherwise keep only the mandatory transit-node exclusion and
        // leave contention to the verifier.
        ex.links.clear();
      }
      routing_in.lightpaths.push_back({static_cast<int>(idx), lp.key, std::move(ex), lp.route});
    }
  }

  void build() {
    model = PhaseModel{};
    const Step step = steps.at(next);
    switch (step) {
      case Step::kWorkingLogical:
      case Step::kWorkingJoint:
        logical = true;
        logical_in = base_logical(LpStatus::kWorking, step == Step::kWorkingJoint);
        model = build_logical_design(logical_in);
        break;
      case Step::kProtectionLogical:
      case Step::kProtectionJoint:
        logical = true;
        logical_in = base_logical(LpStatus::kProtection, step == Step::kProtectionJoint);
        if (!logical_in.lsps.empty()) model = build_logical_design(logical_in);
        break;
      case Step::kWorkingRouting: {
        logical = false;
        routing_in = RoutingPhaseInput{&inst.topology, false, {}, wavelengths_left(false),
                                       inst.costs.wavelength};
        for (std::size_t idx = 0; idx < cfg.lightpaths.size(); ++idx)
          routing_in.lightpaths.push_back({static_cast<int>(idx), cfg.lightpaths[idx].key, {}, std::nullopt});
        model = build_lightpath_routing(routing_in);
        break;
      }
      case Step::kProtectionRouting: {
        logical = false;
        const std::size_t before = next;
        build_protection_routing();
        if (next != before) {
          build();  // rewound to the protection logical phase
          return;
        }
        if (!routing_in.lightpaths.empty()) model = build_lightpath_routing(routing_in);
        break;
      }
      case Step::kOpticalProtection: {
        logical = false;
        const std::size_t before = next;
        build_optical_protection();
        if (next != before) {
          build();  // rewound to the working design
          return;
        }
        if (!routing_in.lightpaths.empty()) model = build_lightpath_routing(routing_in);
        break;
      }
    }
    built = true;
  }

  void accept(const std::vector<double>& values, PhaseReport report) {
    const Step step = steps.at(next);
    report.name = step_name(step);
    report.variables = model.model.variable_count();
    report.constraints = model.model.constraint_count();
    report.retries = retries;
    const bool empty = model.model.variable_count() == 0;
    if (logical) {
      LogicalDecode d;
      if (!empty) d = decode_logical(logical_in, model, values);
      const LpStatus status = logical_in.status;
      for (const auto& k : d.lightpaths) {
        Lightpath lp{k, status, {}, std::nullopt};
        if (auto it = d.lightpath_routes.find(k); it != d.lightpath_routes.end()) lp.route = it->second;
        cfg.lightpaths.push_back(std::move(lp));
      }
      sort_lightpaths();
      (status == LpStatus::kWorking ? cfg.working : cfg.protection) = std::move(d.routes);
    } else if (!empty) {
      const auto routes = decode_routing(routing_in, model, values);
      for (const auto& [label, path] : routes) {
        Lightpath& lp = cfg.lightpaths.at(label);
        if (routing_in.protection) lp.protection = path;
        else lp.route = path;
      }
    }
    cfg.phases.push_back(std::move(report));
    ++next;
    built = false;
  }
};

Planner::Planner(const Instance& instance, SurvivabilityMode mode, Approach approach, PlanOptions options)
    : state_(std::make_unique<State>()) {
  State& s = *state_;
  s.inst = instance;
  if (s.inst.params.max_interfaces <= 0) {
    s.inst.params.max_interfaces =
        SystemParams::default_interfaces(s.inst.topology.node_count(), s.inst.params.max_parallel);
  }
  s.mode = mode;
  s.approach = approach;
  s.opt = options;
  if (approach == Approach::kSequential) {
    s.steps = {Step::kWorkingLogical, Step::kWorkingRouting};
    if (mode != SurvivabilityMode::kNone) {
      s.steps.push_back(Step::kProtectionLogical);
      s.steps.push_back(Step::kProtectionRouting);
    }
  } else {
    s.steps = {Step::kWorkingJoint};
    if (mode != SurvivabilityMode::kNone) s.steps.push_back(Step::kProtectionJoint);
  }
  if (is_multilayer(mode)) s.steps.push_back(Step::kOpticalProtection);
  s.cfg.instance = s.inst;
  s.cfg.mode = mode;
  s.cfg.approach = approach;
}

Planner::~Planner() = default;
Planner::Planner(Planner&&) noexcept = default;
Planner& Planner::operator=(Planner&&) noexcept = default;

std::vector<std::string> Planner::phase_names() const {
  std::vector<std::string> out;
  for (Step s : state_->steps) out.push_back(step_name(s));
  return out;
}

bool Planner::done() const { return state_->next >= state_->steps.size(); }

std::string Planner::next_phase() const { return done() ? "" : step_name(state_->steps[state_->next]); }

const PhaseModel& Planner::build_next() {
  if (done()) throw std::logic_error("all phases are solved");
  state_->build();
  return state_->model;
}

std::vector<double> Planner::greedy_values() const {
  const State& s = *state_;
  if (!s.built || s.model.model.variable_count() == 0) return {};
  return s.logical ? greedy_logical(s.logical_in, s.model) : greedy_routing(s.routing_in, s.model);
}

void Planner::accept(const std::vector<double>& values, PhaseReport report) {
  if (!state_->built) throw std::logic_error("accept() without build_next()");
  state_->accept(values, std::move(report));
}

void Planner::solve_next() {
  State& s = *state_;
  const PhaseModel& phase = build_next();
  PhaseReport report;
  if (phase.model.variable_count() == 0) {
    report.status = milp::SolveStatus::kOptimal;
    s.accept({}, report);
    return;
  }
  milp::MilpOptions mo;
  mo.gap = s.opt.gap;
  mo.time_limit_seconds = s.opt.time_limit_seconds;
  mo.lexicographic_ties = s.opt.lexicographic_ties && s.opt.gap == 0.0;
  std::vector<double> seed;
  if (s.opt.greedy_seed) seed = greedy_values();
  mo.initial_incumbent = seed;
  milp::Solution sol = milp::solve_milp(phase.model, mo);
  if (!sol.has_incumbent()) {
    std::string detail = "no feasible solution (" + milp::to_string(sol.status) + ")";
    if (!s.logical && !s.routing_in.lightpaths.empty()) {
      detail += "; lightpaths:";
      for (const auto& r : s.routing_in.lightpaths) detail += " " + to_string(r.key);
    }
    throw PlanError(step_name(s.steps[s.next]), s.retries, detail);
  }
  report.status = sol.status;
  report.objective = sol.objective;
  report.best_bound = sol.best_bound;
  report.gap = sol.gap;
  report.stats = sol.stats;
  report.greedy_incumbent = !seed.empty() && sol.values == seed;
  s.accept(sol.values, report);
}

const NetworkConfiguration& Planner::configuration() const { return state_->cfg; }

NetworkConfiguration plan(const Instance& instance, SurvivabilityMode mode, Approach approach,
                          const PlanOptions& options) {
  Planner p(instance, mode, approach, options);
  while (!p.done()) p.solve_next();
  return p.configuration();
}

}  // namespace otnplan
