#include <algorithm>
#include <cmath>

#include "tnep/formulation.hpp"
#include "tnep/uncertainty.hpp"

namespace tnep {

using milp::LinExpr;
using milp::ModelBuilder;
using milp::RowSense;
using milp::VarId;

OperationalModelTemplate::OperationalModelTemplate(const PlanningCase& pc,
                                                   FormulationOptions opts)
    : pc_(&pc), opts_(opts) {
  validate(pc);
  days_ = static_cast<int>(pc.representative_days.size());
  hours_ = pc.hours_per_day();

  for (std::size_t s = 0; s < pc.storage_units.size(); ++s)
    if (pc.storage_units[s].status == StorageStatus::Existing)
      instances_.push_back({static_cast<int>(s), 0, false});
  for (std::size_t s = 0; s < pc.storage_units.size(); ++s)
    if (pc.storage_units[s].status == StorageStatus::Candidate)
      for (int c = 0; c < pc.storage_units[s].max_buildable; ++c)
        instances_.push_back({static_cast<int>(s), c, true});

  slot_offset_.reserve(pc.corridors.size());
  for (const Corridor& c : pc.corridors) {
    slot_offset_.push_back(total_line_slots_);
    total_line_slots_ += c.max_total_circuits - c.existing_circuits;
  }
}

int OperationalModelTemplate::line_slots(int corridor) const {
  const Corridor& c = pc_->corridors[static_cast<std::size_t>(corridor)];
  return c.max_total_circuits - c.existing_circuits;
}

double OperationalModelTemplate::big_m(int corridor) const {
  const Corridor& c = pc_->corridors[static_cast<std::size_t>(corridor)];
  return opts_.big_m_scale * 2.0 * pc_->max_angle_rad * pc_->base_mva / c.reactance_pu;
}

std::vector<StorageInstance> OperationalModelTemplate::built_instances(
    const ExpansionPlan& plan) const {
  std::vector<StorageInstance> out;
  for (const StorageInstance& inst : instances_) {
    if (!inst.candidate) {
      out.push_back(inst);
      continue;
    }
    const StorageUnit& unit = pc_->storage_units[static_cast<std::size_t>(inst.unit)];
    if (inst.copy < plan.storage_units(unit.id)) out.push_back(inst);
  }
  return out;
}

int OperationalModelTemplate::z_pattern_size(const ExpansionPlan& plan) const {
  // Relaxed mode keeps z inside the LP, so cuts carry no fixed pattern.
  if (opts_.relax_mode_binaries) return 0;
  return static_cast<int>(built_instances(plan).size()) * periods();
}

std::vector<double> OperationalModelTemplate::flatten(const DeviationVector& u) const {
  check_deviation_shape(*pc_, u);
  std::vector<double> out;
  out.reserve(u.demand.size() + u.conventional.size() + u.wind.size());
  for (auto b : u.demand) out.push_back(b);
  for (auto b : u.conventional) out.push_back(b);
  for (auto b : u.wind) out.push_back(b);
  return out;
}

int OperationalModelTemplate::u_size() const {
  return static_cast<int>(pc_->demands.size() + pc_->conventional_indices().size() +
                          pc_->wind_indices().size());
}

namespace {

struct Pending {
  int param = -1;
  double coef = 0.0;
  bool is_z = false;
};

}  // namespace

struct OperationalModelTemplate::EmitContext {
  milp::ModelBuilder& mb;
  const ExpansionPlan* plan = nullptr;            // fixed-plan modes
  const PlanVars* plan_vars = nullptr;            // master mode
  const std::vector<double>* u_values = nullptr;  // null: symbolic u (and z)
  bool z_variable = true;
  std::vector<RhsDependency>* u_deps = nullptr;
  std::vector<RhsDependency>* z_deps = nullptr;
};

OperationalVars OperationalModelTemplate::emit(EmitContext& ctx) const {
  const PlanningCase& pc = *pc_;
  const int D = days_;
  const int H = hours_;
  const int num_buses = static_cast<int>(pc.buses.size());
  const bool master = ctx.plan_vars != nullptr;
  const bool symbolic = ctx.u_values == nullptr;
  ModelBuilder& mb = ctx.mb;

  OperationalVars vars;
  vars.active_instances = master ? instances_ : built_instances(*ctx.plan);
  const int num_inst = static_cast<int>(vars.active_instances.size());

  // Line slots present in this block: every slot for the master, the built
  // prefix of each corridor otherwise (slots are interchangeable, and the
  // master's ordering rows pick the prefix form too).
  std::vector<int> slot_corridor;  // corridor index per active slot
  for (std::size_t l = 0; l < pc.corridors.size(); ++l) {
    const int total = line_slots(static_cast<int>(l));
    const int active = master
                           ? total
                           : std::min(total, ctx.plan->circuits(pc.corridors[l].key()));
    for (int k = 0; k < active; ++k) {
      vars.active_line_slots.push_back(slot_offset_[l] + k);
      slot_corridor.push_back(static_cast<int>(l));
    }
  }
  const int num_slots = static_cast<int>(vars.active_line_slots.size());

  auto add_row = [&](RowSense sense, const LinExpr& expr, double rhs_const,
                     const std::vector<Pending>& deps) {
    double rhs = rhs_const;
    if (!symbolic)
      for (const Pending& p : deps) {
        // Only u enters fixed-mode right-hand sides; z is a variable there.
        rhs += p.coef * (*ctx.u_values)[static_cast<std::size_t>(p.param)];
      }
    milp::RowId row = mb.add_constraint(sense, expr, rhs);
    if (symbolic)
      for (const Pending& p : deps) {
        if (p.coef == 0.0) continue;
        (p.is_z ? *ctx.z_deps : *ctx.u_deps).push_back({row.index, p.param, p.coef});
      }
    return row;
  };

  int num_existing_instances = 0;
  for (const StorageInstance& inst : instances_)
    if (!inst.candidate) ++num_existing_instances;
  // Position of instance i in the master's storage_build array; only valid
  // for candidates, which sit after the existing block.
  auto build_var_of = [&](int i) {
    return ctx.plan_vars->storage_build[static_cast<std::size_t>(i - num_existing_instances)];
  };

  // Flat u parameter indices: demands, then conventional, then wind.
  const std::vector<int> conv = pc.conventional_indices();
  const std::vector<int> wind = pc.wind_indices();
  const int u_conv_base = static_cast<int>(pc.demands.size());
  const int u_wind_base = u_conv_base + static_cast<int>(conv.size());
  std::vector<int> u_param_of_gen(pc.generators.size(), -1);
  for (std::size_t i = 0; i < conv.size(); ++i)
    u_param_of_gen[static_cast<std::size_t>(conv[i])] = u_conv_base + static_cast<int>(i);
  for (std::size_t i = 0; i < wind.size(); ++i)
    u_param_of_gen[static_cast<std::size_t>(wind[i])] = u_wind_base + static_cast<int>(i);

  const int P = D * H;

  // Variables.
  vars.gen_p.resize(pc.generators.size() * static_cast<std::size_t>(P));
  for (std::size_t g = 0; g < pc.generators.size(); ++g)
    for (int p = 0; p < P; ++p)
      vars.gen_p[g * static_cast<std::size_t>(P) + static_cast<std::size_t>(p)] =
          mb.add_continuous(0.0, milp::kInfinity);

  vars.shed.resize(pc.demands.size() * static_cast<std::size_t>(P));
  for (std::size_t j = 0; j < pc.demands.size(); ++j)
    for (int p = 0; p < P; ++p)
      vars.shed[j * static_cast<std::size_t>(P) + static_cast<std::size_t>(p)] =
          mb.add_continuous(0.0, milp::kInfinity);

  const int ref_pos = pc.bus_position(pc.reference_bus());
  vars.angle.resize(static_cast<std::size_t>(num_buses) * static_cast<std::size_t>(P));
  for (int n = 0; n < num_buses; ++n)
    for (int p = 0; p < P; ++p)
      vars.angle[static_cast<std::size_t>(idx(n, 0, 0) + p)] =
          n == ref_pos ? mb.add_continuous(0.0, 0.0)
                       : mb.add_continuous(-pc.max_angle_rad, pc.max_angle_rad);

  std::vector<int> existing_corridors;
  for (std::size_t l = 0; l < pc.corridors.size(); ++l)
    if (pc.corridors[l].existing_circuits > 0) existing_corridors.push_back(static_cast<int>(l));
  vars.flow_existing.resize(existing_corridors.size() * static_cast<std::size_t>(P));
  for (std::size_t e = 0; e < existing_corridors.size(); ++e) {
    const Corridor& c = pc.corridors[static_cast<std::size_t>(existing_corridors[e])];
    const double cap = c.existing_circuits * c.capacity_mw;
    for (int p = 0; p < P; ++p)
      vars.flow_existing[e * static_cast<std::size_t>(P) + static_cast<std::size_t>(p)] =
          mb.add_continuous(-cap, cap);
  }

  vars.flow_candidate.resize(static_cast<std::size_t>(num_slots) * static_cast<std::size_t>(P));
  for (int s = 0; s < num_slots; ++s)
    for (int p = 0; p < P; ++p)
      vars.flow_candidate[static_cast<std::size_t>(idx(s, 0, 0) + p)] =
          mb.add_continuous(-milp::kInfinity, milp::kInfinity);

  const std::size_t storage_span =
      static_cast<std::size_t>(num_inst) * static_cast<std::size_t>(P);
  vars.charge.resize(storage_span);
  vars.discharge.resize(storage_span);
  vars.energy.resize(storage_span);
  if (ctx.z_variable) vars.mode.resize(storage_span);
  for (std::size_t i = 0; i < storage_span; ++i) {
    vars.charge[i] = mb.add_continuous(0.0, milp::kInfinity);
    vars.discharge[i] = mb.add_continuous(0.0, milp::kInfinity);
    vars.energy[i] = mb.add_continuous(0.0, milp::kInfinity);
    if (ctx.z_variable)
      vars.mode[i] = opts_.relax_mode_binaries ? mb.add_continuous(0.0, 1.0)
                                               : mb.add_binary();
  }

  // Bus incidence.
  std::vector<std::vector<int>> gens_at(static_cast<std::size_t>(num_buses));
  std::vector<std::vector<int>> demands_at(static_cast<std::size_t>(num_buses));
  std::vector<std::vector<int>> storage_at(static_cast<std::size_t>(num_buses));
  for (std::size_t g = 0; g < pc.generators.size(); ++g)
    gens_at[static_cast<std::size_t>(pc.bus_position(pc.generators[g].bus))].push_back(
        static_cast<int>(g));
  for (std::size_t j = 0; j < pc.demands.size(); ++j)
    demands_at[static_cast<std::size_t>(pc.bus_position(pc.demands[j].bus))].push_back(
        static_cast<int>(j));
  for (int i = 0; i < num_inst; ++i) {
    const StorageUnit& su =
        pc.storage_units[static_cast<std::size_t>(vars.active_instances[static_cast<std::size_t>(i)].unit)];
    storage_at[static_cast<std::size_t>(pc.bus_position(su.bus))].push_back(i);
  }

  for (int d = 0; d < D; ++d) {
    const RepresentativeDay& day = pc.representative_days[static_cast<std::size_t>(d)];
    const double w = day.weight_days;
    for (int t = 0; t < H; ++t) {
      // (b) generator capacity, deviations shrinking flagged units.
      for (std::size_t g = 0; g < pc.generators.size(); ++g) {
        const Generator& gen = pc.generators[g];
        const double cf = gen.technology == Technology::Wind
                              ? day.wind_capacity_factor.at(*gen.hourly_profile_ref)
                                    [static_cast<std::size_t>(t)]
                              : 1.0;
        const double dev = gen.technology == Technology::Wind
                               ? pc.uncertainty.wind_deviation
                               : pc.uncertainty.conventional_deviation;
        const double cap = gen.nominal_capacity_mw * cf;
        const VarId p = vars.gen_p[g * static_cast<std::size_t>(P) +
                                   static_cast<std::size_t>(d * H + t)];
        add_row(RowSense::LessEqual, LinExpr(p, 1.0), cap,
                {{u_param_of_gen[g], -cap * dev, false}});
        vars.operating_cost.add(p, w * gen.operating_cost_per_mwh / 1000.0);
      }

      // (e) shedding capped by the realized demand level.
      for (std::size_t j = 0; j < pc.demands.size(); ++j) {
        const Demand& dem = pc.demands[j];
        const double level =
            dem.nominal_level_mw *
            day.demand_factor.at(*dem.hourly_profile_ref)[static_cast<std::size_t>(t)];
        const VarId sh = vars.shed[j * static_cast<std::size_t>(P) +
                                   static_cast<std::size_t>(d * H + t)];
        add_row(RowSense::LessEqual, LinExpr(sh, 1.0), level,
                {{static_cast<int>(j), level * pc.uncertainty.demand_deviation, false}});
        vars.operating_cost.add(sh, w * dem.shed_cost_per_mwh / 1000.0);
      }

      // (c) flow through existing circuits, aggregated per corridor.
      for (std::size_t e = 0; e < existing_corridors.size(); ++e) {
        const int l = existing_corridors[e];
        const Corridor& c = pc.corridors[static_cast<std::size_t>(l)];
        const double b = c.existing_circuits * pc.base_mva / c.reactance_pu;
        LinExpr expr(vars.flow_existing[e * static_cast<std::size_t>(P) +
                                        static_cast<std::size_t>(d * H + t)],
                     1.0);
        expr.add(vars.angle[static_cast<std::size_t>(idx(pc.bus_position(c.from_bus), d, t))], -b);
        expr.add(vars.angle[static_cast<std::size_t>(idx(pc.bus_position(c.to_bus), d, t))], b);
        add_row(RowSense::Equal, expr, 0.0, {});
      }

      // (c) candidate circuits: flow law relaxed by M when unbuilt, rating
      // tied to the build decision.
      for (int s = 0; s < num_slots; ++s) {
        const int l = slot_corridor[static_cast<std::size_t>(s)];
        const Corridor& c = pc.corridors[static_cast<std::size_t>(l)];
        const double b = pc.base_mva / c.reactance_pu;
        const double m = big_m(l);
        const VarId f = vars.flow_candidate[static_cast<std::size_t>(idx(s, d, t))];
        const VarId th_f = vars.angle[static_cast<std::size_t>(idx(pc.bus_position(c.from_bus), d, t))];
        const VarId th_t = vars.angle[static_cast<std::size_t>(idx(pc.bus_position(c.to_bus), d, t))];
        LinExpr law_lo(f, 1.0), law_hi(f, 1.0), cap_lo(f, 1.0), cap_hi(f, 1.0);
        law_lo.add(th_f, -b).add(th_t, b);
        law_hi.add(th_f, -b).add(th_t, b);
        if (master) {
          const VarId x =
              ctx.plan_vars->line_build[static_cast<std::size_t>(vars.active_line_slots[static_cast<std::size_t>(s)])];
          law_lo.add(x, -m);
          law_hi.add(x, m);
          cap_lo.add(x, c.capacity_mw);
          cap_hi.add(x, -c.capacity_mw);
          add_row(RowSense::GreaterEqual, law_lo, -m, {});
          add_row(RowSense::LessEqual, law_hi, m, {});
          add_row(RowSense::GreaterEqual, cap_lo, 0.0, {});
          add_row(RowSense::LessEqual, cap_hi, 0.0, {});
        } else {
          // Built slot: the disjunction collapses to the exact flow law.
          add_row(RowSense::Equal, law_lo, 0.0, {});
          add_row(RowSense::GreaterEqual, cap_lo, -c.capacity_mw, {});
          add_row(RowSense::LessEqual, cap_hi, c.capacity_mw, {});
        }
      }

      // Storage operating rows.
      for (int i = 0; i < num_inst; ++i) {
        const StorageInstance inst = vars.active_instances[static_cast<std::size_t>(i)];
        const StorageUnit& su = pc.storage_units[static_cast<std::size_t>(inst.unit)];
        const std::size_t at = static_cast<std::size_t>(idx(i, d, t));
        const VarId pc_v = vars.charge[at];
        const VarId pd_v = vars.discharge[at];
        const VarId e_v = vars.energy[at];

        // (h) mode exclusivity: charging only when z=1, discharging only
        // when z=0.
        if (ctx.z_variable) {
          const VarId z = vars.mode[at];
          add_row(RowSense::LessEqual, LinExpr(pc_v, 1.0).add(z, -su.charge_cap_mw), 0.0, {});
          add_row(RowSense::LessEqual, LinExpr(pd_v, 1.0).add(z, su.discharge_cap_mw),
                  su.discharge_cap_mw, {});
        } else {
          const int zp = idx(i, d, t);
          add_row(RowSense::LessEqual, LinExpr(pc_v, 1.0), 0.0,
                  {{zp, su.charge_cap_mw, true}});
          add_row(RowSense::LessEqual, LinExpr(pd_v, 1.0), su.discharge_cap_mw,
                  {{zp, -su.discharge_cap_mw, true}});
        }

        // (h)/(g) candidate builds gate power and energy on the unit binary.
        if (inst.candidate && master) {
          const VarId x = build_var_of(i);
          add_row(RowSense::LessEqual, LinExpr(pc_v, 1.0).add(x, -su.charge_cap_mw), 0.0, {});
          add_row(RowSense::LessEqual, LinExpr(pd_v, 1.0).add(x, -su.discharge_cap_mw), 0.0,
                  {});
          add_row(RowSense::LessEqual, LinExpr(e_v, 1.0).add(x, -su.max_energy_mwh), 0.0, {});
          // An unbuilt unit has zero charge and discharge either way; pinning
          // its mode flag removes a symmetric branching dimension.
          if (ctx.z_variable)
            add_row(RowSense::LessEqual, LinExpr(vars.mode[at], 1.0).add(x, -1.0), 0.0, {});
        } else if (inst.candidate) {
          add_row(RowSense::LessEqual, LinExpr(pc_v, 1.0), su.charge_cap_mw, {});
          add_row(RowSense::LessEqual, LinExpr(pd_v, 1.0), su.discharge_cap_mw, {});
          add_row(RowSense::LessEqual, LinExpr(e_v, 1.0), su.max_energy_mwh, {});
        } else {
          add_row(RowSense::LessEqual, LinExpr(e_v, 1.0), su.max_energy_mwh, {});
        }

        // (f) energy balance; hour 0 starts from the initial level.
        LinExpr bal(e_v, 1.0);
        bal.add(pc_v, -su.charge_efficiency);
        bal.add(pd_v, 1.0 / su.discharge_efficiency);
        if (t > 0) {
          bal.add(vars.energy[static_cast<std::size_t>(idx(i, d, t - 1))], -1.0);
          add_row(RowSense::Equal, bal, 0.0, {});
        } else if (inst.candidate && master) {
          bal.add(build_var_of(i), -su.initial_energy_mwh);
          add_row(RowSense::Equal, bal, 0.0, {});
        } else {
          add_row(RowSense::Equal, bal, su.initial_energy_mwh, {});
        }

        // (f) cyclic terminal condition once per day.
        if (t == H - 1) {
          LinExpr term(e_v, 1.0);
          if (inst.candidate && master) {
            term.add(build_var_of(i), -su.initial_energy_mwh);
            add_row(RowSense::GreaterEqual, term, 0.0, {});
          } else {
            add_row(RowSense::GreaterEqual, term, su.initial_energy_mwh, {});
          }
        }
      }

      // (a) nodal balance.
      for (int n = 0; n < num_buses; ++n) {
        LinExpr expr;
        for (int g : gens_at[static_cast<std::size_t>(n)])
          expr.add(vars.gen_p[static_cast<std::size_t>(g) * static_cast<std::size_t>(P) +
                              static_cast<std::size_t>(d * H + t)],
                   1.0);
        for (int i : storage_at[static_cast<std::size_t>(n)]) {
          expr.add(vars.discharge[static_cast<std::size_t>(idx(i, d, t))], 1.0);
          expr.add(vars.charge[static_cast<std::size_t>(idx(i, d, t))], -1.0);
        }
        for (std::size_t e = 0; e < existing_corridors.size(); ++e) {
          const Corridor& c = pc.corridors[static_cast<std::size_t>(existing_corridors[e])];
          const VarId f = vars.flow_existing[e * static_cast<std::size_t>(P) +
                                             static_cast<std::size_t>(d * H + t)];
          if (pc.bus_position(c.to_bus) == n) expr.add(f, 1.0);
          if (pc.bus_position(c.from_bus) == n) expr.add(f, -1.0);
        }
        for (int s = 0; s < num_slots; ++s) {
          const Corridor& c = pc.corridors[static_cast<std::size_t>(slot_corridor[static_cast<std::size_t>(s)])];
          const VarId f = vars.flow_candidate[static_cast<std::size_t>(idx(s, d, t))];
          if (pc.bus_position(c.to_bus) == n) expr.add(f, 1.0);
          if (pc.bus_position(c.from_bus) == n) expr.add(f, -1.0);
        }
        double rhs = 0.0;
        std::vector<Pending> deps;
        for (int j : demands_at[static_cast<std::size_t>(n)]) {
          const Demand& dem = pc.demands[static_cast<std::size_t>(j)];
          const double level =
              dem.nominal_level_mw *
              day.demand_factor.at(*dem.hourly_profile_ref)[static_cast<std::size_t>(t)];
          rhs += level;
          deps.push_back({j, level * pc.uncertainty.demand_deviation, false});
          expr.add(vars.shed[static_cast<std::size_t>(j) * static_cast<std::size_t>(P) +
                             static_cast<std::size_t>(d * H + t)],
                   1.0);
        }
        add_row(RowSense::Equal, expr, rhs, deps);
      }
    }
  }
  return vars;
}

OperationalVars OperationalModelTemplate::instantiate_fixed(milp::ModelBuilder& mb,
                                                            const ExpansionPlan& plan,
                                                            const DeviationVector& u) const {
  const PlanCost cost = plan_capital_cost(plan, *pc_);
  if (!cost.within_budget)
    throw ValidationError("plan exceeds the investment budget");
  const std::vector<double> u_flat = flatten(u);
  EmitContext ctx{mb, &plan, nullptr, &u_flat, true, nullptr, nullptr};
  return emit(ctx);
}

OperationalVars OperationalModelTemplate::instantiate_master_block(
    milp::ModelBuilder& mb, const PlanVars& x, const DeviationVector& u) const {
  const std::vector<double> u_flat = flatten(u);
  EmitContext ctx{mb, nullptr, &x, &u_flat, true, nullptr, nullptr};
  return emit(ctx);
}

OperationalModelTemplate::SymbolicLp OperationalModelTemplate::instantiate_symbolic(
    const ExpansionPlan& plan) const {
  SymbolicLp lp;
  // With relaxed mode binaries the z columns stay in the LP (continuous in
  // [0,1]) and dualization is exact without fixing them, so no z pattern is
  // moved to the right-hand side.
  EmitContext ctx{lp.mb,   &plan,      nullptr, nullptr, opts_.relax_mode_binaries,
                  &lp.u_deps, &lp.z_deps};
  lp.vars = emit(ctx);
  lp.active_instances = lp.vars.active_instances;
  lp.z_size = opts_.relax_mode_binaries
                  ? 0
                  : static_cast<int>(lp.active_instances.size()) * periods();
  lp.u_size = u_size();
  lp.mb.set_objective(milp::ObjSense::Minimize, lp.vars.operating_cost);
  return lp;
}

milp::ModelBuilder OperationalModelTemplate::SymbolicLp::materialize(
    const std::vector<double>& u_flat, const std::vector<double>& z_values) const {
  if (static_cast<int>(u_flat.size()) != u_size)
    throw ConfigError("u vector has the wrong size for this template");
  if (static_cast<int>(z_values.size()) != z_size)
    throw ConfigError("z pattern has the wrong size for this plan");
  milp::ModelBuilder out = mb;
  for (const RhsDependency& dep : u_deps)
    out.set_rhs({dep.row}, out.rhs({dep.row}) +
                               dep.coef * u_flat[static_cast<std::size_t>(dep.param)]);
  for (const RhsDependency& dep : z_deps)
    out.set_rhs({dep.row}, out.rhs({dep.row}) +
                               dep.coef * z_values[static_cast<std::size_t>(dep.param)]);
  return out;
}

milp::VarId linearize_product(milp::ModelBuilder& mb, milp::VarId binary,
                              milp::VarId continuous, double lower, double upper,
                              const std::string& name) {
  if (!std::isfinite(lower) || !std::isfinite(upper))
    throw ConfigError("linearize_product needs finite bounds on the continuous variable");
  if (lower > upper) throw ConfigError("linearize_product bounds cross");
  const milp::VarId w = mb.add_continuous(std::min(lower, 0.0), std::max(upper, 0.0), name);
  mb.add_constraint(RowSense::LessEqual, LinExpr(w, 1.0).add(binary, -upper), 0.0);
  mb.add_constraint(RowSense::GreaterEqual, LinExpr(w, 1.0).add(binary, -lower), 0.0);
  mb.add_constraint(RowSense::LessEqual,
                    LinExpr(w, 1.0).add(continuous, -1.0).add(binary, -lower), -lower);
  mb.add_constraint(RowSense::GreaterEqual,
                    LinExpr(w, 1.0).add(continuous, -1.0).add(binary, -upper), -upper);
  return w;
}

double default_dual_bound(const PlanningCase& pc) {
  double max_shed = 0.0;
  double total_demand = 0.0;
  for (const Demand& d : pc.demands) {
    max_shed = std::max(max_shed, d.shed_cost_per_mwh);
    total_demand += d.nominal_level_mw * (1.0 + pc.uncertainty.demand_deviation);
  }
  const double bound = (max_shed / 1000.0) * total_demand * 365.0;
  return bound > 0.0 ? bound : 1.0;
}

OperationalSolve solve_operational(const OperationalModelTemplate& tmpl,
                                   const ExpansionPlan& plan, const DeviationVector& u,
                                   const milp::SolverConfig& config) {
  milp::ModelBuilder mb;
  OperationalVars vars = tmpl.instantiate_fixed(mb, plan, u);
  mb.set_objective(milp::ObjSense::Minimize, vars.operating_cost);
  milp::SolveResult r = milp::solve(mb, config);
  if (r.status != milp::SolveStatus::Optimal)
    throw SolverError(std::string("operational model did not solve to optimality: ") +
                      milp::to_string(r.status));
  OperationalSolve out;
  out.cost = r.objective;
  out.z_pattern.reserve(vars.mode.size());
  for (milp::VarId z : vars.mode) out.z_pattern.push_back(r.value(z));
  out.raw = std::move(r);
  out.vars = std::move(vars);
  return out;
}

}  // namespace tnep
