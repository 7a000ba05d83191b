#include <dlfcn.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "interfaces/highs_c_api.h"
#include "tnep/milp/solve.hpp"

namespace tnep::milp {

namespace {

// Function-pointer view of the HiGHS C API.  By default it points at the
// statically linked copy; TNEP_SOLVER_LIB (or SolverConfig::solver_library)
// swaps in a shared library with the same ABI, which must be built with the
// default 32-bit HighsInt.
struct HighsApi {
  decltype(&Highs_create) create;
  decltype(&Highs_destroy) destroy;
  decltype(&Highs_version) version;
  decltype(&Highs_run) run;
  decltype(&Highs_passMip) pass_mip;
  decltype(&Highs_setBoolOptionValue) set_bool_option;
  decltype(&Highs_setIntOptionValue) set_int_option;
  decltype(&Highs_setDoubleOptionValue) set_double_option;
  decltype(&Highs_setStringOptionValue) set_string_option;
  decltype(&Highs_getModelStatus) get_model_status;
  decltype(&Highs_getObjectiveValue) get_objective_value;
  decltype(&Highs_getSolution) get_solution;
  decltype(&Highs_getIntInfoValue) get_int_info;
  decltype(&Highs_getInt64InfoValue) get_int64_info;
  decltype(&Highs_getDoubleInfoValue) get_double_info;
  decltype(&Highs_getRunTime) get_run_time;
};

HighsApi builtin_api() {
  return {&Highs_create,
          &Highs_destroy,
          &Highs_version,
          &Highs_run,
          &Highs_passMip,
          &Highs_setBoolOptionValue,
          &Highs_setIntOptionValue,
          &Highs_setDoubleOptionValue,
          &Highs_setStringOptionValue,
          &Highs_getModelStatus,
          &Highs_getObjectiveValue,
          &Highs_getSolution,
          &Highs_getIntInfoValue,
          &Highs_getInt64InfoValue,
          &Highs_getDoubleInfoValue,
          &Highs_getRunTime};
}

HighsApi load_api(const std::string& path) {
  void* handle = dlopen(path.c_str(), RTLD_NOW | RTLD_LOCAL);
  if (!handle) {
    const char* why = dlerror();
    throw SolverError("cannot load solver library '" + path +
                      "': " + (why ? why : "dlopen failed"));
  }
  auto sym = [&](const char* name) {
    void* p = dlsym(handle, name);
    if (!p)
      throw SolverError("solver library '" + path + "' lacks symbol " + name);
    return p;
  };
  HighsApi api;
  api.create = reinterpret_cast<decltype(api.create)>(sym("Highs_create"));
  api.destroy = reinterpret_cast<decltype(api.destroy)>(sym("Highs_destroy"));
  api.version = reinterpret_cast<decltype(api.version)>(sym("Highs_version"));
  api.run = reinterpret_cast<decltype(api.run)>(sym("Highs_run"));
  api.pass_mip = reinterpret_cast<decltype(api.pass_mip)>(sym("Highs_passMip"));
  api.set_bool_option =
      reinterpret_cast<decltype(api.set_bool_option)>(sym("Highs_setBoolOptionValue"));
  api.set_int_option =
      reinterpret_cast<decltype(api.set_int_option)>(sym("Highs_setIntOptionValue"));
  api.set_double_option =
      reinterpret_cast<decltype(api.set_double_option)>(sym("Highs_setDoubleOptionValue"));
  api.set_string_option =
      reinterpret_cast<decltype(api.set_string_option)>(sym("Highs_setStringOptionValue"));
  api.get_model_status =
      reinterpret_cast<decltype(api.get_model_status)>(sym("Highs_getModelStatus"));
  api.get_objective_value =
      reinterpret_cast<decltype(api.get_objective_value)>(sym("Highs_getObjectiveValue"));
  api.get_solution = reinterpret_cast<decltype(api.get_solution)>(sym("Highs_getSolution"));
  api.get_int_info =
      reinterpret_cast<decltype(api.get_int_info)>(sym("Highs_getIntInfoValue"));
  api.get_int64_info =
      reinterpret_cast<decltype(api.get_int64_info)>(sym("Highs_getInt64InfoValue"));
  api.get_double_info =
      reinterpret_cast<decltype(api.get_double_info)>(sym("Highs_getDoubleInfoValue"));
  api.get_run_time = reinterpret_cast<decltype(api.get_run_time)>(sym("Highs_getRunTime"));
  return api;
}

const HighsApi& resolve_api(const std::string& explicit_path) {
  std::string path = explicit_path;
  if (path.empty()) {
    if (const char* env = std::getenv("TNEP_SOLVER_LIB")) path = env;
  }
  static std::mutex mutex;
  static std::map<std::string, HighsApi> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(path);
  if (it == cache.end())
    it = cache.emplace(path, path.empty() ? builtin_api() : load_api(path)).first;
  return it->second;
}

const char* model_status_name(HighsInt s) {
  switch (s) {
    case kHighsModelStatusNotset: return "not set";
    case kHighsModelStatusLoadError: return "load error";
    case kHighsModelStatusModelError: return "model error";
    case kHighsModelStatusPresolveError: return "presolve error";
    case kHighsModelStatusSolveError: return "solve error";
    case kHighsModelStatusPostsolveError: return "postsolve error";
    case kHighsModelStatusModelEmpty: return "model empty";
    case kHighsModelStatusOptimal: return "optimal";
    case kHighsModelStatusInfeasible: return "infeasible";
    case kHighsModelStatusUnboundedOrInfeasible: return "unbounded or infeasible";
    case kHighsModelStatusUnbounded: return "unbounded";
    case kHighsModelStatusObjectiveBound: return "objective bound";
    case kHighsModelStatusObjectiveTarget: return "objective target";
    case kHighsModelStatusTimeLimit: return "time limit";
    case kHighsModelStatusIterationLimit: return "iteration limit";
    case kHighsModelStatusUnknown: return "unknown";
    default: return "unrecognised status";
  }
}

struct Instance {
  const HighsApi& api;
  void* h;
  Instance(const HighsApi& a) : api(a), h(a.create()) {
    if (!h) throw SolverError("could not create solver instance");
  }
  ~Instance() { api.destroy(h); }
  Instance(const Instance&) = delete;
  Instance& operator=(const Instance&) = delete;
};

// Column-wise copy of the constraint matrix plus row/column bound arrays.
struct PackedModel {
  std::vector<double> col_cost, col_lower, col_upper, row_lower, row_upper, a_value;
  std::vector<HighsInt> a_start, a_index, integrality;
  HighsInt num_col = 0, num_row = 0, num_nz = 0;
};

PackedModel pack(const ModelBuilder& model) {
  PackedModel p;
  p.num_col = static_cast<HighsInt>(model.num_vars());
  p.num_row = static_cast<HighsInt>(model.num_rows());

  p.col_cost = model.objective();
  p.col_lower.reserve(p.num_col);
  p.col_upper.reserve(p.num_col);
  p.integrality.reserve(p.num_col);
  for (const Variable& v : model.vars()) {
    p.col_lower.push_back(v.lower);
    p.col_upper.push_back(v.upper);
    p.integrality.push_back(v.type == VarType::Continuous ? kHighsVarTypeContinuous
                                                          : kHighsVarTypeInteger);
  }

  p.row_lower.reserve(p.num_row);
  p.row_upper.reserve(p.num_row);
  std::vector<HighsInt> col_count(static_cast<std::size_t>(p.num_col), 0);
  for (const Constraint& c : model.rows()) {
    switch (c.sense) {
      case RowSense::Equal:
        p.row_lower.push_back(c.rhs);
        p.row_upper.push_back(c.rhs);
        break;
      case RowSense::GreaterEqual:
        p.row_lower.push_back(c.rhs);
        p.row_upper.push_back(kInfinity);
        break;
      case RowSense::LessEqual:
        p.row_lower.push_back(-kInfinity);
        p.row_upper.push_back(c.rhs);
        break;
    }
    for (const LinTerm& t : c.terms) ++col_count[static_cast<std::size_t>(t.var.index)];
    p.num_nz += static_cast<HighsInt>(c.terms.size());
  }

  p.a_start.assign(static_cast<std::size_t>(p.num_col) + 1, 0);
  for (HighsInt j = 0; j < p.num_col; ++j)
    p.a_start[static_cast<std::size_t>(j) + 1] =
        p.a_start[static_cast<std::size_t>(j)] + col_count[static_cast<std::size_t>(j)];
  p.a_index.resize(static_cast<std::size_t>(p.num_nz));
  p.a_value.resize(static_cast<std::size_t>(p.num_nz));
  std::vector<HighsInt> cursor(p.a_start.begin(), p.a_start.end() - 1);
  for (std::int32_t i = 0; i < model.num_rows(); ++i) {
    for (const LinTerm& t : model.rows()[static_cast<std::size_t>(i)].terms) {
      const auto j = static_cast<std::size_t>(t.var.index);
      const auto slot = static_cast<std::size_t>(cursor[j]++);
      p.a_index[slot] = static_cast<HighsInt>(i);
      p.a_value[slot] = t.coef;
    }
  }
  return p;
}

void apply_options(const HighsApi& api, void* h, const SolverConfig& cfg) {
  api.set_bool_option(h, "output_flag", cfg.log_to_console ? 1 : 0);
  api.set_int_option(h, "threads", cfg.threads);
  if (cfg.threads == 1) api.set_string_option(h, "parallel", "off");
  api.set_int_option(h, "random_seed", cfg.random_seed);
  if (std::isfinite(cfg.time_limit_seconds))
    api.set_double_option(h, "time_limit", cfg.time_limit_seconds);
  api.set_double_option(h, "mip_rel_gap", cfg.mip_rel_gap);
  api.set_double_option(h, "mip_abs_gap", cfg.mip_abs_gap);
  const double feas = std::max(cfg.feasibility_tolerance, 1e-10);
  api.set_double_option(h, "primal_feasibility_tolerance", feas);
  api.set_double_option(h, "dual_feasibility_tolerance", feas);
  api.set_double_option(h, "mip_feasibility_tolerance", feas);
}

void read_solution(const HighsApi& api, void* h, HighsInt num_col, SolveResult& out) {
  out.objective = api.get_objective_value(h);
  out.values.assign(static_cast<std::size_t>(num_col), 0.0);
  if (num_col > 0 &&
      api.get_solution(h, out.values.data(), nullptr, nullptr, nullptr) != kHighsStatusOk)
    throw SolverError("solver reported a solution but failed to return it");
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::LimitReached: return "limit reached";
  }
  return "?";
}

std::int64_t SolveResult::integral_value(VarId id) const {
  const double v = value(id);
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-4)
    throw SolverError("integer variable came back fractional: " + std::to_string(v));
  return static_cast<std::int64_t>(r);
}

std::string solver_version(const SolverConfig& config) {
  return resolve_api(config.solver_library).version();
}

SolveResult solve(const ModelBuilder& model, const SolverConfig& config) {
  const HighsApi& api = resolve_api(config.solver_library);
  PackedModel p = pack(model);

  Instance inst(api);
  apply_options(api, inst.h, config);

  const HighsInt sense = model.objective_sense() == ObjSense::Minimize
                             ? kHighsObjSenseMinimize
                             : kHighsObjSenseMaximize;
  if (api.pass_mip(inst.h, p.num_col, p.num_row, p.num_nz, kHighsMatrixFormatColwise,
                   sense, model.objective_offset(), p.col_cost.data(),
                   p.col_lower.data(), p.col_upper.data(), p.row_lower.data(),
                   p.row_upper.data(), p.a_start.data(), p.a_index.data(),
                   p.a_value.data(), p.integrality.data()) == kHighsStatusError)
    throw SolverError("solver rejected the model");

  if (api.run(inst.h) == kHighsStatusError)
    throw SolverError("solver run failed");
  HighsInt status = api.get_model_status(inst.h);

  if (status == kHighsModelStatusUnboundedOrInfeasible) {
    // Presolve can leave the two cases entangled; force a clean answer.
    api.set_string_option(inst.h, "presolve", "off");
    if (api.run(inst.h) == kHighsStatusError)
      throw SolverError("solver run failed while separating unbounded from infeasible");
    status = api.get_model_status(inst.h);
  }

  SolveResult out;
  out.stats.wall_seconds = api.get_run_time(inst.h);
  {
    HighsInt iters = 0;
    if (api.get_int_info(inst.h, "simplex_iteration_count", &iters) == kHighsStatusOk)
      out.stats.simplex_iterations = iters;
    std::int64_t nodes = 0;
    if (model.has_integrality() &&
        api.get_int64_info(inst.h, "mip_node_count", &nodes) == kHighsStatusOk)
      out.stats.branch_nodes = nodes;
    double gap = 0.0;
    if (model.has_integrality() &&
        api.get_double_info(inst.h, "mip_gap", &gap) == kHighsStatusOk &&
        std::isfinite(gap))
      out.stats.mip_gap = gap;
  }

  switch (status) {
    case kHighsModelStatusOptimal:
      out.status = SolveStatus::Optimal;
      read_solution(api, inst.h, p.num_col, out);
      break;
    case kHighsModelStatusModelEmpty:
      out.status = SolveStatus::Optimal;
      out.objective = model.objective_offset();
      out.values.assign(static_cast<std::size_t>(p.num_col), 0.0);
      break;
    case kHighsModelStatusInfeasible:
      out.status = SolveStatus::Infeasible;
      break;
    case kHighsModelStatusUnbounded:
      out.status = SolveStatus::Unbounded;
      break;
    case kHighsModelStatusObjectiveBound:
    case kHighsModelStatusObjectiveTarget:
    case kHighsModelStatusTimeLimit:
    case kHighsModelStatusIterationLimit: {
      out.status = SolveStatus::LimitReached;
      HighsInt have_primal = 0;
      if (api.get_int_info(inst.h, "primal_solution_status", &have_primal) ==
              kHighsStatusOk &&
          have_primal == 2)  // feasible incumbent
        read_solution(api, inst.h, p.num_col, out);
      break;
    }
    default:
      throw SolverError(std::string("solver failed: ") + model_status_name(status));
  }
  return out;
}

}  // namespace tnep::milp
