#include "tnep/milp/model.hpp"

#include <algorithm>
#include <cmath>

namespace tnep::milp {

namespace {

void require_finite_or_inf(double v, const char* what) {
  if (std::isnan(v)) throw ConfigError(std::string(what) + " is NaN");
}

std::vector<LinTerm> aggregate(const LinExpr& expr, std::int32_t num_vars) {
  std::vector<LinTerm> terms = expr.terms();
  for (const auto& t : terms) {
    if (t.var.index < 0 || t.var.index >= num_vars)
      throw ConfigError("linear term references an undeclared variable");
    if (std::isnan(t.coef) || std::isinf(t.coef))
      throw ConfigError("linear term has a non-finite coefficient");
  }
  std::sort(terms.begin(), terms.end(),
            [](const LinTerm& a, const LinTerm& b) { return a.var.index < b.var.index; });
  std::vector<LinTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && out.back().var == t.var)
      out.back().coef += t.coef;
    else
      out.push_back(t);
  }
  std::erase_if(out, [](const LinTerm& t) { return t.coef == 0.0; });
  return out;
}

}  // namespace

VarId ModelBuilder::add_continuous(double lower, double upper, std::string name) {
  require_finite_or_inf(lower, "lower bound");
  require_finite_or_inf(upper, "upper bound");
  if (lower > upper) throw ConfigError("variable bounds cross: " + name);
  vars_.push_back({VarType::Continuous, lower, upper, std::move(name)});
  return {num_vars() - 1};
}

VarId ModelBuilder::add_binary(std::string name) {
  vars_.push_back({VarType::Binary, 0.0, 1.0, std::move(name)});
  ++num_integral_;
  return {num_vars() - 1};
}

VarId ModelBuilder::add_integer(double lower, double upper, std::string name) {
  require_finite_or_inf(lower, "lower bound");
  require_finite_or_inf(upper, "upper bound");
  if (lower > upper) throw ConfigError("variable bounds cross: " + name);
  vars_.push_back({VarType::Integer, lower, upper, std::move(name)});
  ++num_integral_;
  return {num_vars() - 1};
}

RowId ModelBuilder::add_constraint(RowSense sense, const LinExpr& lhs, double rhs,
                                   std::string name) {
  if (std::isnan(rhs) || std::isinf(rhs))
    throw ConfigError("constraint right-hand side is not finite: " + name);
  rows_.push_back({sense, aggregate(lhs, num_vars()), rhs, std::move(name)});
  return {num_rows() - 1};
}

void ModelBuilder::set_objective(ObjSense sense, const LinExpr& expr, double offset) {
  obj_sense_ = sense;
  obj_offset_ = offset;
  obj_.assign(vars_.size(), 0.0);
  for (const auto& t : aggregate(expr, num_vars()))
    obj_[static_cast<std::size_t>(t.var.index)] = t.coef;
}

void ModelBuilder::add_objective_terms(const LinExpr& expr) {
  obj_.resize(vars_.size(), 0.0);
  for (const auto& t : aggregate(expr, num_vars()))
    obj_[static_cast<std::size_t>(t.var.index)] += t.coef;
}

const std::vector<double>& ModelBuilder::objective() const {
  obj_.resize(vars_.size(), 0.0);
  return obj_;
}

void ModelBuilder::relax_to_continuous(VarId id) {
  Variable& v = vars_.at(check(id));
  if (v.type != VarType::Continuous) {
    v.type = VarType::Continuous;
    --num_integral_;
  }
}

void ModelBuilder::set_bounds(VarId id, double lower, double upper) {
  if (lower > upper) throw ConfigError("variable bounds cross");
  Variable& v = vars_.at(check(id));
  v.lower = lower;
  v.upper = upper;
}

void ModelBuilder::set_rhs(RowId id, double value) {
  if (std::isnan(value) || std::isinf(value))
    throw ConfigError("constraint right-hand side is not finite");
  rows_.at(check(id)).rhs = value;
}

std::size_t ModelBuilder::check(VarId id) const {
  if (id.index < 0 || id.index >= num_vars())
    throw ConfigError("variable id out of range");
  return static_cast<std::size_t>(id.index);
}

std::size_t ModelBuilder::check(RowId id) const {
  if (id.index < 0 || id.index >= num_rows())
    throw ConfigError("row id out of range");
  return static_cast<std::size_t>(id.index);
}

}  // namespace tnep::milp
