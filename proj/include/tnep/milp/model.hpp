#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tnep/errors.hpp"

namespace tnep::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarType { Continuous, Binary, Integer };
enum class ObjSense { Minimize, Maximize };
enum class RowSense { Equal, GreaterEqual, LessEqual };

struct VarId {
  std::int32_t index = -1;
  bool valid() const { return index >= 0; }
  friend bool operator==(VarId, VarId) = default;
};

struct RowId {
  std::int32_t index = -1;
  bool valid() const { return index >= 0; }
  friend bool operator==(RowId, RowId) = default;
};

struct LinTerm {
  VarId var;
  double coef = 0.0;
};

// Sparse linear expression.  Repeated variables are allowed; they are
// aggregated when the expression is attached to a model.
class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(VarId v, double c) { add(v, c); }

  LinExpr& add(VarId v, double c) {
    if (c != 0.0) terms_.push_back({v, c});
    return *this;
  }
  LinExpr& add(const LinExpr& other, double scale = 1.0) {
    for (const auto& t : other.terms_) add(t.var, scale * t.coef);
    return *this;
  }

  const std::vector<LinTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  std::vector<LinTerm> terms_;
};

struct Variable {
  VarType type = VarType::Continuous;
  double lower = -kInfinity;
  double upper = kInfinity;
  std::string name;
};

struct Constraint {
  RowSense sense = RowSense::Equal;
  std::vector<LinTerm> terms;  // sorted by variable index, aggregated
  double rhs = 0.0;
  std::string name;
};

// Solver-independent MILP container.  Rows and columns can be appended at any
// time, which is what the column-and-constraint loops rely on; nothing is
// handed to a solver until solve() is called on the finished snapshot.
class ModelBuilder {
 public:
  VarId add_continuous(double lower, double upper, std::string name = {});
  VarId add_binary(std::string name = {});
  VarId add_integer(double lower, double upper, std::string name = {});

  RowId add_constraint(RowSense sense, const LinExpr& lhs, double rhs,
                       std::string name = {});

  // Replaces the objective.
  void set_objective(ObjSense sense, const LinExpr& expr, double offset = 0.0);
  // Adds onto the current objective, keeping the current sense.
  void add_objective_terms(const LinExpr& expr);
  void add_objective_offset(double delta) { obj_offset_ += delta; }

  std::int32_t num_vars() const { return static_cast<std::int32_t>(vars_.size()); }
  std::int32_t num_rows() const { return static_cast<std::int32_t>(rows_.size()); }
  const Variable& var(VarId id) const { return vars_.at(check(id)); }
  const Constraint& row(RowId id) const { return rows_.at(check(id)); }
  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Constraint>& rows() const { return rows_; }

  ObjSense objective_sense() const { return obj_sense_; }
  double objective_offset() const { return obj_offset_; }
  // Dense objective vector, one entry per variable.
  const std::vector<double>& objective() const;

  bool has_integrality() const { return num_integral_ > 0; }

  // Loosens a variable's bounds / drops integrality; used by relaxations.
  void relax_to_continuous(VarId id);
  void set_bounds(VarId id, double lower, double upper);

  // RHS editing, used to materialize parametric right-hand sides.
  double rhs(RowId id) const { return rows_.at(check(id)).rhs; }
  void set_rhs(RowId id, double value);

 private:
  std::size_t check(VarId id) const;
  std::size_t check(RowId id) const;

  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  ObjSense obj_sense_ = ObjSense::Minimize;
  mutable std::vector<double> obj_;  // resized lazily to num_vars()
  double obj_offset_ = 0.0;
  std::int32_t num_integral_ = 0;
};

}  // namespace tnep::milp
