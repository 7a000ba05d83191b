#pragma once

#include <vector>

#include "tnep/milp/model.hpp"

namespace tnep::milp {

// Where a standard-form row came from: a model constraint, or a finite
// variable bound that was folded into the inequality block.
struct RowOrigin {
  enum class Kind { Constraint, LowerBound, UpperBound };
  Kind kind = Kind::Constraint;
  std::int32_t index = -1;  // constraint index, or variable index for bounds
  friend bool operator==(const RowOrigin&, const RowOrigin&) = default;
};

// One sparse block of   min cᵀy  s.t.  E y = r,  F y ≥ s.
struct StandardFormBlock {
  std::vector<std::int32_t> row_start;  // size rows()+1
  std::vector<std::int32_t> col;
  std::vector<double> coef;
  std::vector<double> rhs;
  std::vector<RowOrigin> origin;

  std::int32_t rows() const { return static_cast<std::int32_t>(rhs.size()); }
};

// An LP rewritten as  min cᵀy : E y = r, F y ≥ s  with free variables.
// Finite bounds become rows of F so that a dual multiplier exists for every
// restriction; `origin` records the mapping for anyone who needs to trace a
// dual value back to the source constraint or bound.
struct StandardForm {
  std::int32_t num_vars = 0;
  std::vector<double> objective;
  double objective_offset = 0.0;
  // True when the source model maximized: the stored objective is the
  // negated one, so the source optimum is minus this form's optimum.
  bool sense_flipped = false;
  StandardFormBlock equalities;
  StandardFormBlock inequalities;
};

// Fails with ConfigError if the model still contains integer variables.
StandardForm extract_standard_form(const ModelBuilder& model);

}  // namespace tnep::milp
