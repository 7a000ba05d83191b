#include "tnep/milp/standard_form.hpp"

#include <cmath>

namespace tnep::milp {

namespace {

void push_row(StandardFormBlock& block, const std::vector<LinTerm>& terms, double scale,
              double rhs, RowOrigin origin) {
  for (const LinTerm& t : terms) {
    block.col.push_back(t.var.index);
    block.coef.push_back(scale * t.coef);
  }
  block.row_start.push_back(static_cast<std::int32_t>(block.col.size()));
  block.rhs.push_back(rhs);
  block.origin.push_back(origin);
}

}  // namespace

StandardForm extract_standard_form(const ModelBuilder& model) {
  for (const Variable& v : model.vars())
    if (v.type != VarType::Continuous)
      throw ConfigError("standard form requires a pure LP; variable '" + v.name +
                        "' is integral");

  StandardForm sf;
  sf.num_vars = model.num_vars();
  sf.objective = model.objective();
  sf.objective_offset = model.objective_offset();
  if (model.objective_sense() == ObjSense::Maximize) {
    // Normalize to minimization; optimal values change sign, tracked by the
    // flag so callers can undo it.
    sf.sense_flipped = true;
    for (double& c : sf.objective) c = -c;
    sf.objective_offset = -sf.objective_offset;
  }
  sf.equalities.row_start.push_back(0);
  sf.inequalities.row_start.push_back(0);

  for (std::int32_t i = 0; i < model.num_rows(); ++i) {
    const Constraint& c = model.rows()[static_cast<std::size_t>(i)];
    const RowOrigin origin{RowOrigin::Kind::Constraint, i};
    switch (c.sense) {
      case RowSense::Equal:
        push_row(sf.equalities, c.terms, 1.0, c.rhs, origin);
        break;
      case RowSense::GreaterEqual:
        push_row(sf.inequalities, c.terms, 1.0, c.rhs, origin);
        break;
      case RowSense::LessEqual:
        push_row(sf.inequalities, c.terms, -1.0, -c.rhs, origin);
        break;
    }
  }

  for (std::int32_t j = 0; j < model.num_vars(); ++j) {
    const Variable& v = model.vars()[static_cast<std::size_t>(j)];
    const std::vector<LinTerm> self{{VarId{j}, 1.0}};
    if (std::isfinite(v.lower))
      push_row(sf.inequalities, self, 1.0, v.lower, {RowOrigin::Kind::LowerBound, j});
    if (std::isfinite(v.upper))
      push_row(sf.inequalities, self, -1.0, -v.upper, {RowOrigin::Kind::UpperBound, j});
  }
  return sf;
}

}  // namespace tnep::milp
