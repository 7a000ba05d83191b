#include <cmath>

#include "doctest.h"
#include "tnep/milp/model.hpp"
#include "tnep/milp/solve.hpp"
#include "tnep/milp/standard_form.hpp"

using namespace tnep;
using namespace tnep::milp;

TEST_SUITE("milp") {

TEST_CASE("minimize x subject to x >= 3") {
  ModelBuilder mb;
  VarId x = mb.add_continuous(0.0, kInfinity, "x");
  mb.add_constraint(RowSense::GreaterEqual, LinExpr(x, 1.0), 3.0);
  mb.set_objective(ObjSense::Minimize, LinExpr(x, 1.0));
  SolveResult r = solve(mb);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(r.value(x) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("binary knapsack picks the single best item") {
  ModelBuilder mb;
  VarId a = mb.add_binary("a");
  VarId b = mb.add_binary("b");
  mb.add_constraint(RowSense::LessEqual, LinExpr().add(a, 1.0).add(b, 1.0), 1.0);
  mb.set_objective(ObjSense::Maximize, LinExpr().add(a, 3.0).add(b, 2.0));
  SolveResult r = solve(mb);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == doctest::Approx(3.0));
  CHECK(r.integral_value(a) == 1);
  CHECK(r.integral_value(b) == 0);
}

TEST_CASE("infeasible model is a status, not an exception") {
  ModelBuilder mb;
  VarId x = mb.add_continuous(-kInfinity, kInfinity, "x");
  mb.add_constraint(RowSense::GreaterEqual, LinExpr(x, 1.0), 2.0);
  mb.add_constraint(RowSense::LessEqual, LinExpr(x, 1.0), 1.0);
  mb.set_objective(ObjSense::Minimize, LinExpr(x, 1.0));
  CHECK(solve(mb).status == SolveStatus::Infeasible);
}

TEST_CASE("unbounded model is a status, not an exception") {
  ModelBuilder mb;
  VarId x = mb.add_continuous(0.0, kInfinity, "x");
  mb.set_objective(ObjSense::Maximize, LinExpr(x, 1.0));
  CHECK(solve(mb).status == SolveStatus::Unbounded);
}

TEST_CASE("objective offset and duplicate terms are honoured") {
  ModelBuilder mb;
  VarId x = mb.add_continuous(0.0, 10.0, "x");
  LinExpr twice_x;
  twice_x.add(x, 1.0).add(x, 1.0);
  mb.add_constraint(RowSense::GreaterEqual, twice_x, 4.0);  // 2x >= 4
  mb.set_objective(ObjSense::Minimize, LinExpr(x, 5.0), 7.0);
  SolveResult r = solve(mb);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.value(x) == doctest::Approx(2.0));
  CHECK(r.objective == doctest::Approx(17.0));
}

TEST_CASE("integer variables and incremental objective growth") {
  ModelBuilder mb;
  VarId n = mb.add_integer(0.0, 9.0, "n");
  mb.add_constraint(RowSense::GreaterEqual, LinExpr(n, 3.0), 7.0);  // n >= 7/3
  mb.set_objective(ObjSense::Minimize, LinExpr(n, 1.0));
  VarId m = mb.add_integer(0.0, 9.0, "m");
  mb.add_constraint(RowSense::GreaterEqual, LinExpr().add(m, 1.0).add(n, 1.0), 5.0);
  mb.add_objective_terms(LinExpr(m, 10.0));
  SolveResult r = solve(mb);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.integral_value(n) == 5);
  CHECK(r.integral_value(m) == 0);
  CHECK(r.objective == doctest::Approx(5.0));
}

TEST_CASE("solving the same model twice gives identical answers") {
  ModelBuilder mb;
  VarId a = mb.add_binary("a");
  VarId b = mb.add_binary("b");
  VarId c = mb.add_continuous(0.0, 4.0, "c");
  mb.add_constraint(RowSense::LessEqual,
                    LinExpr().add(a, 2.0).add(b, 3.0).add(c, 1.0), 5.0);
  mb.set_objective(ObjSense::Maximize, LinExpr().add(a, 1.1).add(b, 1.7).add(c, 0.3));
  SolveResult r1 = solve(mb);
  SolveResult r2 = solve(mb);
  REQUIRE(r1.status == SolveStatus::Optimal);
  CHECK(r1.status == r2.status);
  CHECK(r1.objective == r2.objective);
  CHECK(r1.values == r2.values);
}

TEST_CASE("undeclared variables and crossing bounds are rejected") {
  ModelBuilder mb;
  mb.add_continuous(0.0, 1.0, "x");
  CHECK_THROWS_AS(mb.add_constraint(RowSense::Equal, LinExpr(VarId{5}, 1.0), 0.0),
                  ConfigError);
  CHECK_THROWS_AS(mb.add_continuous(2.0, 1.0, "bad"), ConfigError);
}

TEST_CASE("standard form splits constraints and bounds into E and F blocks") {
  ModelBuilder mb;
  VarId x = mb.add_continuous(0.0, 2.0, "x");
  VarId y = mb.add_continuous(-kInfinity, kInfinity, "y");
  mb.add_constraint(RowSense::Equal, LinExpr().add(x, 1.0).add(y, 1.0), 1.0);
  mb.add_constraint(RowSense::LessEqual, LinExpr(y, 2.0), 6.0);
  mb.set_objective(ObjSense::Minimize, LinExpr().add(x, 1.0).add(y, 3.0));
  StandardForm sf = extract_standard_form(mb);

  CHECK(sf.num_vars == 2);
  CHECK(sf.equalities.rows() == 1);
  CHECK(sf.equalities.rhs[0] == 1.0);
  // One converted <=, plus x's two bounds; y contributes none.
  REQUIRE(sf.inequalities.rows() == 3);
  CHECK(sf.inequalities.rhs[0] == -6.0);
  CHECK(sf.inequalities.coef[0] == -2.0);
  CHECK(sf.inequalities.origin[0] ==
        RowOrigin{RowOrigin::Kind::Constraint, 1});
  CHECK(sf.inequalities.origin[1] == RowOrigin{RowOrigin::Kind::LowerBound, 0});
  CHECK(sf.inequalities.origin[2] == RowOrigin{RowOrigin::Kind::UpperBound, 0});
  CHECK(sf.inequalities.rhs[1] == 0.0);
  CHECK(sf.inequalities.rhs[2] == -2.0);
  CHECK_FALSE(sf.sense_flipped);
}

TEST_CASE("standard form normalizes maximization by negation") {
  ModelBuilder mb;
  VarId x = mb.add_continuous(0.0, 5.0, "x");
  mb.set_objective(ObjSense::Maximize, LinExpr(x, 2.0), 1.0);
  StandardForm sf = extract_standard_form(mb);
  CHECK(sf.sense_flipped);
  CHECK(sf.objective[0] == -2.0);
  CHECK(sf.objective_offset == -1.0);
}

TEST_CASE("standard form refuses integral variables") {
  ModelBuilder mb;
  mb.add_binary("b");
  CHECK_THROWS_AS(extract_standard_form(mb), ConfigError);
}

TEST_CASE("relax_to_continuous drops integrality") {
  ModelBuilder mb;
  VarId b = mb.add_binary("b");
  mb.add_constraint(RowSense::LessEqual, LinExpr(b, 2.0), 1.0);  // b <= 0.5
  mb.set_objective(ObjSense::Maximize, LinExpr(b, 1.0));
  CHECK(solve(mb).objective == doctest::Approx(0.0));
  mb.relax_to_continuous(b);
  CHECK_FALSE(mb.has_integrality());
  CHECK(solve(mb).objective == doctest::Approx(0.5));
}

TEST_CASE("solver version is reported") {
  CHECK(solver_version().size() > 0);
}

}  // TEST_SUITE
