#include "tnep/uncertainty.hpp"

#include <algorithm>
#include <bit>

namespace tnep {

namespace {

int flags_set(const std::vector<std::uint8_t>& v) {
  return static_cast<int>(std::count(v.begin(), v.end(), std::uint8_t{1}));
}

// All 0/1 vectors of the given length with at most `budget` ones, in
// lexicographic order.
std::vector<std::vector<std::uint8_t>> group_patterns(int length, int budget) {
  std::vector<std::vector<std::uint8_t>> out;
  if (length > 30) throw ConfigError("uncertainty group too large to enumerate");
  const std::uint32_t limit = 1u << length;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (std::popcount(mask) > budget) continue;
    std::vector<std::uint8_t> v(static_cast<std::size_t>(length), 0);
    for (int i = 0; i < length; ++i)
      if (mask & (1u << i)) v[static_cast<std::size_t>(i)] = 1;
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

unsigned long long group_count(int length, int budget) {
  // sum_{j=0..budget} C(length, j), saturating
  constexpr unsigned long long kCap = 1ull << 62;
  unsigned long long total = 0;
  unsigned long long binom = 1;  // C(length, 0)
  for (int j = 0; j <= std::min(budget, length); ++j) {
    if (j > 0) {
      if (binom > kCap / static_cast<unsigned long long>(length)) return kCap;
      binom = binom * static_cast<unsigned long long>(length - j + 1) /
              static_cast<unsigned long long>(j);
    }
    if (total > kCap - binom) return kCap;
    total += binom;
  }
  return total;
}

}  // namespace

void check_deviation_shape(const PlanningCase& pc, const DeviationVector& u) {
  if (u.demand.size() != pc.demands.size())
    throw ValidationError("deviation vector covers " + std::to_string(u.demand.size()) +
                          " demands, case has " + std::to_string(pc.demands.size()));
  if (u.conventional.size() != pc.conventional_indices().size())
    throw ValidationError("deviation vector's conventional group has the wrong size");
  if (u.wind.size() != pc.wind_indices().size())
    throw ValidationError("deviation vector's wind group has the wrong size");
  for (const auto& group : {u.demand, u.conventional, u.wind})
    for (auto b : group)
      if (b != 0 && b != 1) throw ValidationError("deviation flags must be 0 or 1");
}

RealizedParameters realize(const PlanningCase& pc, const DeviationVector& u) {
  check_deviation_shape(pc, u);
  const UncertaintySpec& spec = pc.uncertainty;
  if (flags_set(u.demand) > spec.budget_demand)
    throw ValidationError("deviation vector exceeds the demand budget");
  if (flags_set(u.conventional) > spec.budget_conventional)
    throw ValidationError("deviation vector exceeds the conventional budget");
  if (flags_set(u.wind) > spec.budget_wind)
    throw ValidationError("deviation vector exceeds the wind budget");

  RealizedParameters out;
  out.demand_level_mw.reserve(pc.demands.size());
  for (std::size_t j = 0; j < pc.demands.size(); ++j)
    out.demand_level_mw.push_back(pc.demands[j].nominal_level_mw *
                                  (1.0 + spec.demand_deviation * u.demand[j]));

  out.generator_capacity_mw.assign(pc.generators.size(), 0.0);
  std::size_t ci = 0, wi = 0;
  for (std::size_t g = 0; g < pc.generators.size(); ++g) {
    const Generator& gen = pc.generators[g];
    if (gen.technology == Technology::Conventional)
      out.generator_capacity_mw[g] =
          gen.nominal_capacity_mw * (1.0 - spec.conventional_deviation * u.conventional[ci++]);
    else
      out.generator_capacity_mw[g] =
          gen.nominal_capacity_mw * (1.0 - spec.wind_deviation * u.wind[wi++]);
  }
  return out;
}

unsigned long long vertex_count(const PlanningCase& pc) {
  constexpr unsigned long long kCap = 1ull << 62;
  const unsigned long long d =
      group_count(static_cast<int>(pc.demands.size()), pc.uncertainty.budget_demand);
  const unsigned long long c = group_count(static_cast<int>(pc.conventional_indices().size()),
                                           pc.uncertainty.budget_conventional);
  const unsigned long long w = group_count(static_cast<int>(pc.wind_indices().size()),
                                           pc.uncertainty.budget_wind);
  if (d != 0 && c > kCap / d) return kCap;
  const unsigned long long dc = d * c;
  if (dc != 0 && w > kCap / dc) return kCap;
  return dc * w;
}

std::vector<DeviationVector> enumerate_vertices(const PlanningCase& pc,
                                                std::size_t max_vertices) {
  const unsigned long long count = vertex_count(pc);
  if (count > max_vertices)
    throw ConfigError("uncertainty set has " + std::to_string(count) +
                      " vertices, above the cap of " + std::to_string(max_vertices));

  const auto demand_patterns = group_patterns(static_cast<int>(pc.demands.size()),
                                              pc.uncertainty.budget_demand);
  const auto conv_patterns = group_patterns(static_cast<int>(pc.conventional_indices().size()),
                                            pc.uncertainty.budget_conventional);
  const auto wind_patterns = group_patterns(static_cast<int>(pc.wind_indices().size()),
                                            pc.uncertainty.budget_wind);

  std::vector<DeviationVector> out;
  out.reserve(demand_patterns.size() * conv_patterns.size() * wind_patterns.size());
  for (const auto& d : demand_patterns)
    for (const auto& c : conv_patterns)
      for (const auto& w : wind_patterns) out.push_back({d, c, w});
  return out;
}

BudgetRows emit_budget_constraints(const PlanningCase& pc, milp::ModelBuilder& mb,
                                   const std::vector<milp::VarId>& demand_flags,
                                   const std::vector<milp::VarId>& conventional_flags,
                                   const std::vector<milp::VarId>& wind_flags) {
  if (demand_flags.size() != pc.demands.size() ||
      conventional_flags.size() != pc.conventional_indices().size() ||
      wind_flags.size() != pc.wind_indices().size())
    throw ValidationError("budget constraint variable groups do not match the case");

  auto cap = [&](const std::vector<milp::VarId>& vars, int budget, const char* name) {
    milp::LinExpr sum;
    for (milp::VarId v : vars) sum.add(v, 1.0);
    return mb.add_constraint(milp::RowSense::LessEqual, sum, budget, name);
  };
  return {cap(demand_flags, pc.uncertainty.budget_demand, "budget_demand"),
          cap(conventional_flags, pc.uncertainty.budget_conventional, "budget_conventional"),
          cap(wind_flags, pc.uncertainty.budget_wind, "budget_wind")};
}

}  // namespace tnep
