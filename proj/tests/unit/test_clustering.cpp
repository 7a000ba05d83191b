#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "tnep/ccg.hpp"
#include "tnep/clustering.hpp"
#include "tnep/oracle.hpp"

using namespace tnep;

namespace {

// Two well-separated regimes: high-demand/low-wind days and the mirror
// image, with a hair of intra-regime wobble so days are not identical.
HourlySeries two_regime_series(int days_per_regime, int hours = 24) {
  HourlySeries s;
  s.names = {"D", "W"};
  s.is_wind = {0, 1};
  s.hours_per_day = hours;
  for (int d = 0; d < 2 * days_per_regime; ++d) {
    const bool high_demand = d % 2 == 0;
    const double wobble = 0.001 * (d / 2 % 3);
    std::vector<double> day(static_cast<std::size_t>(2 * hours));
    for (int h = 0; h < hours; ++h) {
      day[static_cast<std::size_t>(h)] = (high_demand ? 0.9 : 0.3) + wobble;
      day[static_cast<std::size_t>(hours + h)] = (high_demand ? 0.1 : 0.8) - wobble;
    }
    s.days.push_back(std::move(day));
  }
  return s;
}

double weight_sum(const std::vector<RepresentativeDay>& days) {
  double sum = 0.0;
  for (const RepresentativeDay& d : days) sum += d.weight_days;
  return sum;
}

}  // namespace

TEST_SUITE("clustering") {

TEST_CASE("csv parsing checks header, hour order, and day completeness") {
  const std::vector<std::string> dem{"D"}, win{"W"};

  std::istringstream ok("day,hour,D,W\n0,0,0.5,0.2\n0,1,0.6,0.3\n1,0,0.7,0.4\n1,1,0.8,0.5\n");
  HourlySeries s = parse_hourly_csv(ok, dem, win);
  CHECK(s.num_days() == 2);
  CHECK(s.hours_per_day == 2);
  CHECK(s.value(1, 0, 1) == doctest::Approx(0.8));
  CHECK(s.value(0, 1, 0) == doctest::Approx(0.2));
  CHECK(s.is_wind == std::vector<std::uint8_t>{0, 1});

  std::istringstream missing_signal("day,hour,D\n0,0,0.5\n");
  CHECK_THROWS_AS(parse_hourly_csv(missing_signal, dem, win), ParseError);

  std::istringstream bad_hour("day,hour,D,W\n0,0,0.5,0.2\n0,2,0.6,0.3\n");
  CHECK_THROWS_AS(parse_hourly_csv(bad_hour, dem, win), ParseError);

  std::istringstream ragged("day,hour,D,W\n0,0,0.5,0.2\n0,1,0.6,0.3\n1,0,0.7,0.4\n");
  CHECK_THROWS_AS(parse_hourly_csv(ragged, dem, win), ParseError);

  std::istringstream not_a_number("day,hour,D,W\n0,0,five,0.2\n");
  CHECK_THROWS_AS(parse_hourly_csv(not_a_number, dem, win), ParseError);
}

TEST_CASE("k=1 returns the medoid of all days with weight 365") {
  HourlySeries s = two_regime_series(10);
  std::vector<RepresentativeDay> days = build_representative_days(s, 1, 7);
  REQUIRE(days.size() == 1);
  CHECK(days[0].weight_days == doctest::Approx(365.0));
  // The representative is an actual member, bit-equal to some input day.
  bool found = false;
  for (int d = 0; d < s.num_days() && !found; ++d) {
    bool same = true;
    for (int h = 0; h < s.hours_per_day && same; ++h)
      same = s.value(d, 0, h) == days[0].demand_factor.at("D")[static_cast<std::size_t>(h)] &&
             s.value(d, 1, h) == days[0].wind_capacity_factor.at("W")[static_cast<std::size_t>(h)];
    found = same;
  }
  CHECK(found);
}

TEST_CASE("identical days collapse to one representative at any k") {
  HourlySeries s;
  s.names = {"D"};
  s.is_wind = {0};
  s.hours_per_day = 4;
  for (int d = 0; d < 8; ++d) s.days.push_back({0.5, 0.6, 0.7, 0.8});
  for (int k : {1, 2, 3}) {
    std::vector<RepresentativeDay> days = build_representative_days(s, k, 11);
    CHECK(weight_sum(days) == doctest::Approx(365.0).epsilon(1e-9));
    for (const RepresentativeDay& rd : days)
      CHECK(rd.demand_factor.at("D") == std::vector<double>{0.5, 0.6, 0.7, 0.8});
  }
}

TEST_CASE("two regimes separated by many sigmas are recovered exactly at k=2") {
  HourlySeries s = two_regime_series(15);
  std::vector<RepresentativeDay> days = build_representative_days(s, 2, 3);
  REQUIRE(days.size() == 2);
  CHECK(weight_sum(days) == doctest::Approx(365.0).epsilon(1e-9));
  // One representative per regime, each weighted half the year.
  double d0 = days[0].demand_factor.at("D")[0];
  double d1 = days[1].demand_factor.at("D")[0];
  CHECK(std::abs(d0 - d1) > 0.5);
  CHECK(days[0].weight_days == doctest::Approx(182.5).epsilon(1e-9));
  CHECK(days[1].weight_days == doctest::Approx(182.5).epsilon(1e-9));
}

TEST_CASE("fixed seed reproduces the clustering bit for bit") {
  HourlySeries s = two_regime_series(12);
  std::vector<RepresentativeDay> a = build_representative_days(s, 3, 42);
  std::vector<RepresentativeDay> b = build_representative_days(s, 3, 42);
  CHECK(a == b);
}

TEST_CASE("weights sum to a year across k values") {
  HourlySeries s = two_regime_series(9);  // 18 days
  for (int k = 1; k <= 6; ++k) {
    std::vector<RepresentativeDay> days = build_representative_days(s, k, 5);
    CHECK(weight_sum(days) == doctest::Approx(365.0).epsilon(1e-9));
    for (const RepresentativeDay& rd : days) CHECK(rd.weight_days > 0.0);
  }
}

TEST_CASE("k beyond the day count is rejected") {
  HourlySeries s = two_regime_series(2);  // 4 days
  CHECK_THROWS_AS(build_representative_days(s, 5, 1), ConfigError);
  CHECK_THROWS_AS(build_representative_days(s, 0, 1), ConfigError);
}

TEST_CASE("sweep rows are identical however many jobs run them") {
  PlanningCase base = two_bus_toy();
  const Demand& d0 = base.demands[0];
  const std::string ref = d0.hourly_profile_ref ? *d0.hourly_profile_ref : d0.id;
  HourlySeries s;
  s.names = {ref};
  s.is_wind = {0};
  s.hours_per_day = base.hours_per_day();
  for (int day = 0; day < 6; ++day)
    s.days.push_back(day % 2 == 0 ? std::vector<double>{1.0, 0.9, 0.8, 1.0}
                                  : std::vector<double>{0.35, 0.3, 0.25, 0.4});

  const std::vector<int> ks = {1, 2, 3};
  std::vector<SweepRow> serial = stability_sweep(base, s, ks, 5, CcgConfig{}, 1);
  std::vector<SweepRow> parallel = stability_sweep(base, s, ks, 5, CcgConfig{}, 3);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CAPTURE(i);
    CHECK(serial[i].clusters_requested == parallel[i].clusters_requested);
    CHECK(serial[i].days_used == parallel[i].days_used);
    CHECK(serial[i].total_annual_cost == parallel[i].total_annual_cost);
    CHECK(serial[i].capital_cost == parallel[i].capital_cost);
    CHECK(serial[i].outer_iterations == parallel[i].outer_iterations);
    CHECK(serial[i].note == parallel[i].note);
  }

  CHECK_THROWS_AS(stability_sweep(base, s, ks, 5, CcgConfig{}, 0), ConfigError);
}

}  // TEST_SUITE
