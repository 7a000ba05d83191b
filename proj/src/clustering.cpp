#include "tnep/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace tnep {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
      field.pop_back();
    std::size_t start = field.find_first_not_of(' ');
    out.push_back(start == std::string::npos ? "" : field.substr(start));
  }
  return out;
}

double parse_double(const std::string& s, int line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("hourly CSV line " + std::to_string(line_no) +
                     ": '" + s + "' is not a number");
  }
}

}  // namespace

HourlySeries parse_hourly_csv(std::istream& in, const std::vector<std::string>& demand_ids,
                              const std::vector<std::string>& wind_ids) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("hourly CSV is empty");
  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "day" || header[1] != "hour")
    throw ParseError("hourly CSV header must start with day,hour");

  HourlySeries series;
  std::vector<int> column_of;
  for (std::size_t c = 2; c < header.size(); ++c) {
    const std::string& name = header[c];
    const bool is_demand =
        std::find(demand_ids.begin(), demand_ids.end(), name) != demand_ids.end();
    const bool is_wind = std::find(wind_ids.begin(), wind_ids.end(), name) != wind_ids.end();
    if (!is_demand && !is_wind)
      throw ParseError("hourly CSV column '" + name + "' matches no demand or wind profile");
    series.names.push_back(name);
    series.is_wind.push_back(is_wind ? 1 : 0);
  }
  for (const std::string& id : demand_ids)
    if (std::find(series.names.begin(), series.names.end(), id) == series.names.end())
      throw ParseError("hourly CSV lacks a column for demand profile '" + id + "'");
  for (const std::string& id : wind_ids)
    if (std::find(series.names.begin(), series.names.end(), id) == series.names.end())
      throw ParseError("hourly CSV lacks a column for wind profile '" + id + "'");

  const int num_signals = series.num_signals();
  std::vector<int> day_ids;  // day column values in order of first appearance
  std::map<int, std::vector<std::vector<double>>> by_day;
  std::map<int, int> hour_base;  // 0- or 1-based numbering, fixed per day
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != num_signals + 2)
      throw ParseError("hourly CSV line " + std::to_string(line_no) +
                       " has the wrong field count");
    const int day = static_cast<int>(parse_double(fields[0], line_no));
    const int hour = static_cast<int>(parse_double(fields[1], line_no));
    std::vector<double> vals(static_cast<std::size_t>(num_signals));
    for (int s = 0; s < num_signals; ++s) {
      double v = parse_double(fields[static_cast<std::size_t>(s) + 2], line_no);
      if (series.is_wind[static_cast<std::size_t>(s)]) {
        if (v < -1e-9 || v > 1.0 + 1e-9)
          throw ParseError("hourly CSV line " + std::to_string(line_no) +
                           ": capacity factor outside [0, 1]");
        v = std::clamp(v, 0.0, 1.0);
      } else if (v < 0.0) {
        throw ParseError("hourly CSV line " + std::to_string(line_no) +
                         ": negative demand factor");
      }
      vals[static_cast<std::size_t>(s)] = v;
    }
    auto& bucket = by_day[day];
    if (bucket.empty() && std::find(day_ids.begin(), day_ids.end(), day) == day_ids.end())
      day_ids.push_back(day);
    if (bucket.empty()) {
      if (hour != 0 && hour != 1)
        throw ParseError("hourly CSV line " + std::to_string(line_no) +
                         ": a day must start at hour 0 or 1");
      hour_base[day] = hour;
    } else if (hour != hour_base.at(day) + static_cast<int>(bucket.size())) {
      throw ParseError("hourly CSV line " + std::to_string(line_no) +
                       ": hours must be consecutive within a day");
    }
    bucket.push_back(std::move(vals));
  }
  if (day_ids.empty()) throw ParseError("hourly CSV has no data rows");

  series.hours_per_day = static_cast<int>(by_day.at(day_ids.front()).size());
  if (series.hours_per_day == 0) throw ParseError("hourly CSV has empty days");
  for (int day : day_ids) {
    const auto& bucket = by_day.at(day);
    if (static_cast<int>(bucket.size()) != series.hours_per_day)
      throw ParseError("day " + std::to_string(day) + " has " +
                       std::to_string(bucket.size()) + " hours, expected " +
                       std::to_string(series.hours_per_day));
    std::vector<double> flat(static_cast<std::size_t>(num_signals) *
                             static_cast<std::size_t>(series.hours_per_day));
    for (int h = 0; h < series.hours_per_day; ++h)
      for (int s = 0; s < num_signals; ++s)
        flat[static_cast<std::size_t>(s * series.hours_per_day + h)] =
            bucket[static_cast<std::size_t>(h)][static_cast<std::size_t>(s)];
    series.days.push_back(std::move(flat));
  }
  return series;
}

HourlySeries load_hourly_csv(const std::string& path,
                             const std::vector<std::string>& demand_ids,
                             const std::vector<std::string>& wind_ids) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open hourly CSV '" + path + "'");
  return parse_hourly_csv(in, demand_ids, wind_ids);
}

namespace {

constexpr double kBig = std::numeric_limits<double>::max();

struct Points {
  int dims = 0;
  std::vector<std::vector<double>> x;  // distinct standardized points
  std::vector<int> multiplicity;       // raw days represented by each point
  std::vector<int> first_day;          // earliest raw day index per point
};

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Standardizes per signal (one mean/std across all hours and days of that
// signal), then merges exactly duplicated days so k-means never chases
// clusters that cannot be separated.
Points standardize_and_dedupe(const HourlySeries& series) {
  const int n = series.num_days();
  const int s_count = series.num_signals();
  const int h = series.hours_per_day;
  std::vector<double> mean(static_cast<std::size_t>(s_count), 0.0);
  std::vector<double> stdev(static_cast<std::size_t>(s_count), 0.0);
  for (int s = 0; s < s_count; ++s) {
    double m = 0.0;
    for (int d = 0; d < n; ++d)
      for (int hh = 0; hh < h; ++hh) m += series.value(d, s, hh);
    m /= static_cast<double>(n) * h;
    double var = 0.0;
    for (int d = 0; d < n; ++d)
      for (int hh = 0; hh < h; ++hh) {
        const double dv = series.value(d, s, hh) - m;
        var += dv * dv;
      }
    var /= static_cast<double>(n) * h;
    mean[static_cast<std::size_t>(s)] = m;
    stdev[static_cast<std::size_t>(s)] = var > 1e-24 ? std::sqrt(var) : 1.0;
  }

  Points pts;
  pts.dims = s_count * h;
  std::map<std::vector<double>, int> seen;
  for (int d = 0; d < n; ++d) {
    std::vector<double> z(static_cast<std::size_t>(pts.dims));
    for (int s = 0; s < s_count; ++s)
      for (int hh = 0; hh < h; ++hh)
        z[static_cast<std::size_t>(s * h + hh)] =
            (series.value(d, s, hh) - mean[static_cast<std::size_t>(s)]) /
            stdev[static_cast<std::size_t>(s)];
    auto [it, inserted] = seen.emplace(z, static_cast<int>(pts.x.size()));
    if (inserted) {
      pts.x.push_back(std::move(z));
      pts.multiplicity.push_back(1);
      pts.first_day.push_back(d);
    } else {
      ++pts.multiplicity[static_cast<std::size_t>(it->second)];
    }
  }
  return pts;
}

std::vector<int> kmeanspp_seed(const Points& pts, int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int n = static_cast<int>(pts.x.size());
  std::vector<int> centers;
  centers.push_back(static_cast<int>(uni(rng) * n) % n);
  std::vector<double> d2(static_cast<std::size_t>(n));
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double best = kBig;
      for (int c : centers) best = std::min(best, sq_dist(pts.x[static_cast<std::size_t>(i)],
                                                          pts.x[static_cast<std::size_t>(c)]));
      d2[static_cast<std::size_t>(i)] = best * pts.multiplicity[static_cast<std::size_t>(i)];
      total += d2[static_cast<std::size_t>(i)];
    }
    if (total <= 0.0) {
      // All remaining points coincide with a center; spread deterministically.
      for (int i = 0; i < n && static_cast<int>(centers.size()) < k; ++i)
        if (std::find(centers.begin(), centers.end(), i) == centers.end())
          centers.push_back(i);
      break;
    }
    double pick = uni(rng) * total;
    int chosen = n - 1;
    for (int i = 0; i < n; ++i) {
      pick -= d2[static_cast<std::size_t>(i)];
      if (pick <= 0.0) {
        chosen = i;
        break;
      }
    }
    centers.push_back(chosen);
  }
  return centers;
}

struct KmeansResult {
  std::vector<int> assignment;  // per distinct point
  std::vector<std::vector<double>> centroid;
};

bool lloyd(const Points& pts, int k, std::mt19937_64& rng, KmeansResult& out) {
  const int n = static_cast<int>(pts.x.size());
  std::vector<int> centers = kmeanspp_seed(pts, k, rng);
  out.centroid.clear();
  for (int c : centers) out.centroid.push_back(pts.x[static_cast<std::size_t>(c)]);
  out.assignment.assign(static_cast<std::size_t>(n), -1);

  for (int iter = 0; iter < 200; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = kBig;
      for (int c = 0; c < k; ++c) {
        const double d = sq_dist(pts.x[static_cast<std::size_t>(i)],
                                 out.centroid[static_cast<std::size_t>(c)]);
        if (d < best_d - 1e-15) {
          best_d = d;
          best = c;
        }
      }
      if (out.assignment[static_cast<std::size_t>(i)] != best) {
        out.assignment[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    std::vector<double> weight(static_cast<std::size_t>(k), 0.0);
    std::vector<std::vector<double>> sum(
        static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(pts.dims), 0.0));
    for (int i = 0; i < n; ++i) {
      const int c = out.assignment[static_cast<std::size_t>(i)];
      weight[static_cast<std::size_t>(c)] += pts.multiplicity[static_cast<std::size_t>(i)];
      for (int d = 0; d < pts.dims; ++d)
        sum[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] +=
            pts.multiplicity[static_cast<std::size_t>(i)] *
            pts.x[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
    }
    for (int c = 0; c < k; ++c) {
      if (weight[static_cast<std::size_t>(c)] == 0.0) return false;  // empty cluster
      for (int d = 0; d < pts.dims; ++d)
        out.centroid[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] =
            sum[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] /
            weight[static_cast<std::size_t>(c)];
    }
    if (!changed) return true;
  }
  return true;
}

}  // namespace

std::vector<RepresentativeDay> build_representative_days(const HourlySeries& series,
                                                         int k, unsigned seed) {
  if (k < 1) throw ConfigError("cluster count must be at least 1");
  if (series.num_days() == 0) throw ConfigError("cannot cluster an empty series");
  if (k > series.num_days())
    throw ConfigError("cluster count " + std::to_string(k) + " exceeds the " +
                      std::to_string(series.num_days()) + " days of data");
  if (series.hours_per_day < 1) throw ConfigError("series has no hours");

  Points pts = standardize_and_dedupe(series);
  // Identical days cannot be split apart; shrink k to what is separable.
  const int k_eff = std::min(k, static_cast<int>(pts.x.size()));

  std::mt19937_64 rng(seed);
  KmeansResult km;
  bool ok = false;
  for (int attempt = 0; attempt < 10 && !ok; ++attempt) ok = lloyd(pts, k_eff, rng, km);
  if (!ok)
    throw ConfigError("k-means kept producing empty clusters after 10 restarts");

  const int n_points = static_cast<int>(pts.x.size());
  std::vector<RepresentativeDay> out;
  int total_days = 0;
  for (int m : pts.multiplicity) total_days += m;
  for (int c = 0; c < k_eff; ++c) {
    int medoid = -1;
    double best = kBig;
    int members = 0;
    for (int i = 0; i < n_points; ++i) {
      if (km.assignment[static_cast<std::size_t>(i)] != c) continue;
      members += pts.multiplicity[static_cast<std::size_t>(i)];
      const double d =
          sq_dist(pts.x[static_cast<std::size_t>(i)], km.centroid[static_cast<std::size_t>(c)]);
      if (d < best - 1e-15 ||
          (d < best + 1e-15 && (medoid < 0 || pts.first_day[static_cast<std::size_t>(i)] <
                                                  pts.first_day[static_cast<std::size_t>(medoid)]))) {
        best = d;
        medoid = i;
      }
    }
    const int day = pts.first_day[static_cast<std::size_t>(medoid)];
    RepresentativeDay rep;
    rep.weight_days = 365.0 * members / total_days;
    for (int s = 0; s < series.num_signals(); ++s) {
      std::vector<double> hours(static_cast<std::size_t>(series.hours_per_day));
      for (int h = 0; h < series.hours_per_day; ++h) hours[static_cast<std::size_t>(h)] =
          series.value(day, s, h);
      if (series.is_wind[static_cast<std::size_t>(s)])
        rep.wind_capacity_factor[series.names[static_cast<std::size_t>(s)]] = std::move(hours);
      else
        rep.demand_factor[series.names[static_cast<std::size_t>(s)]] = std::move(hours);
    }
    out.push_back(std::move(rep));
  }
  // Stable order: heaviest cluster first, medoid day as tie-break.
  std::sort(out.begin(), out.end(), [](const RepresentativeDay& a, const RepresentativeDay& b) {
    if (a.weight_days != b.weight_days) return a.weight_days > b.weight_days;
    return a.demand_factor < b.demand_factor;
  });
  return out;
}

}  // namespace tnep
