#include "decharge/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "decharge/objectives.hpp"
#include "decharge/scenario_io.hpp"

namespace decharge {

namespace {

struct Sums {
  int served = 0;
  double discomfort = 0.0;
  double travel_km = 0.0;
  double wait_min = 0.0;
};

void accumulate(Sums& s, const WindowOutcome& w) {
  for (const auto& k : w.chosen) {
    s.discomfort += k.discomfort;
    s.travel_km += k.distance_km;
  }
  for (const auto& a : w.assignments) s.wait_min += a.wait_minutes;
  s.served += static_cast<int>(w.assignments.size());
}

}  // namespace

RunReport compute_report(const std::vector<WindowOutcome>& outcomes, const Scenario& scenario,
                         const MetricsConfig& config) {
  if (!(config.speed_kmh > 0.0)) throw std::invalid_argument("compute_report: speed must be > 0");
  RunReport r;
  r.day = scenario.day;
  r.seed = scenario.seed;
  r.num_windows = static_cast<int>(outcomes.size());
  r.station_demand_kj.assign(scenario.stations.size(), 0.0);

  Sums total;
  double o2_sum = 0.0;
  for (const auto& w : outcomes) {
    if (w.chosen.size() != w.assignments.size()) {
      throw std::invalid_argument("compute_report: chosen options and assignments differ in length");
    }
    Sums s;
    accumulate(s, w);
    accumulate(total, w);
    r.unserved += w.unserved;

    WindowMetrics m;
    m.window = w.window;
    m.served = s.served;
    m.unserved = w.unserved;
    m.system_inefficiency = rms(w.station_queue);
    if (s.served > 0) {
      const double n = s.served;
      m.driver_discomfort = s.discomfort / n;
      m.relative_travel_km = s.travel_km / n;
      m.actual_queuing_h = s.wait_min / n / 60.0;
      m.estimated_waiting_h = m.actual_queuing_h + m.relative_travel_km / config.speed_kmh;
    }
    o2_sum += m.system_inefficiency;
    r.windows.push_back(m);

    for (std::size_t i = 0; i < w.chosen.size(); ++i) {
      const auto station = static_cast<std::size_t>(w.assignments[i].station);
      if (station >= r.station_demand_kj.size()) {
        throw std::invalid_argument("compute_report: assignment to unknown station");
      }
      r.station_demand_kj[station] += w.chosen[i].demand_min * 60.0 * config.charge_power_kw;
    }
  }

  r.served = total.served;
  if (total.served > 0) {
    const double n = total.served;
    r.driver_discomfort = total.discomfort / n;
    r.relative_travel_km = total.travel_km / n;
    r.actual_queuing_h = total.wait_min / n / 60.0;
    r.estimated_waiting_h = r.actual_queuing_h + r.relative_travel_km / config.speed_kmh;
  }
  if (!outcomes.empty()) r.system_inefficiency = o2_sum / static_cast<double>(outcomes.size());
  r.overall_operational_cost = (r.driver_discomfort + r.system_inefficiency) / 2.0;
  if (!r.station_demand_kj.empty()) {
    r.max_station_demand_kj = *std::max_element(r.station_demand_kj.begin(), r.station_demand_kj.end());
  }
  return r;
}

std::vector<std::string> report_columns() {
  return {"seed",
          "num_windows",
          "served",
          "unserved",
          "driver_discomfort",
          "system_inefficiency",
          "overall_operational_cost",
          "relative_travel_km",
          "actual_queuing_h",
          "estimated_waiting_h",
          "max_station_demand_kj",
          "station_demand_kj"};
}

std::vector<std::string> report_values(const RunReport& r) {
  std::string per_station;
  for (std::size_t i = 0; i < r.station_demand_kj.size(); ++i) {
    if (i) per_station += ';';
    per_station += format_number(r.station_demand_kj[i]);
  }
  return {std::to_string(r.seed),
          std::to_string(r.num_windows),
          std::to_string(r.served),
          std::to_string(r.unserved),
          format_number(r.driver_discomfort),
          format_number(r.system_inefficiency),
          format_number(r.overall_operational_cost),
          format_number(r.relative_travel_km),
          format_number(r.actual_queuing_h),
          format_number(r.estimated_waiting_h),
          format_number(r.max_station_demand_kj),
          per_station};
}

std::vector<std::string> window_columns() {
  return {"window",           "served",           "unserved",
          "driver_discomfort", "system_inefficiency", "relative_travel_km",
          "actual_queuing_h", "estimated_waiting_h"};
}

std::vector<std::string> window_values(const WindowMetrics& m) {
  return {std::to_string(m.window),
          std::to_string(m.served),
          std::to_string(m.unserved),
          format_number(m.driver_discomfort),
          format_number(m.system_inefficiency),
          format_number(m.relative_travel_km),
          format_number(m.actual_queuing_h),
          format_number(m.estimated_waiting_h)};
}

}  // namespace decharge
