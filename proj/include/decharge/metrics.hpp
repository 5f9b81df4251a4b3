#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "decharge/options.hpp"
#include "decharge/scenario.hpp"
#include "decharge/station_sim.hpp"

namespace decharge {

/// Everything the report needs from one simulated window.
struct WindowOutcome {
  int window = 0;
  std::vector<ChargingOption> chosen;  // aligned with assignments
  std::vector<Assignment> assignments;
  std::vector<Minutes> station_queue;  // per station after the update
  int unserved = 0;
};

struct WindowMetrics {
  int window = 0;
  int served = 0;
  int unserved = 0;
  double driver_discomfort = 0.0;
  double system_inefficiency = 0.0;
  double relative_travel_km = 0.0;
  double actual_queuing_h = 0.0;
  double estimated_waiting_h = 0.0;
};

struct RunReport {
  int day = 0;
  std::uint64_t seed = 0;
  int num_windows = 0;
  int served = 0;
  int unserved = 0;
  double driver_discomfort = 0.0;
  double system_inefficiency = 0.0;
  double overall_operational_cost = 0.0;
  double relative_travel_km = 0.0;
  double actual_queuing_h = 0.0;
  double estimated_waiting_h = 0.0;
  std::vector<double> station_demand_kj;
  double max_station_demand_kj = 0.0;
  std::vector<WindowMetrics> windows;
};

struct MetricsConfig {
  double speed_kmh = 30.0;
  double charge_power_kw = 7.0;
};

RunReport compute_report(const std::vector<WindowOutcome>& outcomes, const Scenario& scenario,
                         const MetricsConfig& config);

/// Column names of a report row, without any leading key columns.
std::vector<std::string> report_columns();
/// Report values formatted for CSV, aligned with report_columns().
std::vector<std::string> report_values(const RunReport& report);
std::vector<std::string> window_columns();
std::vector<std::string> window_values(const WindowMetrics& metrics);

}  // namespace decharge
