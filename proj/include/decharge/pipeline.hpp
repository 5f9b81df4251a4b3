#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decharge/behavior.hpp"
#include "decharge/epos.hpp"
#include "decharge/metrics.hpp"
#include "decharge/scenario.hpp"

namespace decharge {

enum class Method { kDecharge, kGreedy, kDoc, kSic, kMgm, kCohda };

std::string_view method_name(Method method) noexcept;
/// Throws std::invalid_argument for unknown names.
Method parse_method(std::string_view name);

struct RunConfig {
  Method method = Method::kDecharge;
  /// Uniform behaviour for every request; unset means recommended per window.
  std::optional<double> beta;
  double gamma = 0.1;
  int lags = 3;
  std::optional<int> windows;
  std::optional<double> slots_ratio;
  /// Percentage (0-100) of requests that ignore recommendations and use beta = 1.
  double selfish_pct = 0.0;
  int repetitions = 40;
  int iterations = 40;
  std::optional<std::uint64_t> seed;
  double charge_power_kw = 7.0;
  TreeStrategy strategy = TreeStrategy::kCentroid;
  std::size_t max_options = 0;
  std::optional<DemandPredictor> predictor;
};

struct TraceRow {
  int window = 0;
  int repetition = 0;
  IterationTrace trace;
};

struct AssignmentRow {
  int window = 0;
  int request_id = 0;
  int station_id = 0;
  int slot = 0;
  Minutes arrival_min = 0.0;
  Minutes wait_min = 0.0;
};

struct RunResult {
  RunReport report;
  /// Chosen station index per request, aligned with the prepared scenario's
  /// request list (-1 for unserved requests).
  std::vector<int> station_of_request;
  std::vector<double> beta_of_request;
  std::vector<TraceRow> traces;
  std::vector<AssignmentRow> assignments;
};

/// The scenario after run-level overrides (windows, outage mask).
Scenario prepare_scenario(const Scenario& scenario, const RunConfig& config);

/// Per window: generate options, set behaviours, coordinate with the chosen
/// method, update station state. The input scenario is not modified.
RunResult run_scenario(const Scenario& scenario, const RunConfig& config);

/// Stable 64-bit fingerprint of the run configuration and scenario, hex encoded.
std::string config_hash(const Scenario& scenario, const RunConfig& config);

std::uint64_t run_seed(const Scenario& scenario, const RunConfig& config) noexcept;

}  // namespace decharge
