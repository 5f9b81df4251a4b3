#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "decharge/pipeline.hpp"

namespace decharge {

enum class SweepAxis { kBeta, kSlots, kWindows, kSelfishPct };

std::string_view axis_name(SweepAxis axis) noexcept;
SweepAxis parse_axis(std::string_view name);

/// Returns `base` with the swept parameter set to `value`.
RunConfig apply_axis(RunConfig base, SweepAxis axis, double value);

struct SweepCell {
  std::size_t value_index = 0;
  std::size_t method_index = 0;
  double value = 0.0;
  Method method = Method::kDecharge;
  RunConfig config;
};

std::vector<SweepCell> sweep_cells(const RunConfig& base, SweepAxis axis,
                                   const std::vector<double>& values,
                                   const std::vector<Method>& methods);

struct SweepResultRow {
  SweepCell cell;
  RunReport report;
  std::string hash;
};

/// Runs every cell with up to `jobs` worker threads. Rows come back ordered by
/// (value index, method index) regardless of scheduling.
std::vector<SweepResultRow> run_sweep(const Scenario& scenario, const RunConfig& base,
                                      SweepAxis axis, const std::vector<double>& values,
                                      const std::vector<Method>& methods, int jobs);

}  // namespace decharge
