#include "decharge/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "decharge/errors.hpp"

namespace decharge {

namespace {

constexpr std::string_view kAxisNames[] = {"beta", "slots", "windows", "selfish_pct"};

}  // namespace

std::string_view axis_name(SweepAxis axis) noexcept {
  return kAxisNames[static_cast<std::size_t>(axis)];
}

SweepAxis parse_axis(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kAxisNames); ++i) {
    if (kAxisNames[i] == name) return static_cast<SweepAxis>(i);
  }
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) +
                              "' (expected beta, slots, windows or selfish_pct)");
}

RunConfig apply_axis(RunConfig base, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kBeta:
      base.beta = value;
      break;
    case SweepAxis::kSlots:
      base.slots_ratio = value;
      break;
    case SweepAxis::kWindows:
      if (value != std::floor(value) || value < 1.0) {
        throw ValidationError("windows value must be a positive integer");
      }
      base.windows = static_cast<int>(value);
      break;
    case SweepAxis::kSelfishPct:
      base.selfish_pct = value;
      break;
  }
  return base;
}

std::vector<SweepCell> sweep_cells(const RunConfig& base, SweepAxis axis,
                                   const std::vector<double>& values,
                                   const std::vector<Method>& methods) {
  if (values.empty()) throw ValidationError("sweep needs at least one value");
  if (methods.empty()) throw ValidationError("sweep needs at least one method");
  std::vector<SweepCell> cells;
  for (std::size_t v = 0; v < values.size(); ++v) {
    for (std::size_t m = 0; m < methods.size(); ++m) {
      SweepCell c;
      c.value_index = v;
      c.method_index = m;
      c.value = values[v];
      c.method = methods[m];
      c.config = apply_axis(base, axis, values[v]);
      c.config.method = methods[m];
      cells.push_back(std::move(c));
    }
  }
  return cells;
}

std::vector<SweepResultRow> run_sweep(const Scenario& scenario, const RunConfig& base,
                                      SweepAxis axis, const std::vector<double>& values,
                                      const std::vector<Method>& methods, int jobs) {
  const auto cells = sweep_cells(base, axis, values, methods);
  std::vector<SweepResultRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(cells.size());

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        rows[i].cell = cells[i];
        rows[i].report = run_scenario(scenario, cells[i].config).report;
        rows[i].hash = config_hash(scenario, cells[i].config);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const auto threads = static_cast<std::size_t>(std::clamp(jobs, 1, static_cast<int>(cells.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return rows;
}

}  // namespace decharge
