#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "decharge/scenario.hpp"

namespace decharge {

/// Linear next-window request count from the previous `lags` window counts.
struct DemandPredictor {
  int lags = 3;
  double intercept = 0.0;
  std::vector<double> coefficients;  // coefficients[i] multiplies count[t - i]
  double residual_rms = 0.0;
  /// Set when the design was rank deficient and the mean predictor is used.
  bool fallback_to_mean = false;
  std::size_t samples = 0;

  /// `recent` holds counts ending at the current window (most recent last).
  /// Missing history is treated as zero. Result is clamped to >= 0.
  double predict(std::span<const double> recent) const;
};

/// Ordinary least squares with intercept over all (lag window, next window)
/// pairs in each day of `history` via the normal equations.
DemandPredictor fit_predictor(const std::vector<std::vector<double>>& history, int lags);

/// Growth coefficient clamp(predicted / current - 1, 0, 1).
double demand_growth(double current_count, double predicted_next);

/// beta = clamp(gamma * available / (count * (1 + growth)), 0, 1).
double recommend_beta(int available_slots, int window_count, double growth, double gamma);

/// Recommendation for one request: available slots are counted in its range
/// at its request time.
double recommend_beta(const ChargingRequest& request, std::span<const ChargingStation> stations,
                      int window_count, double growth, double gamma);

void write_predictor(std::ostream& out, const DemandPredictor& predictor);
DemandPredictor read_predictor(std::istream& in);

}  // namespace decharge
