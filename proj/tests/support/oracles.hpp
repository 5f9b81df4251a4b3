#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library beyond the plain data types.

#include <cstdint>
#include <functional>
#include <vector>

#include "decharge/options.hpp"
#include "decharge/scenario.hpp"

namespace decharge::oracle {

/// Naive FCFS replay: returns per-station total wait for the given
/// station choice per request. Slots are scanned by hand every time.
std::vector<double> station_waits(const std::vector<ChargingStation>& stations,
                                  const std::vector<ChargingRequest>& requests,
                                  const std::vector<int>& station_of, double speed_kmh);

struct Evaluation {
  double o1_sum = 0.0;
  double o2 = 0.0;
  double cost = 0.0;
};

/// Objective values of an option-index choice, computed from scratch.
Evaluation evaluate(const std::vector<ChargingStation>& stations,
                    const std::vector<ChargingRequest>& requests,
                    const std::vector<std::vector<ChargingOption>>& options,
                    const std::vector<double>& betas, const std::vector<int>& choice,
                    double speed_kmh);

/// Calls `visit` for every option-index vector (odometer order).
void enumerate(const std::vector<std::vector<ChargingOption>>& options,
               const std::function<void(const std::vector<int>&)>& visit);

struct Optimum {
  std::vector<int> choice;
  Evaluation value;
};

/// Exhaustive minimum of `key(evaluation)`; first minimum in odometer order.
Optimum exhaustive_min(const std::vector<ChargingStation>& stations,
                       const std::vector<ChargingRequest>& requests,
                       const std::vector<std::vector<ChargingOption>>& options,
                       const std::vector<double>& betas, double speed_kmh,
                       const std::function<double(const Evaluation&)>& key);

/// Per-agent argmin of discomfort, lowest station on ties.
std::vector<int> greedy_oracle(const std::vector<std::vector<ChargingOption>>& options);

/// Solves (X^T X) b = X^T y with an intercept column, independently of the library.
std::vector<double> ols_normal_equations(const std::vector<std::vector<double>>& x,
                                         const std::vector<double>& y);

/// Small instance generator: `agents` requests clustered around station 0,
/// `stations` stations on a line 1 km apart, one slot each.
struct Instance {
  std::vector<ChargingStation> stations;
  std::vector<ChargingRequest> requests;
  std::vector<std::vector<ChargingOption>> options;
  std::vector<double> betas;
};
Instance clustered_instance(std::uint64_t seed, int agents, int stations, double beta,
                            double alpha2 = 1.0, double cluster_sigma_km = 0.3,
                            double standing_queue = 0.6);

}  // namespace decharge::oracle
