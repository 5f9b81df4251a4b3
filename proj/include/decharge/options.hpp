#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "decharge/scenario.hpp"

namespace decharge {

/// One feasible (request, station) pairing.
struct ChargingOption {
  int request_id = 0;
  int station = 0;
  Kilometers distance_km = 0.0;
  Minutes observed_queue_min = 0.0;
  double discomfort = 0.0;
  Minutes request_time = 0.0;
  Minutes demand_min = 0.0;
};

/// alpha1 * distance + alpha2 * queue. Throws std::invalid_argument on
/// negative inputs or alphas outside [0, 1].
double discomfort(Kilometers distance_km, Minutes queue_min, double alpha1, double alpha2);

/// Options for every station in range that has at least one enabled slot,
/// sorted by (discomfort, station). `max_options` > 0 keeps only the first k.
std::vector<ChargingOption> generate_options(const ChargingRequest& request,
                                             std::span<const ChargingStation> stations,
                                             double alpha1, double alpha2,
                                             std::size_t max_options = 0);

}  // namespace decharge
