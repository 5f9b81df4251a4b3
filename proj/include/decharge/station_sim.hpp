#pragma once

#include <span>
#include <vector>

#include "decharge/scenario.hpp"

namespace decharge {

struct Assignment {
  int request_id = 0;
  /// Index of the station in the scenario's station list.
  int station = 0;
  Minutes arrival_time = 0.0;
  Minutes wait_minutes = 0.0;
  int slot_index = 0;
};

/// First-come-first-served service of one EV on a set of slot clocks.
/// Picks the earliest-free clock (lowest index on ties), advances it to
/// max(clock, arrival) + demand, and returns the wait.
Minutes serve_on_slots(std::span<Minutes> clocks, Minutes arrival, Minutes demand,
                       int* chosen = nullptr) noexcept;

/// Window update of station state. `selected_station[i]` is the station index
/// chosen by `window_requests[i]` (-1 = missing). Requests are served in
/// (request_time, id) order. Every station's window_queue_time is reset, then
/// accumulates the waits of its EVs.
std::vector<Assignment> update_station_state(std::vector<ChargingStation>& stations,
                                             std::span<const ChargingRequest> window_requests,
                                             std::span<const int> selected_station,
                                             double speed_kmh);

/// Queue observed at window start, i.e. what the previous update left.
inline Minutes observe_queue(const ChargingStation& station) noexcept {
  return station.window_queue_time;
}

/// Enabled slots within the request's range that are idle at its request time.
int available_slots_in_range(std::span<const ChargingStation> stations,
                             const ChargingRequest& request) noexcept;

}  // namespace decharge
