#include "decharge/station_sim.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "decharge/errors.hpp"

namespace decharge {

Minutes serve_on_slots(std::span<Minutes> clocks, Minutes arrival, Minutes demand,
                       int* chosen) noexcept {
  std::size_t best = 0;
  for (std::size_t j = 1; j < clocks.size(); ++j) {
    if (clocks[j] < clocks[best]) best = j;
  }
  const Minutes wait = std::max(clocks[best] - arrival, 0.0);
  clocks[best] = std::max(clocks[best], arrival) + demand;
  if (chosen) *chosen = static_cast<int>(best);
  return wait;
}

std::vector<Assignment> update_station_state(std::vector<ChargingStation>& stations,
                                             std::span<const ChargingRequest> window_requests,
                                             std::span<const int> selected_station,
                                             double speed_kmh) {
  if (selected_station.size() != window_requests.size()) {
    throw InfeasibleSelection("selection count does not match request count");
  }
  for (std::size_t i = 0; i < window_requests.size(); ++i) {
    const int m = selected_station[i];
    if (m < 0) {
      throw InfeasibleSelection("no station selected for request " +
                                std::to_string(window_requests[i].id));
    }
    if (static_cast<std::size_t>(m) >= stations.size()) {
      throw InfeasibleSelection("request " + std::to_string(window_requests[i].id) +
                                " selected unknown station " + std::to_string(m));
    }
    if (stations[static_cast<std::size_t>(m)].enabled_slots() == 0) {
      throw InfeasibleSelection("request " + std::to_string(window_requests[i].id) +
                                " selected station " +
                                std::to_string(stations[static_cast<std::size_t>(m)].id) +
                                " which has no enabled slot");
    }
  }

  for (auto& st : stations) st.window_queue_time = 0.0;

  std::vector<std::size_t> order(window_requests.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = window_requests[a];
    const auto& rb = window_requests[b];
    return ra.request_time != rb.request_time ? ra.request_time < rb.request_time
                                              : ra.id < rb.id;
  });

  std::vector<Assignment> out;
  out.reserve(order.size());
  std::vector<Minutes> clocks;
  std::vector<int> slot_ids;
  for (std::size_t i : order) {
    const auto& r = window_requests[i];
    auto& st = stations[static_cast<std::size_t>(selected_station[i])];
    clocks.clear();
    slot_ids.clear();
    for (std::size_t j = 0; j < st.slot_free_time.size(); ++j) {
      if (!st.enabled[j]) continue;
      clocks.push_back(st.slot_free_time[j]);
      slot_ids.push_back(static_cast<int>(j));
    }
    Assignment a;
    a.request_id = r.id;
    a.station = selected_station[i];
    a.arrival_time = r.request_time + travel_minutes(distance_km(r.location, st.location), speed_kmh);
    int local = 0;
    a.wait_minutes = serve_on_slots(clocks, a.arrival_time, r.demand, &local);
    a.slot_index = slot_ids[static_cast<std::size_t>(local)];
    st.slot_free_time[static_cast<std::size_t>(a.slot_index)] =
        clocks[static_cast<std::size_t>(local)];
    st.window_queue_time += a.wait_minutes;
    out.push_back(a);
  }
  return out;
}

int available_slots_in_range(std::span<const ChargingStation> stations,
                             const ChargingRequest& request) noexcept {
  int count = 0;
  for (const auto& st : stations) {
    if (distance_km(request.location, st.location) > request.max_distance) continue;
    for (std::size_t j = 0; j < st.slot_free_time.size(); ++j) {
      if (st.enabled[j] && st.slot_free_time[j] <= request.request_time) ++count;
    }
  }
  return count;
}

}  // namespace decharge
