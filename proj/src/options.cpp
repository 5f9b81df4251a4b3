#include "decharge/options.hpp"

#include <algorithm>
#include <stdexcept>

#include "decharge/station_sim.hpp"

namespace decharge {

double discomfort(Kilometers distance_km, Minutes queue_min, double alpha1, double alpha2) {
  if (distance_km < 0.0 || queue_min < 0.0) {
    throw std::invalid_argument("discomfort: distance and queue must be >= 0");
  }
  if (alpha1 < 0.0 || alpha1 > 1.0 || alpha2 < 0.0 || alpha2 > 1.0) {
    throw std::invalid_argument("discomfort: alphas must be in [0, 1]");
  }
  return alpha1 * distance_km + alpha2 * queue_min;
}

std::vector<ChargingOption> generate_options(const ChargingRequest& request,
                                             std::span<const ChargingStation> stations,
                                             double alpha1, double alpha2,
                                             std::size_t max_options) {
  std::vector<ChargingOption> options;
  for (std::size_t m = 0; m < stations.size(); ++m) {
    const auto& st = stations[m];
    const Kilometers d = distance_km(request.location, st.location);
    if (d > request.max_distance || st.enabled_slots() == 0) continue;
    ChargingOption k;
    k.request_id = request.id;
    k.station = static_cast<int>(m);
    k.distance_km = d;
    k.observed_queue_min = observe_queue(st);
    k.discomfort = discomfort(d, k.observed_queue_min, alpha1, alpha2);
    k.request_time = request.request_time;
    k.demand_min = request.demand;
    options.push_back(k);
  }
  std::sort(options.begin(), options.end(), [](const auto& a, const auto& b) {
    return a.discomfort != b.discomfort ? a.discomfort < b.discomfort : a.station < b.station;
  });
  if (max_options > 0 && options.size() > max_options) options.resize(max_options);
  return options;
}

}  // namespace decharge
