#include "decharge/geo.hpp"

#include <cmath>
#include <numbers>

namespace decharge {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

Kilometers distance_km(GeoPoint a, GeoPoint b) noexcept {
  return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km);
}

Minutes travel_minutes(Kilometers km, double speed_kmh) noexcept {
  return 60.0 * km / speed_kmh;
}

Projection Projection::about_centroid(std::span<const LatLon> points) {
  if (points.empty()) return {};
  double lat = 0.0;
  double lon = 0.0;
  for (const auto& p : points) {
    lat += p.lat;
    lon += p.lon;
  }
  const auto n = static_cast<double>(points.size());
  return Projection(lat / n, lon / n);
}

GeoPoint Projection::project(LatLon p) const noexcept {
  const double dlat = (p.lat - origin_.lat) * kDegToRad;
  const double dlon = (p.lon - origin_.lon) * kDegToRad;
  return {kEarthRadiusKm * dlon * std::cos(origin_.lat * kDegToRad), kEarthRadiusKm * dlat};
}

}  // namespace decharge
