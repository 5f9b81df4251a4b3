#pragma once

#include <span>

namespace decharge {

using Minutes = double;
using Kilometers = double;

inline constexpr Minutes kDayMinutes = 1440.0;
inline constexpr double kEarthRadiusKm = 6371.0;

/// Planar position in km relative to a projection origin.
struct GeoPoint {
  Kilometers x_km = 0.0;
  Kilometers y_km = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;
};

Kilometers distance_km(GeoPoint a, GeoPoint b) noexcept;

/// Minutes needed to cover `km` at `speed_kmh`.
Minutes travel_minutes(Kilometers km, double speed_kmh) noexcept;

/// Equirectangular projection about a fixed origin:
/// x = R * dlon * cos(lat0), y = R * dlat (radians).
class Projection {
 public:
  Projection() = default;
  Projection(double lat0, double lon0) : origin_{lat0, lon0} {}

  static Projection about_centroid(std::span<const LatLon> points);

  GeoPoint project(LatLon p) const noexcept;
  LatLon origin() const noexcept { return origin_; }

 private:
  LatLon origin_{};
};

}  // namespace decharge
