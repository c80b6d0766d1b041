#pragma once

#include <cmath>
#include <numbers>

namespace detour {

// Mean Earth radius (IUGG), meters.
inline constexpr double kEarthRadiusM = 6371008.8;

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;

  bool valid() const { return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0; }

  friend bool operator==(const LatLon&, const LatLon&) = default;
};

// Axis-aligned lat/lon box, boundary inclusive.
struct BoundingBox {
  double min_lat = 0.0;
  double min_lon = 0.0;
  double max_lat = 0.0;
  double max_lon = 0.0;

  bool well_formed() const { return min_lat <= max_lat && min_lon <= max_lon; }

  bool contains(const LatLon& p) const {
    return p.lat >= min_lat && p.lat <= max_lat && p.lon >= min_lon && p.lon <= max_lon;
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Great-circle distance in meters.
inline double haversine_m(const LatLon& a, const LatLon& b) {
  const double lat1 = deg_to_rad(a.lat);
  const double lat2 = deg_to_rad(b.lat);
  const double dlat = lat2 - lat1;
  const double dlon = deg_to_rad(b.lon - a.lon);
  const double s1 = std::sin(dlat / 2.0);
  const double s2 = std::sin(dlon / 2.0);
  const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(std::fmin(1.0, h)));
}

}  // namespace detour
