#include "ntnharq/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ntnharq/errors.hpp"

namespace ntnharq::geometry {

namespace {

void check_elevation(double elevation_deg, double lo) {
    if (!(elevation_deg >= lo && elevation_deg <= 90.0)) {
        throw InvalidInput("elevation " + std::to_string(elevation_deg) + " deg outside [" +
                           std::to_string(lo) + ", 90]");
    }
}

}  // namespace

void OrbitGeometry::validate() const {
    if (!(altitude_km > 0.0)) {
        throw InvalidInput("altitude must be positive");
    }
    check_elevation(service_elevation_deg, 10.0);
    if (payload == Payload::Transparent) {
        check_elevation(feeder_elevation_deg, 10.0);
    }
}

double slant_range_km(double altitude_km, double elevation_deg) {
    if (!(altitude_km > 0.0)) {
        throw InvalidInput("altitude must be positive");
    }
    check_elevation(elevation_deg, 0.0);
    if (elevation_deg == 90.0) {
        return altitude_km;
    }
    const double s = std::sin(elevation_deg * std::numbers::pi / 180.0);
    const double r = kEarthRadiusKm;
    return std::sqrt(r * r * s * s + altitude_km * altitude_km + 2.0 * altitude_km * r) - r * s;
}

double round_trip_time_ms(const OrbitGeometry& geom) {
    geom.validate();
    double path_km = slant_range_km(geom.altitude_km, geom.service_elevation_deg);
    if (geom.payload == Payload::Transparent) {
        path_km += slant_range_km(geom.altitude_km, geom.feeder_elevation_deg);
    }
    return 2.0 * path_km / kSpeedOfLightKmPerS * 1e3;
}

}  // namespace ntnharq::geometry
