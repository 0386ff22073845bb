#pragma once

namespace ntnharq::geometry {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kSpeedOfLightKmPerS = 299792.458;

enum class Payload { Transparent, Regenerative };

/// UE / satellite / gateway arrangement for one scenario. The feeder
/// elevation only matters for transparent (bent-pipe) payloads.
struct OrbitGeometry {
    double altitude_km = 600.0;
    double service_elevation_deg = 30.0;
    double feeder_elevation_deg = 10.0;
    Payload payload = Payload::Transparent;

    /// Throws InvalidInput unless altitude > 0 and both elevations lie in [10, 90].
    void validate() const;
};

/// Spherical-earth distance from a ground terminal to a satellite at
/// `altitude_km` seen at `elevation_deg` above the horizon.
double slant_range_km(double altitude_km, double elevation_deg);

/// Service-link RTT, plus the feeder link for transparent payloads.
double round_trip_time_ms(const OrbitGeometry& geom);

}  // namespace ntnharq::geometry
