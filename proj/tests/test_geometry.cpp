#include <cmath>

#include "doctest.h"
#include "ntnharq/errors.hpp"
#include "ntnharq/geometry.hpp"

using namespace ntnharq;
using namespace ntnharq::geometry;

namespace {

OrbitGeometry geom(double h, double elev, Payload p, double feeder = 10.0) {
    OrbitGeometry g;
    g.altitude_km = h;
    g.service_elevation_deg = elev;
    g.feeder_elevation_deg = feeder;
    g.payload = p;
    return g;
}

}  // namespace

TEST_CASE("slant range examples") {
    CHECK(slant_range_km(600, 90) == doctest::Approx(600.0).epsilon(1e-12));
    CHECK(slant_range_km(600, 10) == doctest::Approx(1931.6).epsilon(5e-5));
    CHECK(slant_range_km(1200, 30) == doctest::Approx(1998.9).epsilon(5e-5));
}

TEST_CASE("slant range agrees with the law of cosines") {
    // Independent oracle: with the earth-centre angle theta, the triangle
    // (R, R+h, d) gives d^2 = R^2 + (R+h)^2 - 2R(R+h)cos(theta), where
    // theta = 90 deg - elev - asin(R cos(elev) / (R+h)).
    const double R = kEarthRadiusKm;
    for (double h : {500.0, 600.0, 1200.0}) {
        for (double e = 10.0; e <= 90.0; e += 5.0) {
            const double er = e * M_PI / 180.0;
            const double nadir = std::asin(R * std::cos(er) / (R + h));
            const double theta = M_PI / 2 - er - nadir;
            const double d = std::sqrt(R * R + (R + h) * (R + h) - 2 * R * (R + h) * std::cos(theta));
            CHECK(slant_range_km(h, e) == doctest::Approx(d).epsilon(1e-9));
        }
    }
}

TEST_CASE("slant range monotonicity") {
    for (double h : {300.0, 600.0, 1200.0}) {
        double prev = slant_range_km(h, 10.0);
        for (double e = 10.5; e <= 90.0; e += 0.5) {
            const double d = slant_range_km(h, e);
            CHECK(d < prev);
            CHECK(d >= h - 1e-9);
            prev = d;
        }
    }
    for (double e : {10.0, 45.0, 90.0}) {
        CHECK(slant_range_km(600, e) < slant_range_km(1200, e));
    }
}

TEST_CASE("slant range rejects bad input") {
    CHECK_THROWS_AS(slant_range_km(0, 30), InvalidInput);
    CHECK_THROWS_AS(slant_range_km(-5, 30), InvalidInput);
    CHECK_THROWS_AS(slant_range_km(600, 91), InvalidInput);
    CHECK_THROWS_AS(slant_range_km(600, -1), InvalidInput);
}

TEST_CASE("round trip time examples") {
    CHECK(round_trip_time_ms(geom(600, 90, Payload::Regenerative)) == doctest::Approx(4.0).epsilon(0.01));
    CHECK(round_trip_time_ms(geom(600, 10, Payload::Transparent, 10)) == doctest::Approx(25.8).epsilon(0.01));
    CHECK(round_trip_time_ms(geom(600, 30, Payload::Transparent, 10)) == doctest::Approx(20.06).epsilon(0.001));
    CHECK(round_trip_time_ms(geom(1200, 30, Payload::Transparent, 10)) == doctest::Approx(34.22).epsilon(0.001));
}

TEST_CASE("transparent RTT exceeds regenerative RTT") {
    for (double h : {600.0, 1200.0}) {
        for (double e = 10.0; e <= 90.0; e += 10.0) {
            for (double f = 10.0; f <= 90.0; f += 20.0) {
                CHECK(round_trip_time_ms(geom(h, e, Payload::Transparent, f)) >
                      round_trip_time_ms(geom(h, e, Payload::Regenerative, f)));
            }
        }
    }
}

TEST_CASE("feeder elevation only matters for transparent payloads") {
    CHECK(round_trip_time_ms(geom(600, 30, Payload::Regenerative, 10)) ==
          round_trip_time_ms(geom(600, 30, Payload::Regenerative, 80)));
    CHECK(round_trip_time_ms(geom(600, 30, Payload::Transparent, 10)) >
          round_trip_time_ms(geom(600, 30, Payload::Transparent, 80)));
}

TEST_CASE("geometry validation") {
    CHECK_NOTHROW(geom(600, 10, Payload::Transparent).validate());
    CHECK_THROWS_AS(geom(600, 9.9, Payload::Transparent).validate(), InvalidInput);
    CHECK_THROWS_AS(geom(600, 30, Payload::Transparent, 5).validate(), InvalidInput);
    CHECK_THROWS_AS(geom(0, 30, Payload::Transparent).validate(), InvalidInput);
    CHECK_THROWS_AS(round_trip_time_ms(geom(600, 95, Payload::Regenerative)), InvalidInput);
}
