#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "spinboson/chi_profile.hpp"

using namespace spinboson;

TEST_CASE("annular bump is supported on its shell", "[chi]") {
    ChiProfile chi = ChiProfile::annular_bump(2.0, 1.0);
    REQUIRE(chi(0.0) == 0.0);
    REQUIRE(chi(0.999) == 0.0);
    REQUIRE(chi(1.0) == 0.0);
    REQUIRE(chi(3.0) == 0.0);
    REQUIRE(chi(5.0) == 0.0);
    REQUIRE(chi(2.0) == Catch::Approx(std::exp(-1.0)).epsilon(1e-14));
    REQUIRE(chi(1.5) > 0.0);
    REQUIRE(chi(2.5) > 0.0);
    REQUIRE(chi(1.5) == Catch::Approx(chi(2.5)).epsilon(1e-14));

    REQUIRE(chi.infrared_radius() == Catch::Approx(1.0));
    REQUIRE(chi.vanishes_near_zero());
    REQUIRE(chi.support_radius() == Catch::Approx(3.0));
}

TEST_CASE("polynomial gaussian reaches down to zero frequency", "[chi]") {
    ChiProfile chi = ChiProfile::polynomial_gaussian(1, 1.0);
    REQUIRE(chi(0.0) == 0.0);
    REQUIRE(chi(0.01) > 0.0);
    REQUIRE(chi(1.0) == Catch::Approx(std::exp(-0.5)).epsilon(1e-14));
    REQUIRE(chi.infrared_radius() == 0.0);
    REQUIRE_FALSE(chi.vanishes_near_zero());

    const double tail = chi(chi.support_radius());
    const double peak = chi(1.0);
    REQUIRE(tail * tail < 1e-20 * peak * peak);
}

TEST_CASE("amplitude scales the profile linearly", "[chi]") {
    ChiProfile one = ChiProfile::annular_bump(2.0, 1.0, 1.0);
    ChiProfile two = ChiProfile::annular_bump(2.0, 1.0, 2.0);
    ChiProfile off = ChiProfile::annular_bump(2.0, 1.0, 0.0);
    for (double r : {1.2, 1.9, 2.4, 2.9}) {
        REQUIRE(two(r) == Catch::Approx(2.0 * one(r)).epsilon(1e-14));
        REQUIRE(off(r) == 0.0);
    }
}

TEST_CASE("invalid profile parameters are rejected", "[chi]") {
    REQUIRE_THROWS_AS(ChiProfile::annular_bump(2.0, 0.0), PreconditionError);
    REQUIRE_THROWS_AS(ChiProfile::annular_bump(0.0, 1.0), PreconditionError);
    REQUIRE_THROWS_AS(ChiProfile::polynomial_gaussian(-1, 1.0), PreconditionError);
    REQUIRE_THROWS_AS(ChiProfile::polynomial_gaussian(1, 0.0), PreconditionError);
}
