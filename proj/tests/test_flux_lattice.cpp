#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hoferlike/flux_lattice.hpp"
#include "hoferlike/rng.hpp"

using namespace hoferlike;

TEST_CASE("minimal nonzero lattice norm") {
    CHECK(lattice_min_norm() == 1.0);
    CHECK(lattice_min_norm({2, 2.0}) == 2.0);
    CHECK_THROWS_WITH_AS(lattice_min_norm({0, 1.0}), "trivial lattice has no nonzero element",
                         std::runtime_error);
}

TEST_CASE("distance to the integer lattice") {
    CHECK(distance_to_lattice({2.0, -3.0}) == 0.0);
    CHECK(distance_to_lattice({0.5, 0.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(distance_to_lattice({0.5, 0.5}) ==
          doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("distance is 1-periodic and symmetric under negation") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        const FluxClass v{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        const double d = distance_to_lattice(v);
        CHECK(distance_to_lattice({v.a + 1.0, v.b}) == doctest::Approx(d).epsilon(1e-12));
        CHECK(distance_to_lattice({v.a, v.b - 2.0}) == doctest::Approx(d).epsilon(1e-12));
        CHECK(distance_to_lattice({-v.a, -v.b}) == doctest::Approx(d).epsilon(1e-12));
    }
}

TEST_CASE("lattice membership") {
    CHECK(is_in_lattice({1.0, 1.0}, 1e-9));
    CHECK_FALSE(is_in_lattice({0.3, 0.0}, 0.1));
    CHECK_THROWS_WITH_AS(is_in_lattice({0.0, 0.0}, 0.5),
                         "tolerance exceeds lattice packing radius", std::invalid_argument);
}

TEST_CASE("duality bracketing from candidate energies") {
    const FluxClass flux{0.0, 0.4};
    const DualityBounds one = duality_bounds(flux, {0.4});
    CHECK(one.lower_ratio == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.upper_ratio == doctest::Approx(1.0).epsilon(1e-15));

    const DualityBounds several = duality_bounds(flux, {0.5, 0.4, 1.1});
    CHECK(several.lower_ratio == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(several.upper_ratio == doctest::Approx(1.1 / 0.4).epsilon(1e-15));
    CHECK(several.lower_ratio >= 1.0 - 1e-15);  // candidates above the flux norm

    CHECK_THROWS_WITH_AS(duality_bounds({0.0, 0.0}, {0.4}),
                         "duality bounds undefined at zero flux", std::runtime_error);
    CHECK_THROWS_AS(duality_bounds(flux, {}), std::invalid_argument);
}

TEST_CASE("iterate floors") {
    // irrational flux never re-enters the lattice
    const auto floors = iterate_lower_bound({std::sqrt(2.0) / 10.0, 0.0}, 20);
    REQUIRE(floors.size() == 20);
    for (double f : floors) CHECK(f > 1e-6);

    // (0.5, 0): alternating 0.5, 0, 0.5, 0, ...
    const auto half = iterate_lower_bound({0.5, 0.0}, 4);
    CHECK(half[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(half[1] <= 1e-15);
    CHECK(half[2] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(half[3] <= 1e-15);

    // (0.5, 0.5) doubles into the lattice
    const auto diag = iterate_lower_bound({0.5, 0.5}, 2);
    CHECK(diag[1] <= 1e-15);

    CHECK_THROWS_WITH_AS(iterate_lower_bound({1.0, 0.0}, 5),
                         "bound vacuous for trivial quotient flux", std::runtime_error);
}

TEST_CASE("flux floor prefactor") {
    const FluxFloor f = flux_floor({0.3, 0.4});
    CHECK(f.raw == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f.prefactored == doctest::Approx(0.25).epsilon(1e-15));
}
