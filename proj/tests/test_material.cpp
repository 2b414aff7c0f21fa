#include <doctest.h>

#include <cmath>

#include "qpm/material.hpp"

using namespace qpm;

// Golden indices computed independently (direct evaluation of the published
// congruent-LiNbO3 fit in a separate script) before this module was written.
static constexpr double kNo675 = 2.2762401832239574;
static constexpr double kNe675 = 2.1934623563172324;
static constexpr double kNo1350 = 2.2183601676522224;
static constexpr double kNe1350 = 2.1437460671713318;

TEST_CASE("substrate index matches independently computed goldens") {
    const MaterialModel m = default_lithium_niobate();
    CHECK(substrate_index(m, 0.675, Polarization::H) == doctest::Approx(kNo675).epsilon(1e-14));
    CHECK(substrate_index(m, 0.675, Polarization::V) == doctest::Approx(kNe675).epsilon(1e-14));
    CHECK(substrate_index(m, 1.350, Polarization::H) == doctest::Approx(kNo1350).epsilon(1e-14));
    CHECK(substrate_index(m, 1.350, Polarization::V) == doctest::Approx(kNe1350).epsilon(1e-14));
}

TEST_CASE("substrate index is deterministic bit for bit") {
    const MaterialModel m = default_lithium_niobate();
    const double a = substrate_index(m, 0.8212345, Polarization::V);
    const double b = substrate_index(m, 0.8212345, Polarization::V);
    CHECK(a == b);
}

TEST_CASE("wavelength window is enforced") {
    const MaterialModel m = default_lithium_niobate();
    CHECK_THROWS_WITH_AS(substrate_index(m, 0.35, Polarization::H),
                         doctest::Contains("(0.4, 2.0)"), ConfigError);
    CHECK_THROWS_AS(substrate_index(m, 2.5, Polarization::V), ConfigError);
    CHECK_THROWS_AS(core_index(m, 0.4, Polarization::H), ConfigError);
}

TEST_CASE("core index is substrate plus the configured contrast at every wavelength") {
    MaterialModel m = default_lithium_niobate();
    m.delta_n_h = 0.01;
    m.delta_n_v = 0.004;
    for (double lam : {0.675, 0.9, 1.35, 1.8}) {
        // one rounding of the sum is the only admissible deviation
        CHECK(core_index(m, lam, Polarization::H) - substrate_index(m, lam, Polarization::H) ==
              doctest::Approx(0.01).epsilon(1e-12));
        CHECK(core_index(m, lam, Polarization::V) - substrate_index(m, lam, Polarization::V) ==
              doctest::Approx(0.004).epsilon(1e-12));
    }
}

TEST_CASE("zero contrast collapses core onto substrate") {
    MaterialModel m = default_lithium_niobate();
    m.delta_n_h = 0.0;
    CHECK(core_index(m, 0.675, Polarization::H) == substrate_index(m, 0.675, Polarization::H));
}

TEST_CASE("birefringence ordering is stable across the window") {
    const MaterialModel m = default_lithium_niobate();
    for (int i = 0; i <= 100; ++i) {
        const double lam = 0.41 + (1.99 - 0.41) * i / 100.0;
        CHECK(substrate_index(m, lam, Polarization::H) >
              substrate_index(m, lam, Polarization::V));
    }
}

TEST_CASE("normal dispersion: both branches strictly decreasing on [0.6, 1.6]") {
    const MaterialModel m = default_lithium_niobate();
    double prev_o = substrate_index(m, 0.6, Polarization::H);
    double prev_e = substrate_index(m, 0.6, Polarization::V);
    for (int i = 1; i <= 100; ++i) {
        const double lam = 0.6 + i * 0.01;
        const double no = substrate_index(m, lam, Polarization::H);
        const double ne = substrate_index(m, lam, Polarization::V);
        CHECK(no < prev_o);
        CHECK(ne < prev_e);
        prev_o = no;
        prev_e = ne;
    }
}

TEST_CASE("indices stay physical over the validity window") {
    const MaterialModel m = default_lithium_niobate();
    for (double lam : {0.41, 0.5, 1.0, 1.5, 1.99}) {
        CHECK(substrate_index(m, lam, Polarization::H) > 1.0);
        CHECK(substrate_index(m, lam, Polarization::V) > 1.0);
    }
}

TEST_CASE("material validation rejects out-of-range contrast") {
    MaterialModel m = default_lithium_niobate();
    m.delta_n_h = 0.15;
    CHECK_THROWS_AS(m.validate(), ConfigError);
    m.delta_n_h = 0.01;
    m.delta_n_v = -0.001;
    CHECK_THROWS_AS(m.validate(), ConfigError);
}
