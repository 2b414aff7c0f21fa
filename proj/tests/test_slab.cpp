#include <doctest.h>

#include <cmath>

#include "qpm/quadrature.hpp"
#include "qpm/slab.hpp"
#include "qpm/transfer_matrix.hpp"

using namespace qpm;

namespace {

MaterialModel design_material() { return default_lithium_niobate(); }
CouplerGeometry design_geometry() { return CouplerGeometry{}; }

} // namespace

TEST_CASE("depth slab approaches the bulk limit for a very deep film") {
    const MaterialModel m = design_material();
    CouplerGeometry g = design_geometry();
    g.depth_b_um = 50.0;
    const SlabModeZ zm = solve_slab_z(m, g, 0.675, Polarization::H);
    const double n2 = core_index(m, 0.675, Polarization::H);
    CHECK(zm.neff_z < n2);
    CHECK(n2 - zm.neff_z < 2e-5);
}

TEST_CASE("depth slab fundamental root has tiny residual and matches the oracle") {
    const MaterialModel m = design_material();
    const CouplerGeometry g = design_geometry();
    for (auto [lam, pol] : {std::pair{0.675, Polarization::H}, {1.35, Polarization::V}}) {
        const SlabModeZ zm = solve_slab_z(m, g, lam, pol);
        CHECK(zm.residual < 1e-10);
        const double n3 = substrate_index(m, lam, pol);
        const double n2 = core_index(m, lam, pol);
        const bool tm = pol == Polarization::V;
        const std::vector<Layer> prof = {{0, g.cover_index}, {g.depth_b_um, n2}, {0, n3}};
        const auto oracle = transfer_matrix_oracle(prof, lam, tm);
        REQUIRE(!oracle.empty());
        CHECK(zm.neff_z == doctest::Approx(oracle[0]).epsilon(1e-9));
    }
}

TEST_CASE("depth slab with no bound mode reports the scanned bracket") {
    MaterialModel m = design_material();
    m.delta_n_v = 1e-4;
    CouplerGeometry g = design_geometry();
    g.depth_b_um = 0.05; // far below cutoff of the asymmetric slab
    CHECK_THROWS_AS(solve_slab_z(m, g, 1.35, Polarization::V), NoModeError);
}

TEST_CASE("printed quotient form of the depth-slab eigenvalue equation holds at the root") {
    const MaterialModel m = design_material();
    const CouplerGeometry g = design_geometry();
    for (auto [lam, pol] : {std::pair{1.35, Polarization::H}, {1.35, Polarization::V}}) {
        const SlabModeZ zm = solve_slab_z(m, g, lam, pol);
        const double k0 = 2.0 * M_PI / lam;
        const double n3 = substrate_index(m, lam, pol);
        const double n2 = core_index(m, lam, pol);
        const double q = slab_z_dispersion_quotient(zm.neff_z, k0, g.cover_index, n2, n3,
                                                    g.depth_b_um, pol == Polarization::V);
        CHECK(std::abs(q) < 1e-8); // tan(sigma b) form, away from its poles here
    }
}

TEST_CASE("coupler triplet at the signal wavelength: ordering, parity, residuals") {
    const MaterialModel m = design_material();
    const CouplerGeometry g = design_geometry();
    for (Polarization pol : {Polarization::H, Polarization::V}) {
        const CouplerYSolution sol = solve_coupler_y(m, g, 1.35, pol);
        CHECK(sol.modes[0].beta_y > sol.modes[1].beta_y);
        CHECK(sol.modes[1].beta_y > sol.modes[2].beta_y);
        CHECK(sol.modes[0].parity == Parity::symmetric);
        CHECK(sol.modes[1].parity == Parity::antisymmetric);
        CHECK(sol.modes[2].parity == Parity::symmetric);
        for (const auto& md : sol.modes) CHECK(md.residual < 1e-10);
    }
}

TEST_CASE("printed quotient eigenvalue equations hold at well-conditioned roots") {
    // at 1.35 um the triplet splitting is resolvable and the lower triplet
    // members sit away from the t1/r1 poles; check the as-printed forms there
    const MaterialModel m = design_material();
    const CouplerGeometry g = design_geometry();
    const double k0 = 2.0 * M_PI / 1.35;
    for (Polarization pol : {Polarization::H, Polarization::V}) {
        const double n3 = substrate_index(m, 1.35, pol);
        const double n2 = core_index(m, 1.35, pol);
        const bool tm = pol == Polarization::H;
        const CouplerYSolution sol = solve_coupler_y(m, g, 1.35, pol);
        for (const auto& md : sol.modes) {
            const double q = coupler_y_dispersion_quotient(md.neff_y, k0, n2, n3, g.width_a_um,
                                                           g.gap_d_um, tm, md.parity);
            // quotient form is ill-conditioned near the clustered triplet; a
            // backward-error certificate: nudging n_eff by 1e-9 must flip or
            // shrink the quotient residual through zero
            const double qp = coupler_y_dispersion_quotient(md.neff_y + 2e-9, k0, n2, n3,
                                                            g.width_a_um, g.gap_d_um, tm,
                                                            md.parity);
            const double qm = coupler_y_dispersion_quotient(md.neff_y - 2e-9, k0, n2, n3,
                                                            g.width_a_um, g.gap_d_um, tm,
                                                            md.parity);
            const bool bracketed = (qp < 0) != (qm < 0);
            const bool tiny = std::abs(q) < 1e-6 * (1.0 + std::abs(qp) + std::abs(qm));
            CHECK((bracketed || tiny));
        }
    }
}

TEST_CASE("decoupled limit: huge gap collapses the triplet onto the isolated guide") {
    const MaterialModel m = design_material();
    CouplerGeometry g = design_geometry();
    g.gap_d_um = 60.0;
    const CouplerYSolution sol = solve_coupler_y(m, g, 1.35, Polarization::H);
    const double k0 = 2.0 * M_PI / 1.35;
    CHECK(std::abs(sol.modes[0].beta_y - sol.modes[2].beta_y) < 1e-6);
    CHECK(std::abs(sol.modes[0].beta_y - sol.modes[1].beta_y) < 1e-6);
    // isolated guide from the independent multilayer oracle
    const double n3 = substrate_index(m, 1.35, Polarization::H);
    const double n2 = core_index(m, 1.35, Polarization::H);
    const auto iso = transfer_matrix_oracle({{0, n3}, {g.width_a_um, n2}, {0, n3}}, 1.35, true);
    REQUIRE(!iso.empty());
    CHECK(std::abs(sol.modes[0].beta_y - k0 * iso[0]) < 1e-6);
}

TEST_CASE("mode splitting decreases strictly with gap width") {
    const MaterialModel m = design_material();
    CouplerGeometry g = design_geometry();
    double prev = 1e300;
    for (double d : {4.0, 6.0, 8.0, 12.0, 16.0, 20.0}) {
        g.gap_d_um = d;
        const CouplerYSolution sol = solve_coupler_y(m, g, 1.35, Polarization::H);
        const double split = sol.modes[0].beta_y - sol.modes[2].beta_y;
        CHECK(split > 0.0);
        CHECK(split < prev);
        prev = split;
    }
}

TEST_CASE("mode-count error when the structure cannot hold a triplet") {
    MaterialModel m = design_material();
    m.delta_n_h = 2e-4; // guides too weak for three modes at this wavelength
    const CouplerGeometry g = design_geometry();
    CHECK_THROWS_AS(solve_coupler_y(m, g, 1.8, Polarization::H), ModeCountError);
}

TEST_CASE("field is continuous across every region boundary") {
    const MaterialModel m = design_material();
    const CouplerGeometry g = design_geometry();
    const CouplerYSolution sol = solve_coupler_y(m, g, 1.35, Polarization::H);
    const double eps = 1e-12; // straddle the boundary well below field variation
    for (const auto& md : sol.modes) {
        for (double yb : {g.width_a_um / 2, g.width_a_um / 2 + g.gap_d_um, md.tail_start()}) {
            const double lo = md.value(yb - eps);
            const double hi = md.value(yb + eps);
            CHECK(std::abs(hi - lo) < 1e-9 * (std::abs(lo) + 0.01));
        }
    }
    const SlabModeZ zm = solve_slab_z(m, g, 1.35, Polarization::V);
    for (double zb : {0.0, -g.depth_b_um}) {
        const double lo = zm.value(zb - eps);
        const double hi = zm.value(zb + eps);
        CHECK(std::abs(hi - lo) < 1e-9 * (std::abs(lo) + 0.01));
    }
}

TEST_CASE("parity of the field is exact") {
    const MaterialModel m = design_material();
    const CouplerGeometry g = design_geometry();
    const CouplerYSolution sol = solve_coupler_y(m, g, 1.35, Polarization::V);
    CHECK(sol.modes[1].value(0.0) == 0.0);
    for (double y : {0.7, 2.9, 5.1, 8.8, 14.3}) {
        CHECK(sol.modes[0].value(y) == sol.modes[0].value(-y));
        CHECK(sol.modes[2].value(y) == sol.modes[2].value(-y));
        CHECK(sol.modes[1].value(y) == -sol.modes[1].value(-y));
    }
}

TEST_CASE("cross-parity y overlap vanishes to quadrature round-off") {
    const MaterialModel m = design_material();
    const CouplerGeometry g = design_geometry();
    const CouplerYSolution sol = solve_coupler_y(m, g, 1.35, Polarization::H);
    const SlabModeY& even = sol.modes[0];
    const SlabModeY& odd = sol.modes[1];
    const double y3 = even.tail_start();
    const double ymax = y3 + 40.0 / even.gamma;
    auto f = [&](double y) { return even.value(y) * odd.value(y); };
    const double v = integrate_panels(
        f, {-ymax, -y3, -(g.width_a_um / 2 + g.gap_d_um), -g.width_a_um / 2, 0.0,
            g.width_a_um / 2, g.width_a_um / 2 + g.gap_d_um, y3, ymax});
    CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("gap-region field matches coefficients recomputed from continuity") {
    const MaterialModel m = design_material();
    const CouplerGeometry g = design_geometry();
    const CouplerYSolution sol = solve_coupler_y(m, g, 1.35, Polarization::H);
    const SlabModeY& md = sol.modes[0];
    // independent reconstruction: match value and (1/n^2)-weighted slope of
    // F cos(kappa y) at y = a/2, then evaluate the cosh/sinh gap field
    const double n3 = substrate_index(m, 1.35, Polarization::H);
    const double n2 = core_index(m, 1.35, Polarization::H);
    const double y1 = g.width_a_um / 2;
    const double val = std::cos(md.kappa * y1);
    const double slope = -md.kappa * std::sin(md.kappa * y1) / (n2 * n2); // w Y'
    const double P = val;
    const double Q = slope * (n3 * n3) / md.gamma;
    const double yprobe = y1 + 0.37 * g.gap_d_um;
    const double t = yprobe - y1;
    const double expected = md.norm * (P * std::cosh(md.gamma * t) + Q * std::sinh(md.gamma * t));
    CHECK(md.value(yprobe) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("slab fields are unit-normalized") {
    const MaterialModel m = design_material();
    const CouplerGeometry g = design_geometry();
    const CouplerYSolution sol = solve_coupler_y(m, g, 1.35, Polarization::H);
    for (const auto& md : sol.modes) {
        const double y3 = md.tail_start();
        const double ymax = y3 + 45.0 / md.gamma;
        auto f = [&](double y) { return md.value(y) * md.value(y); };
        const double total = integrate_adaptive(
            f, {-ymax, -y3, -g.width_a_um / 2, 0.0, g.width_a_um / 2, y3, ymax}, 1e-10);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    }
}
