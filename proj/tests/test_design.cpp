#include <doctest.h>

#include <cmath>

#include "qpm/design.hpp"

using namespace qpm;

namespace {

ModeBank design_bank() { return ModeBank(default_lithium_niobate(), CouplerGeometry{}); }

EfficiencySpectrum synthetic(const std::vector<std::vector<double>>& rows, double lo, double hi) {
    EfficiencySpectrum sp;
    sp.axis = SweepAxis::signal_wavelength;
    const int n = static_cast<int>(rows[0].size());
    sp.grid.resize(n);
    for (int i = 0; i < n; ++i) sp.grid[i] = lo + (hi - lo) * i / (n - 1);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        ProcessSpec spec;
        spec.label = "S" + std::to_string(j);
        sp.processes.push_back(spec);
        sp.raw.push_back(rows[j]);
    }
    return sp;
}

} // namespace

TEST_CASE("grating design reproduces the single-grating working point for both cases") {
    const ModeBank bank = design_bank();
    const GratingDesign a = design_grating(bank, 0, 0.675);
    CHECK(a.K_mean == doctest::Approx(0.9074).epsilon(2e-6));
    CHECK(a.grating_period_um == doctest::Approx(6.9244).epsilon(1e-4));
    CHECK(a.single_grating_feasible);
    CHECK(a.K_spread / a.K_mean < 0.02);
    REQUIRE(a.K_per_process.size() == 3);

    const GratingDesign b = design_grating(bank, 1, 0.675);
    REQUIRE(b.K_per_process.size() == 4);
    CHECK(b.K_mean == doctest::Approx(a.K_mean).epsilon(1e-6));
    CHECK(b.single_grating_feasible);
}

TEST_CASE("wavelength sweep: each curve peaks where its own mismatch vanishes") {
    const ModeBank bank = design_bank();
    const GratingDesign gd = design_grating(bank, 0, 0.675);
    const double L = 2550.0;
    const EfficiencySpectrum sp =
        sweep_signal_wavelength(bank, 0, 0.675, gd.K_mean, 1.340, 1.360, 81, L);
    for (std::size_t j = 0; j < sp.processes.size(); ++j) {
        int peak = 0;
        for (int i = 1; i < 81; ++i)
            if (sp.raw[j][i] > sp.raw[j][peak]) peak = i;
        const double dk_at_peak =
            phase_mismatch(sp.processes[j], bank, 0.675, sp.grid[peak], gd.K_mean);
        // peak within one grid step of the mismatch zero
        const double dk_step =
            std::abs(phase_mismatch(sp.processes[j], bank, 0.675, sp.grid[1], gd.K_mean) -
                     phase_mismatch(sp.processes[j], bank, 0.675, sp.grid[0], gd.K_mean));
        CHECK(std::abs(dk_at_peak) < 1.5 * dk_step);
    }
}

TEST_CASE("halving the interaction length doubles the curve width") {
    const ModeBank bank = design_bank();
    const GratingDesign gd = design_grating(bank, 0, 0.675);
    const EfficiencySpectrum full =
        sweep_signal_wavelength(bank, 0, 0.675, gd.K_mean, 1.325, 1.375, 161, 2550.0);
    const EfficiencySpectrum half =
        sweep_signal_wavelength(bank, 0, 0.675, gd.K_mean, 1.325, 1.375, 161, 1275.0);
    for (std::size_t j = 0; j < full.raw.size(); ++j) {
        const double wf = curve_fwhm(full.grid, full.raw[j]);
        const double wh = curve_fwhm(half.grid, half.raw[j]);
        CHECK(wh / wf == doctest::Approx(2.0).epsilon(0.02));
    }
}

TEST_CASE("grating sweep: curve maxima sit at each process's K_required") {
    const ModeBank bank = design_bank();
    const EfficiencySpectrum sp = sweep_grating(bank, 0, 0.675, 0.9, 0.915, 301, 2550.0);
    for (std::size_t j = 0; j < sp.processes.size(); ++j) {
        const double K_req = qpm_frequency(sp.processes[j], bank, 0.675, 1.35);
        int peak = 0;
        for (int i = 1; i < 301; ++i)
            if (sp.raw[j][i] > sp.raw[j][peak]) peak = i;
        CHECK(std::abs(sp.grid[peak] - K_req) < (sp.grid[1] - sp.grid[0]));
    }
}

TEST_CASE("grating sweep curves are horizontal translates of one shape") {
    const ModeBank bank = design_bank();
    const EfficiencySpectrum sp = sweep_grating(bank, 0, 0.675, 0.89, 0.92, 601, 2550.0);
    const auto eff = sp.normalized_per_process();
    // compare curve 0 shifted by (K1 - K0) against curve 1
    const double k0 = qpm_frequency(sp.processes[0], bank, 0.675, 1.35);
    const double k1 = qpm_frequency(sp.processes[1], bank, 0.675, 1.35);
    const double step = sp.grid[1] - sp.grid[0];
    const int shift = static_cast<int>(std::round((k1 - k0) / step));
    double worst = 0.0;
    for (int i = 100; i + 100 < 601; ++i) {
        const int k = i + shift;
        worst = std::max(worst, std::abs(eff[0][i] - eff[1][k]));
    }
    CHECK(worst < 0.02); // identical sinc^2 shapes up to sub-grid shift and I/N ratios
}

TEST_CASE("synthetic parabolas: crossing recovered to refinement accuracy") {
    // two offset parabola-shaped curves with an exact crossing at x = 0.5
    const int n = 101;
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / (n - 1);
        a[i] = 1.0 - (x - 0.3) * (x - 0.3);
        b[i] = 1.0 - (x - 0.7) * (x - 0.7);
    }
    const auto sp = synthetic({a, b}, 0.0, 1.0);
    const Crossing c = find_intersection(sp);
    CHECK(std::abs(c.location - 0.5) < 1e-3); // within refinement tolerance of span
}

TEST_CASE("identical curves are flagged degenerate with zero spread") {
    std::vector<double> a(51);
    for (int i = 0; i < 51; ++i) a[i] = 1.0 / (1.0 + i);
    const auto sp = synthetic({a, a, a}, 0.0, 1.0);
    const Crossing c = find_intersection(sp);
    CHECK(c.degenerate);
    CHECK(c.spread == 0.0);
}

TEST_CASE("disjoint curves raise a no-crossing error") {
    const int n = 41;
    std::vector<double> a(n, 0.0), b(n, 0.0);
    for (int i = 0; i < n / 2; ++i) a[i] = 1.0;
    for (int i = n / 2 + 1; i < n; ++i) b[i] = 1.0;
    const auto sp = synthetic({a, b}, 0.0, 1.0);
    CHECK_THROWS_AS(find_intersection(sp), DesignError);
}

TEST_CASE("design-point crossing sits at degeneracy for both cases") {
    const ModeBank bank = design_bank();
    const GratingDesign gd = design_grating(bank, 0, 0.675);
    for (int pump_mode : {0, 1}) {
        const EfficiencySpectrum sp = sweep_signal_wavelength(bank, pump_mode, 0.675,
                                                              gd.K_mean, 1.335, 1.365, 121,
                                                              2550.0);
        const Crossing c = find_intersection(sp);
        CHECK(std::abs(c.location * 1000.0 - 1350.0) < 2.0);
        CHECK(c.spread < 0.02);
    }
}

TEST_CASE("tolerance table: zero perturbation row has zero shift") {
    const ModeBank bank = design_bank();
    const GratingDesign gd = design_grating(bank, 0, 0.675);
    const auto rows = grating_tolerance(bank, 0, 0.675, gd.K_mean, {0.0}, 1.335, 1.365, 121,
                                        2550.0);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].crossing_found);
    CHECK(rows[0].shift_nm == 0.0);
    CHECK(rows[0].pump_retune_nm == 0.0);
}

TEST_CASE("tolerance table: shift magnitude is monotone in the period error") {
    const ModeBank bank = design_bank();
    const GratingDesign gd = design_grating(bank, 0, 0.675);
    const auto rows = grating_tolerance(bank, 0, 0.675, gd.K_mean,
                                        {-100.0, -50.0, 0.0, 50.0, 100.0}, 1.29, 1.41, 241,
                                        2550.0);
    REQUIRE(rows.size() == 5);
    for (const auto& r : rows) {
        CHECK(r.crossing_found);
        CHECK(r.pump_retune_nm == -r.shift_nm / 2.0);
    }
    CHECK(std::abs(rows[0].shift_nm) >= std::abs(rows[1].shift_nm));
    CHECK(std::abs(rows[1].shift_nm) >= std::abs(rows[2].shift_nm));
    CHECK(std::abs(rows[3].shift_nm) >= std::abs(rows[2].shift_nm));
    CHECK(std::abs(rows[4].shift_nm) >= std::abs(rows[3].shift_nm));
}

TEST_CASE("bandwidth report: identical spectra give ratio one") {
    std::vector<double> a(81);
    for (int i = 0; i < 81; ++i) {
        const double x = (i - 40.0) / 10.0;
        a[i] = std::exp(-x * x);
    }
    const auto sp = synthetic({a, a}, 0.0, 1.0);
    const BandwidthReport rep = compare_case_bandwidths(sp, sp);
    CHECK(rep.all_defined);
    CHECK(rep.ratio_min_b_over_max_a == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("FWHM of a synthetic sinc^2 curve matches the closed-form width") {
    const double L = 2550.0;
    const int n = 2001;
    std::vector<double> curve(n);
    std::vector<double> grid(n);
    const double k_lo = 0.9, k_hi = 0.915, k_peak = 0.9074;
    for (int i = 0; i < n; ++i) {
        grid[i] = k_lo + (k_hi - k_lo) * i / (n - 1);
        const double x = (k_peak - grid[i]) * L / 2.0;
        const double s = sinc(x);
        curve[i] = s * s;
    }
    EfficiencySpectrum sp;
    sp.axis = SweepAxis::grating_frequency;
    sp.grid = grid;
    sp.processes.resize(1);
    sp.raw = {curve};
    const double width = curve_fwhm(sp.grid, sp.raw[0]);
    // |C|^2 halves at x = +-1.3915573782515073 (independent golden)
    const double expected = 4.0 * 1.39155737825151 / L;
    CHECK(width == doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("undefined width is reported when a curve never reaches half max") {
    std::vector<double> flat(31, 0.8);
    flat[15] = 1.0;
    const auto sp = synthetic({flat}, 0.0, 1.0);
    CHECK(std::isnan(curve_fwhm(sp.grid, sp.raw[0])));
    const BandwidthReport rep = compare_case_bandwidths(sp, sp);
    CHECK(!rep.all_defined);
}

TEST_CASE("grid refinement keeps the crossing stable") {
    const ModeBank bank = design_bank();
    const GratingDesign gd = design_grating(bank, 0, 0.675);
    const auto sp1 = sweep_signal_wavelength(bank, 0, 0.675, gd.K_mean, 1.34, 1.36, 81, 2550.0);
    const auto sp2 = sweep_signal_wavelength(bank, 0, 0.675, gd.K_mean, 1.34, 1.36, 161, 2550.0);
    const Crossing c1 = find_intersection(sp1);
    const Crossing c2 = find_intersection(sp2);
    CHECK(std::abs(c1.location - c2.location) * 1000.0 < 0.5); // < 0.5 nm
}

TEST_CASE("sweep validates its range and point count") {
    const ModeBank bank = design_bank();
    CHECK_THROWS_AS(sweep_signal_wavelength(bank, 0, 0.675, 0.9, 1.36, 1.40, 41, 2550.0),
                    ConfigError); // does not straddle degeneracy
    CHECK_THROWS_AS(sweep_signal_wavelength(bank, 0, 0.675, 0.9, 1.3, 1.4, 1, 2550.0),
                    ConfigError);
}
