#include "qpm/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qpm/threading.hpp"

namespace qpm {

std::vector<std::vector<double>> EfficiencySpectrum::normalized_global() const {
    double peak = 0.0;
    for (const auto& row : raw)
        for (double v : row) peak = std::max(peak, v);
    auto out = raw;
    if (peak > 0.0)
        for (auto& row : out)
            for (double& v : row) v /= peak;
    return out;
}

std::vector<std::vector<double>> EfficiencySpectrum::normalized_per_process() const {
    auto out = raw;
    for (auto& row : out) {
        const double peak = *std::max_element(row.begin(), row.end());
        if (peak > 0.0)
            for (double& v : row) v /= peak;
    }
    return out;
}

GratingDesign design_grating(const ModeBank& bank, int pump_mode, double pump_um,
                             double spread_limit_fraction) {
    const double ls = 2.0 * pump_um;
    GratingDesign d;
    double sum = 0.0;
    for (const ProcessSpec& spec : enumerate_processes(pump_mode)) {
        if (!spec.designated) continue;
        const double K = qpm_frequency(spec, bank, pump_um, ls);
        d.K_per_process.push_back(K);
        sum += K;
    }
    d.K_mean = sum / d.K_per_process.size();
    const auto [mn, mx] = std::minmax_element(d.K_per_process.begin(), d.K_per_process.end());
    d.K_spread = *mx - *mn;
    d.grating_period_um = 2.0 * M_PI / d.K_mean;
    d.single_grating_feasible = d.K_spread <= spread_limit_fraction * std::abs(d.K_mean);
    return d;
}

namespace {

std::vector<ProcessSpec> designated_processes(int pump_mode) {
    std::vector<ProcessSpec> out;
    for (const ProcessSpec& spec : enumerate_processes(pump_mode))
        if (spec.designated) out.push_back(spec);
    return out;
}

} // namespace

EfficiencySpectrum sweep_signal_wavelength(const ModeBank& bank, int pump_mode,
                                           double pump_um, double grating_K,
                                           double lambda_min_um, double lambda_max_um,
                                           int n_points, double length_um) {
    if (n_points < 2) throw ConfigError("wavelength sweep needs at least 2 points");
    if (!(lambda_min_um < 2.0 * pump_um && 2.0 * pump_um < lambda_max_um))
        throw ConfigError("wavelength sweep range must straddle degeneracy");

    EfficiencySpectrum sp;
    sp.axis = SweepAxis::signal_wavelength;
    sp.processes = designated_processes(pump_mode);
    sp.grid.resize(n_points);
    for (int i = 0; i < n_points; ++i)
        sp.grid[i] = lambda_min_um + (lambda_max_um - lambda_min_um) * i / (n_points - 1);
    sp.raw.assign(sp.processes.size(), std::vector<double>(n_points, 0.0));

    parallel_for(n_points, [&](int i) {
        const double ls = sp.grid[i];
        try {
            for (std::size_t j = 0; j < sp.processes.size(); ++j) {
                const std::complex<double> F =
                    coefficient_F(sp.processes[j], bank, pump_um, ls, grating_K, length_um);
                sp.raw[j][i] = std::norm(F);
            }
        } catch (const SolverError& e) {
            throw SolverError("sweep failed at signal wavelength " + std::to_string(ls) +
                              " um: " + e.what());
        }
    });
    return sp;
}

EfficiencySpectrum sweep_grating(const ModeBank& bank, int pump_mode, double pump_um,
                                 double k_min, double k_max, int n_points,
                                 double length_um) {
    if (n_points < 2) throw ConfigError("grating sweep needs at least 2 points");
    const double ls = 2.0 * pump_um;

    EfficiencySpectrum sp;
    sp.axis = SweepAxis::grating_frequency;
    sp.processes = designated_processes(pump_mode);
    sp.grid.resize(n_points);
    for (int i = 0; i < n_points; ++i)
        sp.grid[i] = k_min + (k_max - k_min) * i / (n_points - 1);
    sp.raw.assign(sp.processes.size(), std::vector<double>(n_points, 0.0));

    // modes fixed; delta_k is linear in K
    for (std::size_t j = 0; j < sp.processes.size(); ++j) {
        const double K_req = qpm_frequency(sp.processes[j], bank, pump_um, ls);
        const double I = overlap_integral(sp.processes[j], bank, pump_um, ls);
        const double li = idler_wavelength(pump_um, ls);
        const double N = bank.modes(ls, Polarization::H)[sp.processes[j].signal_mode].n_eff *
                         bank.modes(li, Polarization::V)[sp.processes[j].idler_mode].n_eff;
        for (int i = 0; i < n_points; ++i) {
            const double x = (K_req - sp.grid[i]) * length_um / 2.0;
            const double F = I * sinc(x) / N;
            sp.raw[j][i] = F * F;
        }
    }
    return sp;
}

Crossing find_intersection(const EfficiencySpectrum& spectrum) {
    if (spectrum.processes.size() < 2)
        throw DesignError("crossing detection needs at least 2 processes");
    const auto eff = spectrum.normalized_per_process();
    const int n = static_cast<int>(spectrum.grid.size());

    std::vector<double> spread(n);
    double spread_min = std::numeric_limits<double>::infinity();
    double spread_max = 0.0;
    int best = 0;
    for (int i = 0; i < n; ++i) {
        double mx = 0.0, mn = std::numeric_limits<double>::infinity();
        for (const auto& row : eff) {
            mx = std::max(mx, row[i]);
            mn = std::min(mn, row[i]);
        }
        spread[i] = mx > 0.0 ? (mx - mn) / mx : 1.0;
        if (spread[i] < spread_min) {
            spread_min = spread[i];
            best = i;
        }
        spread_max = std::max(spread_max, spread[i]);
    }

    Crossing c;
    if (spread_max < 1e-14) {
        c.degenerate = true;
        c.location = spectrum.grid[n / 2];
        c.spread = 0.0;
        for (const auto& row : eff) c.efficiency_at.push_back(row[n / 2]);
        return c;
    }
    if (spread_min >= 1.0 - 1e-12)
        throw DesignError("no crossing: curves are disjoint over the whole grid");

    // sub-grid refinement from the sign change of the extreme-curve difference
    double loc = spectrum.grid[best];
    std::size_t hi_idx = 0, lo_idx = 0;
    for (std::size_t j = 0; j < eff.size(); ++j) {
        if (eff[j][best] > eff[hi_idx][best]) hi_idx = j;
        if (eff[j][best] < eff[lo_idx][best]) lo_idx = j;
    }
    if (hi_idx != lo_idx) {
        auto diff = [&](int i) { return eff[hi_idx][i] - eff[lo_idx][i]; };
        for (int i = std::max(0, best - 1); i < std::min(n - 1, best + 1); ++i) {
            const double d0 = diff(i), d1 = diff(i + 1);
            if ((d0 < 0) != (d1 < 0)) {
                const double t = d0 / (d0 - d1);
                loc = spectrum.grid[i] + t * (spectrum.grid[i + 1] - spectrum.grid[i]);
                break;
            }
        }
    }
    c.location = loc;
    c.spread = spread[best];
    for (const auto& row : eff) c.efficiency_at.push_back(row[best]);
    return c;
}

std::vector<ToleranceRow> grating_tolerance(const ModeBank& bank, int pump_mode,
                                            double pump_um, double base_grating_K,
                                            const std::vector<double>& deltas_nm,
                                            double lambda_min_um, double lambda_max_um,
                                            int n_points, double length_um) {
    const double period0 = 2.0 * M_PI / base_grating_K;

    auto crossing_for = [&](double K) -> std::pair<bool, double> {
        const EfficiencySpectrum sp = sweep_signal_wavelength(
            bank, pump_mode, pump_um, K, lambda_min_um, lambda_max_um, n_points, length_um);
        try {
            return {true, find_intersection(sp).location};
        } catch (const DesignError&) {
            return {false, 0.0};
        }
    };

    const auto [base_found, base_loc] = crossing_for(base_grating_K);
    if (!base_found) throw DesignError("tolerance study: no crossing at the base grating");

    std::vector<ToleranceRow> rows;
    for (double d_nm : deltas_nm) {
        ToleranceRow row;
        row.delta_lambda_nm = d_nm;
        const double period = period0 + d_nm * 1e-3;
        const auto [found, loc] = crossing_for(2.0 * M_PI / period);
        row.crossing_found = found;
        if (found) {
            row.crossing_nm = loc * 1000.0;
            row.shift_nm = (loc - base_loc) * 1000.0;
            row.pump_retune_nm = -row.shift_nm / 2.0;
        } else {
            row.crossing_nm = row.shift_nm = row.pump_retune_nm =
                std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(row);
    }
    return rows;
}

double curve_fwhm(const std::vector<double>& grid, const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    int peak = 0;
    for (int i = 1; i < n; ++i)
        if (values[i] > values[peak]) peak = i;
    const double half = values[peak] / 2.0;

    double left = std::numeric_limits<double>::quiet_NaN();
    for (int i = peak; i > 0; --i) {
        if (values[i - 1] < half && half <= values[i]) {
            const double t = (half - values[i - 1]) / (values[i] - values[i - 1]);
            left = grid[i - 1] + t * (grid[i] - grid[i - 1]);
            break;
        }
    }
    double right = std::numeric_limits<double>::quiet_NaN();
    for (int i = peak; i < n - 1; ++i) {
        if (values[i + 1] < half && half <= values[i]) {
            const double t = (values[i] - half) / (values[i] - values[i + 1]);
            right = grid[i] + t * (grid[i + 1] - grid[i]);
            break;
        }
    }
    return right - left; // NaN propagates when either side is undefined
}

BandwidthReport compare_case_bandwidths(const EfficiencySpectrum& case_a,
                                        const EfficiencySpectrum& case_b) {
    BandwidthReport rep;
    for (const auto& row : case_a.raw) rep.widths_a.push_back(curve_fwhm(case_a.grid, row));
    for (const auto& row : case_b.raw) rep.widths_b.push_back(curve_fwhm(case_b.grid, row));
    double max_a = 0.0, min_b = std::numeric_limits<double>::infinity();
    for (double w : rep.widths_a) {
        if (std::isnan(w)) rep.all_defined = false;
        else max_a = std::max(max_a, w);
    }
    for (double w : rep.widths_b) {
        if (std::isnan(w)) rep.all_defined = false;
        else min_b = std::min(min_b, w);
    }
    rep.ratio_min_b_over_max_a = (max_a > 0.0 && std::isfinite(min_b)) ? min_b / max_a : 0.0;
    return rep;
}

} // namespace qpm
