#include "qpm/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qpm/channel.hpp"
#include "qpm/spdc.hpp"

namespace qpm {

namespace {

struct MeanSpread {
    double mean = 0.0;
    double spread = 0.0;
};

// Degenerate case-A K statistics for one contrast pair; nullopt when the
// triplet does not exist somewhere along the pipeline.
std::optional<MeanSpread> evaluate(const MaterialModel& base, const CouplerGeometry& g,
                                   double lp, double dh, double dv) {
    MaterialModel m = base;
    m.delta_n_h = dh;
    m.delta_n_v = dv;
    const double ls = 2.0 * lp;
    try {
        const auto pump = solve_channel_modes(m, g, lp, Polarization::H);
        const auto sig = solve_channel_modes(m, g, ls, Polarization::H);
        const auto idl = solve_channel_modes(m, g, ls, Polarization::V);
        double kmin = 0.0, kmax = 0.0, sum = 0.0;
        for (int j = 0; j < 3; ++j) {
            const double K = pump[0].beta - sig[j].beta - idl[j].beta;
            if (j == 0) kmin = kmax = K;
            kmin = std::min(kmin, K);
            kmax = std::max(kmax, K);
            sum += K;
        }
        return MeanSpread{sum / 3.0, kmax - kmin};
    } catch (const SolverError&) {
        return std::nullopt;
    }
}

} // namespace

CalibrationResult calibrate_contrast(const MaterialModel& model, const CouplerGeometry& geometry,
                                     double target_K_per_um, double pump_wavelength_um,
                                     const CalibrationOptions& opts) {
    if (!(target_K_per_um > 0.0)) throw ConfigError("calibration target K must be positive");
    const double lo = opts.min_contrast, hi = opts.max_contrast;
    if (!(lo > 0.0 && hi < 0.1 && hi > lo))
        throw ConfigError("calibration contrast bounds must satisfy 0 < min < max < 0.1");

    // Solve mean_K(dh; dv) = target by bisection per dv grid line
    // (mean_K is monotone increasing in dh).
    auto solve_dh = [&](double dv) -> std::optional<double> {
        std::optional<double> below, above;
        const int n_probe = 14;
        for (int i = 0; i < n_probe && !above; ++i) {
            const double dh = lo + (hi - lo) * i / (n_probe - 1);
            const auto ev = evaluate(model, geometry, pump_wavelength_um, dh, dv);
            if (!ev) continue;
            const double f = ev->mean - target_K_per_um;
            if (f < 0.0)
                below = dh;
            else if (below)
                above = dh;
            else
                return std::nullopt; // already above target at the smallest workable contrast
        }
        if (!below || !above) return std::nullopt;
        double bl = *below, bh = *above;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (bl + bh);
            const auto ev = evaluate(model, geometry, pump_wavelength_um, mid, dv);
            if (!ev) { bh = mid; continue; } // interior failures sit at the top of the box
            const double f = ev->mean - target_K_per_um;
            if (std::abs(f) < 1e-8 || bh - bl < 1e-9) return mid;
            if (f < 0.0) bl = mid; else bh = mid;
        }
        return 0.5 * (bl + bh);
    };

    struct Candidate {
        double dh, dv, mean, spread;
    };
    std::vector<Candidate> manifold;
    double best_residual = std::abs(target_K_per_um); // residual of "no solution at all"

    const int n_dv = 13;
    for (int i = 0; i < n_dv; ++i) {
        const double dv = lo + (hi - lo) * i / (n_dv - 1);
        const auto dh = solve_dh(dv);
        if (!dh) {
            // record the closest approach for the failure report
            for (double probe : {lo, 0.5 * (lo + hi), hi}) {
                const auto ev = evaluate(model, geometry, pump_wavelength_um, probe, dv);
                if (ev) best_residual = std::min(best_residual,
                                                 std::abs(ev->mean - target_K_per_um));
            }
            continue;
        }
        const auto ev = evaluate(model, geometry, pump_wavelength_um, *dh, dv);
        if (!ev) continue;
        manifold.push_back({*dh, dv, ev->mean, ev->spread});
        best_residual = std::min(best_residual, std::abs(ev->mean - target_K_per_um));
    }

    if (manifold.empty())
        throw CalibrationError("no contrast pair in bounds reaches target K = " +
                                   std::to_string(target_K_per_um) +
                                   " 1/um; best residual " + std::to_string(best_residual),
                               best_residual);

    Candidate chosen{};
    if (opts.initial_guess) {
        const auto [gh, gv] = *opts.initial_guess;
        double best = 1e300;
        for (const auto& c : manifold) {
            const double d2 = (c.dh - gh) * (c.dh - gh) + (c.dv - gv) * (c.dv - gv);
            if (d2 < best) { best = d2; chosen = c; }
        }
        // refine the dv coordinate toward the guess inside the bracketing cell
        const double dv_lo = std::max(lo, std::min(chosen.dv, gv) - (hi - lo) / (n_dv - 1));
        const double dv_hi = std::min(hi, std::max(chosen.dv, gv) + (hi - lo) / (n_dv - 1));
        const double dv_ref = std::clamp(gv, dv_lo, dv_hi);
        if (const auto dh_ref = solve_dh(dv_ref)) {
            if (const auto ev = evaluate(model, geometry, pump_wavelength_um, *dh_ref, dv_ref))
                chosen = {*dh_ref, dv_ref, ev->mean, ev->spread};
        }
    } else {
        // minimal contrast subject to the spread limit; fall back to the
        // smallest spread when nothing meets it
        bool found = false;
        for (const auto& c : manifold) { // manifold is ordered by increasing dv
            if (c.spread <= opts.spread_limit_per_um) { chosen = c; found = true; break; }
        }
        if (found) {
            // zoom: bisect dv between the last failing and first passing line
            double dv_bad = lo;
            for (const auto& c : manifold) {
                if (c.dv >= chosen.dv) break;
                dv_bad = c.dv;
            }
            double dv_good = chosen.dv;
            for (int it = 0; it < 12 && dv_good - dv_bad > 1e-5; ++it) {
                const double mid = 0.5 * (dv_bad + dv_good);
                const auto dh = solve_dh(mid);
                if (!dh) { dv_bad = mid; continue; }
                const auto ev = evaluate(model, geometry, pump_wavelength_um, *dh, mid);
                if (ev && ev->spread <= opts.spread_limit_per_um) {
                    dv_good = mid;
                    chosen = {*dh, mid, ev->mean, ev->spread};
                } else {
                    dv_bad = mid;
                }
            }
        } else {
            chosen = *std::min_element(manifold.begin(), manifold.end(),
                                       [](const Candidate& a, const Candidate& b) {
                                           return a.spread < b.spread;
                                       });
        }
    }

    CalibrationResult r;
    r.delta_n_h = chosen.dh;
    r.delta_n_v = chosen.dv;
    r.mean_K = chosen.mean;
    r.spread_K = chosen.spread;
    r.residual = std::abs(chosen.mean - target_K_per_um);
    r.spread_within_limit = chosen.spread <= opts.spread_limit_per_um;
    if (r.residual > 1e-4)
        throw CalibrationError("calibration bisection failed to reach target within 1e-4: residual " +
                                   std::to_string(r.residual),
                               r.residual);
    return r;
}

} // namespace qpm
