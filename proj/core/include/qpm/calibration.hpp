#ifndef QPM_CALIBRATION_HPP
#define QPM_CALIBRATION_HPP

#include <optional>
#include <utility>

#include "qpm/geometry.hpp"
#include "qpm/material.hpp"

namespace qpm {

struct CalibrationOptions {
    double spread_limit_per_um = 5e-5; // admissible K spread among the three processes
    double min_contrast = 1e-3;
    double max_contrast = 0.03;
    // When set, the solution nearest this (delta_n_h, delta_n_v) guess on the
    // mean-K manifold is returned instead of the minimal-contrast one.
    std::optional<std::pair<double, double>> initial_guess;
};

struct CalibrationResult {
    double delta_n_h = 0.0;
    double delta_n_v = 0.0;
    double mean_K = 0.0;      // 1/um, degenerate mean over the case-A triple
    double spread_K = 0.0;    // max - min
    double residual = 0.0;    // |mean_K - target|
    bool spread_within_limit = false;
};

// Pins the step-index contrasts so that the mean of the three case-A QPM
// frequencies at degeneracy (signal = idler = 2 pump wavelength) equals
// target_K. The mean is monotone in delta_n_h at fixed delta_n_v, so each
// manifold point comes from a bracketed bisection; among manifold points the
// smallest contrasts with K spread within the limit win (the spread falls
// exponentially with confinement, so a bare additive penalty has no interior
// optimum). Throws CalibrationError with the best residual when target_K is
// unreachable inside the contrast box.
CalibrationResult calibrate_contrast(const MaterialModel& model, const CouplerGeometry& geometry,
                                     double target_K_per_um, double pump_wavelength_um,
                                     const CalibrationOptions& opts = {});

} // namespace qpm

#endif
