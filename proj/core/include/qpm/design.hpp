#ifndef QPM_DESIGN_HPP
#define QPM_DESIGN_HPP

#include <vector>

#include "qpm/spdc.hpp"

namespace qpm {

enum class SweepAxis { signal_wavelength, grating_frequency };

// Efficiency curves on a sweep grid. `raw` holds |F_j|^2 per process; the
// spectrum CSV uses the globally normalized view, crossing detection the
// per-process normalized one (each curve scaled to its own peak, the reading
// under which the curves genuinely meet; the middle process carries an
// intrinsically smaller overlap integral).
struct EfficiencySpectrum {
    SweepAxis axis = SweepAxis::signal_wavelength;
    std::vector<double> grid;                // um (wavelength) or 1/um (grating)
    std::vector<ProcessSpec> processes;
    std::vector<std::vector<double>> raw;    // [process][grid point]

    std::vector<std::vector<double>> normalized_global() const;
    std::vector<std::vector<double>> normalized_per_process() const;
};

struct GratingDesign {
    double K_mean = 0.0;           // 1/um
    double K_spread = 0.0;         // max - min
    double grating_period_um = 0.0; // 2 pi / K_mean
    std::vector<double> K_per_process;
    bool single_grating_feasible = true; // spread within 2% of the mean
};

// Mean process K at degeneracy (signal = idler = 2 pump wavelength); the
// spread beyond 2% of the mean flags single-grating infeasibility in the
// result rather than failing.
GratingDesign design_grating(const ModeBank& bank, int pump_mode, double pump_um,
                             double spread_limit_fraction = 0.02);

// Efficiency vs signal wavelength at fixed grating (modes re-solved per grid
// point, cached in the bank, evaluated in parallel).
EfficiencySpectrum sweep_signal_wavelength(const ModeBank& bank, int pump_mode,
                                           double pump_um, double grating_K,
                                           double lambda_min_um, double lambda_max_um,
                                           int n_points, double length_um);

// Efficiency vs grating frequency at degenerate signal/idler (modes solved once).
EfficiencySpectrum sweep_grating(const ModeBank& bank, int pump_mode, double pump_um,
                                 double k_min, double k_max, int n_points,
                                 double length_um);

struct Crossing {
    double location = 0.0;  // grid units
    double spread = 0.0;    // (max-min)/max of per-process-normalized efficiencies
    std::vector<double> efficiency_at; // per-process-normalized values at the crossing
    bool degenerate = false;           // curves identical within round-off
};

// Minimum-spread point on the grid, sub-grid refined from the pairwise
// difference sign changes of the two extreme curves. Throws DesignError when
// the curves are disjoint (spread never drops below 1).
Crossing find_intersection(const EfficiencySpectrum& spectrum);

struct ToleranceRow {
    double delta_lambda_nm = 0.0;
    double crossing_nm = 0.0;
    double shift_nm = 0.0;
    double pump_retune_nm = 0.0; // -shift/2, restores degeneracy at the moved crossing
    bool crossing_found = false;
};

// Re-evaluates the wavelength sweep with perturbed grating periods
// (period = 2pi/base_K + delta). Lost crossings are flagged per row.
std::vector<ToleranceRow> grating_tolerance(const ModeBank& bank, int pump_mode,
                                            double pump_um, double base_grating_K,
                                            const std::vector<double>& deltas_nm,
                                            double lambda_min_um, double lambda_max_um,
                                            int n_points, double length_um);

// NaN when a curve never falls to half its peak inside the grid.
double curve_fwhm(const std::vector<double>& grid, const std::vector<double>& values);

struct BandwidthReport {
    std::vector<double> widths_a; // FWHM per case-A process, grid units
    std::vector<double> widths_b;
    double ratio_min_b_over_max_a = 0.0;
    bool all_defined = true;
};

BandwidthReport compare_case_bandwidths(const EfficiencySpectrum& case_a,
                                        const EfficiencySpectrum& case_b);

} // namespace qpm

#endif
