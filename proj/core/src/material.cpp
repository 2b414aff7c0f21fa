#include "qpm/material.hpp"

#include <cmath>
#include <string>

namespace qpm {

double Sellmeier::index(double wavelength_um) const {
    const double l2 = wavelength_um * wavelength_um;
    double n2 = 1.0;
    for (std::size_t i = 0; i + 1 < coeffs.size(); i += 2)
        n2 += coeffs[i] * l2 / (l2 - coeffs[i + 1]);
    return std::sqrt(n2);
}

namespace {

void check_window(double wavelength_um) {
    if (!(wavelength_um > kWavelengthMinUm && wavelength_um < kWavelengthMaxUm))
        throw ConfigError("wavelength " + std::to_string(wavelength_um) +
                          " um outside validity window (0.4, 2.0) um");
}

} // namespace

double substrate_index(const MaterialModel& m, double wavelength_um, Polarization pol) {
    check_window(wavelength_um);
    return pol == Polarization::H ? m.sellmeier_ordinary.index(wavelength_um)
                                  : m.sellmeier_extraordinary.index(wavelength_um);
}

double core_index(const MaterialModel& m, double wavelength_um, Polarization pol) {
    const double dn = pol == Polarization::H ? m.delta_n_h : m.delta_n_v;
    return substrate_index(m, wavelength_um, pol) + dn;
}

MaterialModel default_lithium_niobate() {
    MaterialModel m;
    m.sellmeier_ordinary.coeffs = {2.6734, 0.01764, 1.2290, 0.05914, 12.614, 474.60};
    m.sellmeier_extraordinary.coeffs = {2.9804, 0.02047, 0.5981, 0.06660, 8.9543, 416.08};
    // Step contrasts calibrated so the degenerate mean QPM frequency of the
    // 6/7/6 um coupler pumped at 675 nm equals 0.9074 um^-1 (see calibration).
    m.delta_n_h = 0.012177890337430514;
    m.delta_n_v = 0.012224283854166665;
    m.d24 = 1.0;
    return m;
}

} // namespace qpm
