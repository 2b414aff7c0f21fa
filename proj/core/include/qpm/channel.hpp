#ifndef QPM_CHANNEL_HPP
#define QPM_CHANNEL_HPP

#include <array>

#include "qpm/slab.hpp"

namespace qpm {

// 2D channel mode composed from the separable y and z solutions:
//   beta^2 = beta_y^2 + beta_z^2 - k0^2 n2^2 + delta_beta
// with the corner-region perturbation correction delta_beta. The field
// u(y,z) = Y(y) Z(z) integrates to unit power (both factors unit-normalized).
struct ChannelMode {
    Polarization pol = Polarization::H;
    int m = 0;
    double beta = 0.0;   // rad/um, corrected
    double n_eff = 0.0;
    double delta_beta = 0.0; // rad^2/um^2
    double wavelength_um = 0.0;
    SlabModeY y_mode;
    SlabModeZ z_mode;

    double field_at(double y, double z) const { return y_mode.value(y) * z_mode.value(z); }
};

// Corner-region first-order correction to beta^2: the separable profile
// undershoots the true one by Delta = n2^2 - n3^2 wherever y lies outside the
// guides and z outside the film, so
//   delta_beta = k0^2 Delta * (power fraction outside guides in y)
//                           * (power fraction outside film in z).
double perturbation_correction(const SlabModeY& ym, const SlabModeZ& zm,
                               const MaterialModel& m, const CouplerGeometry& g,
                               double wavelength_um, Polarization pol);

// Throws SolverError when the composed beta^2 is not positive.
ChannelMode compose_channel_mode(const SlabModeY& ym, const SlabModeZ& zm,
                                 double delta_beta, double wavelength_um);

// Full triplet of channel modes at one (wavelength, polarization).
std::array<ChannelMode, 3> solve_channel_modes(const MaterialModel& m,
                                               const CouplerGeometry& g,
                                               double wavelength_um, Polarization pol);

} // namespace qpm

#endif
