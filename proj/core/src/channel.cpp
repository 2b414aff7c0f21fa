#include "qpm/channel.hpp"

#include <cmath>
#include <string>

#include "qpm/quadrature.hpp"

namespace qpm {

double perturbation_correction(const SlabModeY& ym, const SlabModeZ& zm,
                               const MaterialModel& m, const CouplerGeometry& g,
                               double wavelength_um, Polarization pol) {
    const double k0 = 2.0 * M_PI / wavelength_um;
    const double n3 = substrate_index(m, wavelength_um, pol);
    const double n2 = core_index(m, wavelength_um, pol);
    const double delta = n2 * n2 - n3 * n3;
    if (delta == 0.0) return 0.0;

    const double y1 = g.width_a_um / 2;
    const double y2 = y1 + g.gap_d_um;
    const double y3 = ym.tail_start();
    auto y2fun = [&](double y) {
        const double v = ym.value(y);
        return v * v;
    };
    // fields are unit-normalized, so outside fractions are 1 - inside power
    const double in_y =
        2.0 * (integrate_adaptive(y2fun, {0.0, y1}, 1e-10) +
               integrate_adaptive(y2fun, {y2, y3}, 1e-10));
    auto z2fun = [&](double z) {
        const double v = zm.value(z);
        return v * v;
    };
    const double in_z = integrate_adaptive(z2fun, {-g.depth_b_um, 0.0}, 1e-10);
    const double f_y_out = std::max(0.0, 1.0 - in_y);
    const double f_z_out = std::max(0.0, 1.0 - in_z);
    return k0 * k0 * delta * f_y_out * f_z_out;
}

ChannelMode compose_channel_mode(const SlabModeY& ym, const SlabModeZ& zm,
                                 double delta_beta, double wavelength_um) {
    const double k0 = 2.0 * M_PI / wavelength_um;
    // k0^2 n2^2 recovered from the y solution's own decomposition
    const double k0n2_sq = ym.beta_y * ym.beta_y + ym.kappa * ym.kappa;
    const double beta_sq = ym.beta_y * ym.beta_y + zm.beta_z * zm.beta_z - k0n2_sq + delta_beta;
    if (!(beta_sq > 0.0))
        throw SolverError("channel composition gave non-positive beta^2 at " +
                          std::to_string(wavelength_um) + " um (mode " +
                          std::to_string(ym.m) + ")");
    ChannelMode cm;
    cm.pol = ym.pol;
    cm.m = ym.m;
    cm.beta = std::sqrt(beta_sq);
    cm.n_eff = cm.beta / k0;
    cm.delta_beta = delta_beta;
    cm.wavelength_um = wavelength_um;
    cm.y_mode = ym;
    cm.z_mode = zm;
    return cm;
}

std::array<ChannelMode, 3> solve_channel_modes(const MaterialModel& m,
                                               const CouplerGeometry& g,
                                               double wavelength_um, Polarization pol) {
    const CouplerYSolution ys = solve_coupler_y(m, g, wavelength_um, pol);
    const SlabModeZ zm = solve_slab_z(m, g, wavelength_um, pol);
    std::array<ChannelMode, 3> out;
    for (int i = 0; i < 3; ++i) {
        const double db = perturbation_correction(ys.modes[i], zm, m, g, wavelength_um, pol);
        out[i] = compose_channel_mode(ys.modes[i], zm, db, wavelength_um);
    }
    return out;
}

} // namespace qpm
