#ifndef QPM_TRANSFER_MATRIX_HPP
#define QPM_TRANSFER_MATRIX_HPP

#include <vector>

#include "qpm/material.hpp"

namespace qpm {

// Piecewise-constant index profile; first and last layers are semi-infinite
// (their thickness is ignored).
struct Layer {
    double thickness_um = 0.0;
    double index = 1.0;
};

// Independent multilayer oracle: propagates (F, w F') across the full stack
// and scans for guided roots of the outer-decay condition. `tm` selects the
// 1/n^2 interface weighting. Optional hints refine the scan near expected
// clustered roots (each hint only adds local sign-change searches; the
// dispersion function itself stays independent of the closed-form solver).
std::vector<double> transfer_matrix_oracle(const std::vector<Layer>& profile,
                                           double wavelength_um, bool tm,
                                           const std::vector<double>& hints = {});

// Dispersion function exposed for tests.
double transfer_matrix_dispersion(const std::vector<Layer>& profile, double wavelength_um,
                                  bool tm, double neff);

} // namespace qpm

#endif
