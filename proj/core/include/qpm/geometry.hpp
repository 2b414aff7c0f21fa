#ifndef QPM_GEOMETRY_HPP
#define QPM_GEOMETRY_HPP

#include "qpm/errors.hpp"

namespace qpm {

// Three identical guides of width a separated by gaps d, depth b, interaction
// length L. All transverse lengths in um, interaction length in mm.
struct CouplerGeometry {
    double width_a_um = 6.0;
    double gap_d_um = 6.0;
    double depth_b_um = 7.0;
    double length_L_mm = 2.55;
    double cover_index = 1.0;          // n1 above the film (air by default)
    double grating_period_um = 0.0;    // 0 = not designed yet

    double length_um() const { return length_L_mm * 1000.0; }
    bool has_grating() const { return grating_period_um > 0.0; }

    void validate() const {
        if (width_a_um <= 0 || gap_d_um <= 0 || depth_b_um <= 0 || length_L_mm <= 0)
            throw ConfigError("geometry: all lengths must be strictly positive");
        if (cover_index <= 0)
            throw ConfigError("geometry: cover_index must be positive");
        if (grating_period_um < 0)
            throw ConfigError("geometry: grating_period_um must be positive when set");
    }
};

} // namespace qpm

#endif
