#ifndef QPM_MATERIAL_HPP
#define QPM_MATERIAL_HPP

#include <vector>

#include "qpm/errors.hpp"

namespace qpm {

// H lies along y (ordinary branch), V along z (extraordinary branch) for a
// z-cut crystal with the optic axis along z.
enum class Polarization { H, V };

inline const char* to_string(Polarization p) { return p == Polarization::H ? "H" : "V"; }

// Sellmeier fit n^2 = 1 + sum_k B_k lam^2 / (lam^2 - C_k), lam in um.
// Coefficients stored flat as B1,C1,B2,C2,...
struct Sellmeier {
    std::vector<double> coeffs;

    double index(double wavelength_um) const;
};

struct MaterialModel {
    Sellmeier sellmeier_ordinary;      // H branch
    Sellmeier sellmeier_extraordinary; // V branch
    double delta_n_h = 0.0;            // core-substrate contrast, H
    double delta_n_v = 0.0;            // core-substrate contrast, V
    double d24 = 1.0;                  // overall scale only; efficiencies are normalized

    void validate() const {
        if (sellmeier_ordinary.coeffs.size() < 2 || sellmeier_ordinary.coeffs.size() % 2 != 0 ||
            sellmeier_extraordinary.coeffs.size() < 2 || sellmeier_extraordinary.coeffs.size() % 2 != 0)
            throw ConfigError("material: Sellmeier coefficient lists must be nonempty B,C pairs");
        if (delta_n_h <= 0 || delta_n_h >= 0.1 || delta_n_v <= 0 || delta_n_v >= 0.1)
            throw ConfigError("material: index contrasts must lie in (0, 0.1)");
    }
};

// Validity window of the dispersion model, um.
inline constexpr double kWavelengthMinUm = 0.4;
inline constexpr double kWavelengthMaxUm = 2.0;

double substrate_index(const MaterialModel& m, double wavelength_um, Polarization pol);
double core_index(const MaterialModel& m, double wavelength_um, Polarization pol);

// Congruent lithium niobate fit of Zelmon, Small and Jundt (1997), undoped,
// valid across this toolkit's 0.4-2.0 um window.
MaterialModel default_lithium_niobate();

} // namespace qpm

#endif
