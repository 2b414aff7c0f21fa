#ifndef QPM_SLAB_HPP
#define QPM_SLAB_HPP

#include <array>
#include <vector>

#include "qpm/geometry.hpp"
#include "qpm/material.hpp"

namespace qpm {

enum class Parity { symmetric, antisymmetric };

// One normal mode of the three-guide planar problem along y, solved on the
// half line and extended by parity. Region parametrization (t local to each
// region, y1 = a/2, y2 = a/2+d, y3 = a/2+d+a):
//   |y| <= y1 : F cos(kappa y)            (symmetric)  /  F sin(kappa y)  (antisymmetric)
//   y1..y2    : P1 cosh(gamma t) + Q1 sinh(gamma t)
//   y2..y3    : P2 cos(kappa t) + Q2 sin(kappa t)
//   beyond y3 : T exp(-gamma t)
struct SlabModeY {
    Polarization pol = Polarization::H;
    int m = 0;
    Parity parity = Parity::symmetric;
    double beta_y = 0.0;  // rad/um
    double neff_y = 0.0;
    double kappa = 0.0;   // rad/um, core transverse wavenumber
    double gamma = 0.0;   // rad/um, gap/cladding decay
    double F = 1.0, P1 = 0.0, Q1 = 0.0, P2 = 0.0, Q2 = 0.0, T = 0.0;
    double norm = 1.0;    // scales the piecewise field to unit L2 norm
    double residual = 0.0;
    double a_um = 0.0, d_um = 0.0;
    // Wide-gap regime (2 gamma d beyond double precision): the region
    // coefficients degenerate and the field is built as the tight-binding
    // combination of the isolated-guide mode instead.
    bool decoupled_field = false;

    // Normalized field value; odd modes carry sign(y).
    double value(double y) const;
    double tail_start() const { return a_um / 2 + d_um + a_um; }
};

// Fundamental bound mode of the asymmetric depth slab (cover n1 / film n2 /
// substrate n3), film occupying -b < z < 0.
struct SlabModeZ {
    Polarization pol = Polarization::H;
    int n = 0;
    double beta_z = 0.0;
    double neff_z = 0.0;
    double sigma = 0.0;  // film transverse wavenumber
    double eta = 0.0;    // cover decay
    double delta = 0.0;  // substrate decay
    double G = 1.0, H1 = 1.0, H2 = 0.0, J = 0.0;
    double norm = 1.0;
    double residual = 0.0;
    int bound_roots_found = 0;
    double b_um = 0.0;

    double value(double z) const;
};

// Dispersion functions. The production form propagates (Y, w Y') across the
// half structure (w = 1/n^2 for the TM orientation) and returns the scaled
// tail-decay defect; it is continuous in n_eff, with the same zeros as the
// quotient eigenvalue equations, which pinch roots against poles of t1/r1 at
// weak coupling and are kept here for verification only.
double coupler_y_dispersion(double neff, double k0, double n2, double n3,
                            double a, double d, bool tm, Parity parity);
double coupler_y_dispersion_quotient(double neff, double k0, double n2, double n3,
                                     double a, double d, bool tm, Parity parity);
double slab_z_dispersion(double neff, double k0, double n1, double n2, double n3,
                         double b, bool tm);
double slab_z_dispersion_quotient(double neff, double k0, double n1, double n2,
                                  double n3, double b, bool tm);

// All guided roots (n_eff, descending) of one parity family; hints enable
// resolution of clustered roots (see roots.hpp).
std::vector<double> coupler_y_family_roots(const MaterialModel& m, const CouplerGeometry& g,
                                           double wavelength_um, Polarization pol, Parity parity,
                                           const std::vector<double>& hints = {});

struct CouplerYSolution {
    std::array<SlabModeY, 3> modes; // m = 0,1,2 by decreasing beta_y
    int total_guided = 0;           // all guided y roots found, both parities
    std::vector<double> sym_roots;  // diagnostics, descending n_eff
    std::vector<double> anti_roots;
};

// Fundamental supermode triplet: top symmetric, top antisymmetric, second
// symmetric root. Throws ModeCountError when fewer than three guided roots
// exist or the triplet ordering is broken. Higher-order families that appear
// at short wavelengths are counted but not returned.
CouplerYSolution solve_coupler_y(const MaterialModel& m, const CouplerGeometry& g,
                                 double wavelength_um, Polarization pol);

// Fundamental root of the depth slab; records how many bound roots exist.
// Throws NoModeError when no bound mode exists (reports scanned bracket).
SlabModeZ solve_slab_z(const MaterialModel& m, const CouplerGeometry& g,
                       double wavelength_um, Polarization pol);

} // namespace qpm

#endif
