#include "qpm/slab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpm/quadrature.hpp"
#include "qpm/roots.hpp"

namespace qpm {

namespace {

constexpr int kCoarseScan = 3000;

struct YParams {
    double k0, n2, n3, a, d;
    bool tm;
};

inline double wfactor(bool tm, double n) { return tm ? 1.0 / (n * n) : 1.0; }

} // namespace

double coupler_y_dispersion(double neff, double k0, double n2, double n3,
                            double a, double d, bool tm, Parity parity) {
    const double q2 = k0 * k0 * (n2 * n2 - neff * neff);
    const double q3 = k0 * k0 * (neff * neff - n3 * n3);
    if (q2 <= 0.0 || q3 <= 0.0) return std::nan("");
    const double kap = std::sqrt(q2);
    const double gam = std::sqrt(q3);
    const double w2 = wfactor(tm, n2);
    const double w3 = wfactor(tm, n3);

    // center half-guide [0, a/2]; D carries the weighted derivative w*Y'
    double Y, D;
    if (parity == Parity::symmetric) {
        Y = std::cos(kap * a / 2);
        D = -w2 * kap * std::sin(kap * a / 2);
    } else {
        Y = std::sin(kap * a / 2);
        D = w2 * kap * std::cos(kap * a / 2);
    }
    // gap of width d
    {
        const double c = std::cosh(gam * d), s = std::sinh(gam * d);
        const double Yn = Y * c + (D / w3) * s / gam;
        D = w3 * (Y * gam * s + (D / w3) * c);
        Y = Yn;
    }
    // outer guide of width a
    {
        const double c = std::cos(kap * a), s = std::sin(kap * a);
        const double Yn = Y * c + (D / w2) * s / kap;
        D = w2 * (-Y * kap * s + (D / w2) * c);
        Y = Yn;
    }
    // decay into the outer cladding: w3 Y' = -w3 gamma Y
    const double f = D + w3 * gam * Y;
    const double scale = std::max({std::abs(Y) * w3 * gam, std::abs(D), 1e-300});
    return f / scale;
}

double coupler_y_dispersion_quotient(double neff, double k0, double n2, double n3,
                                     double a, double d, bool tm, Parity parity) {
    const double q2 = k0 * k0 * (n2 * n2 - neff * neff);
    const double q3 = k0 * k0 * (neff * neff - n3 * n3);
    if (q2 <= 0.0 || q3 <= 0.0) return std::nan("");
    const double kap = std::sqrt(q2);
    const double gam = std::sqrt(q3);
    const double ta = std::tan(kap * a);

    double t1, rhs_scale;
    if (tm) {
        const double w = (n2 / n3) * (n2 / n3);
        t1 = kap * (1.0 / w) * ((kap / gam) * ta - w) / ((kap / gam) + w * ta);
        rhs_scale = w;
    } else {
        t1 = kap * (kap * ta - gam) / (kap + gam * ta);
        rhs_scale = 1.0;
    }
    const double th = std::tanh(gam * d);
    const double rhs = rhs_scale * (th - t1 / gam) / (1.0 - (t1 / gam) * th);
    const double lhs = parity == Parity::symmetric
                           ? (kap / gam) * std::tan(kap * a / 2)
                           : -(kap / gam) / std::tan(kap * a / 2);
    return lhs - rhs;
}

double slab_z_dispersion(double neff, double k0, double n1, double n2, double n3,
                         double b, bool tm) {
    const double q2 = k0 * k0 * (n2 * n2 - neff * neff);
    const double q1 = k0 * k0 * (neff * neff - n1 * n1);
    const double q3 = k0 * k0 * (neff * neff - n3 * n3);
    if (q2 <= 0.0 || q1 <= 0.0 || q3 <= 0.0) return std::nan("");
    const double sig = std::sqrt(q2);
    const double eta = std::sqrt(q1);
    const double dlt = std::sqrt(q3);
    const double w1 = wfactor(tm, n1);
    const double w2 = wfactor(tm, n2);
    const double w3 = wfactor(tm, n3);

    // start at z = 0 with cover decay, march down the film to z = -b
    double Y = 1.0;
    double D = -w1 * eta; // weighted derivative
    const double c = std::cos(sig * b), s = std::sin(sig * b);
    const double Yb = Y * c - (D / w2) * s / sig;
    const double Db = w2 * (Y * sig * s + (D / w2) * c);
    // substrate decay: Y' = +delta Y as z decreases
    const double f = Db - w3 * dlt * Yb;
    const double scale = std::max({std::abs(Yb) * w3 * dlt, std::abs(Db), 1e-300});
    return f / scale;
}

double slab_z_dispersion_quotient(double neff, double k0, double n1, double n2,
                                  double n3, double b, bool tm) {
    const double q2 = k0 * k0 * (n2 * n2 - neff * neff);
    const double q1 = k0 * k0 * (neff * neff - n1 * n1);
    const double q3 = k0 * k0 * (neff * neff - n3 * n3);
    if (q2 <= 0.0 || q1 <= 0.0 || q3 <= 0.0) return std::nan("");
    const double sig = std::sqrt(q2);
    const double eta = std::sqrt(q1);
    const double dlt = std::sqrt(q3);
    double dd = dlt, ee = eta;
    if (tm) {
        dd *= (n2 / n3) * (n2 / n3);
        ee *= (n2 / n1) * (n2 / n1);
    }
    return std::tan(sig * b) - sig * (dd + ee) / (sig * sig - dd * ee);
}

namespace {

// Isolated-guide fundamental evaluated at the triplet's own kappa/gamma:
// cos core, exponential tails, continuous at the guide edge.
double isolated_guide_field(double xi, double kappa, double gamma, double a) {
    const double xa = std::abs(xi);
    if (xa <= a / 2) return std::cos(kappa * xa);
    return std::cos(kappa * a / 2) * std::exp(-gamma * (xa - a / 2));
}

} // namespace

double SlabModeY::value(double y) const {
    if (decoupled_field) {
        // supermode weights of the symmetric triple well: (1,sqrt2,1)/2,
        // (-1,0,1)/sqrt2, (-1,sqrt2,-1)/2 over (left, center, right)
        const double pitch = a_um + d_um;
        const double l = isolated_guide_field(y + pitch, kappa, gamma, a_um);
        const double c = isolated_guide_field(y, kappa, gamma, a_um);
        const double r = isolated_guide_field(y - pitch, kappa, gamma, a_um);
        double v;
        if (m == 0)
            v = 0.5 * (l + std::sqrt(2.0) * c + r);
        else if (m == 1)
            v = (r - l) / std::sqrt(2.0);
        else
            v = 0.5 * (std::sqrt(2.0) * c - l - r);
        return norm * v;
    }
    const double y1 = a_um / 2, y2 = a_um / 2 + d_um, y3 = tail_start();
    const double ya = std::abs(y);
    const double sign = (parity == Parity::antisymmetric && y < 0) ? -1.0 : 1.0;
    double v;
    if (ya <= y1) {
        v = parity == Parity::symmetric ? F * std::cos(kappa * ya) : F * std::sin(kappa * ya);
    } else if (ya <= y2) {
        const double t = ya - y1;
        v = P1 * std::cosh(gamma * t) + Q1 * std::sinh(gamma * t);
    } else if (ya <= y3) {
        const double t = ya - y2;
        v = P2 * std::cos(kappa * t) + Q2 * std::sin(kappa * t);
    } else {
        v = T * std::exp(-gamma * (ya - y3));
    }
    return norm * sign * v;
}

double SlabModeZ::value(double z) const {
    double v;
    if (z >= 0.0) {
        v = G * std::exp(-eta * z);
    } else if (z >= -b_um) {
        v = H1 * std::cos(sigma * z) + H2 * std::sin(sigma * z);
    } else {
        v = J * std::exp(delta * (z + b_um));
    }
    return norm * v;
}

std::vector<double> coupler_y_family_roots(const MaterialModel& m, const CouplerGeometry& g,
                                           double wavelength_um, Polarization pol, Parity parity,
                                           const std::vector<double>& hints) {
    const double k0 = 2.0 * M_PI / wavelength_um;
    const double n3 = substrate_index(m, wavelength_um, pol);
    const double n2 = core_index(m, wavelength_um, pol);
    const bool tm = (pol == Polarization::H); // y-polarized field is TM along y
    auto f = [&](double x) {
        return coupler_y_dispersion(x, k0, n2, n3, g.width_a_um, g.gap_d_um, tm, parity);
    };
    return scan_roots(f, n3, n2, kCoarseScan, hints);
}

namespace {

SlabModeY build_y_mode(const MaterialModel& m, const CouplerGeometry& g,
                       double wavelength_um, Polarization pol, Parity parity,
                       int mode_number, double neff) {
    const double k0 = 2.0 * M_PI / wavelength_um;
    const double n3 = substrate_index(m, wavelength_um, pol);
    const double n2 = core_index(m, wavelength_um, pol);
    const bool tm = (pol == Polarization::H);
    const double w2 = wfactor(tm, n2);
    const double w3 = wfactor(tm, n3);

    SlabModeY md;
    md.pol = pol;
    md.m = mode_number;
    md.parity = parity;
    md.neff_y = neff;
    md.beta_y = k0 * neff;
    md.kappa = k0 * std::sqrt(std::max(n2 * n2 - neff * neff, 0.0));
    md.gamma = k0 * std::sqrt(std::max(neff * neff - n3 * n3, 0.0));
    md.a_um = g.width_a_um;
    md.d_um = g.gap_d_um;
    md.residual = std::abs(coupler_y_dispersion(neff, k0, n2, n3, g.width_a_um,
                                                g.gap_d_um, tm, parity));

    // Propagating coefficients across the gap loses the outer-guide amplitude
    // once exp(2 gamma d) exceeds double precision; switch to the
    // tight-binding combination of the isolated-guide mode there.
    md.decoupled_field = 2.0 * md.gamma * g.gap_d_um > 33.0;
    if (!md.decoupled_field) {
        const double half_a = g.width_a_um / 2;
        md.F = 1.0;
        double Y, D; // D = w Y'
        if (parity == Parity::symmetric) {
            Y = std::cos(md.kappa * half_a);
            D = -w2 * md.kappa * std::sin(md.kappa * half_a);
        } else {
            Y = std::sin(md.kappa * half_a);
            D = w2 * md.kappa * std::cos(md.kappa * half_a);
        }
        md.P1 = Y;
        md.Q1 = (D / w3) / md.gamma;
        {
            const double c = std::cosh(md.gamma * g.gap_d_um);
            const double s = std::sinh(md.gamma * g.gap_d_um);
            md.P2 = md.P1 * c + md.Q1 * s;
            md.Q2 = (w3 / w2) * md.gamma * (md.P1 * s + md.Q1 * c) / md.kappa;
        }
        md.T = md.P2 * std::cos(md.kappa * g.width_a_um) +
               md.Q2 * std::sin(md.kappa * g.width_a_um);
    }

    // unit L2 norm over the full line (|Y|^2 is even for both parities)
    const double y1 = g.width_a_um / 2, y2 = g.width_a_um / 2 + g.gap_d_um, y3 = md.tail_start();
    const double tail = 45.0 / md.gamma;
    auto f2 = [&](double y) {
        const double v = md.value(y);
        return v * v;
    };
    md.norm = 1.0;
    const double total = 2.0 * integrate_adaptive(f2, {0.0, y1, y2, y3, y3 + tail}, 1e-10);
    md.norm = 1.0 / std::sqrt(total);
    return md;
}

} // namespace

CouplerYSolution solve_coupler_y(const MaterialModel& m, const CouplerGeometry& g,
                                 double wavelength_um, Polarization pol) {
    g.validate();
    CouplerYSolution sol;
    std::vector<double> sym = coupler_y_family_roots(m, g, wavelength_um, pol, Parity::symmetric);
    std::vector<double> anti =
        coupler_y_family_roots(m, g, wavelength_um, pol, Parity::antisymmetric, sym);
    sym = coupler_y_family_roots(m, g, wavelength_um, pol, Parity::symmetric, anti);
    sol.sym_roots = sym;
    sol.anti_roots = anti;
    sol.total_guided = static_cast<int>(sym.size() + anti.size());

    const char* where = pol == Polarization::H ? "H" : "V";
    if (anti.empty() || sym.empty())
        throw ModeCountError("coupler supports fewer than 3 guided y-modes (" +
                                 std::string(where) + " at " + std::to_string(wavelength_um) +
                                 " um): found " + std::to_string(sol.total_guided),
                             sol.total_guided);

    // Fundamental triplet assembly. The top mode of a symmetric structure is
    // even; when the symmetric pair's splitting falls below what the scan can
    // see (deep decoupling), its members are synthesized at the antisymmetric
    // root, which interlaces them to the same precision.
    const double a0 = anti[0];
    const double cluster_eps = 1e-8 * a0;
    double s0, s2;
    if (sym[0] < a0 - cluster_eps) {
        s0 = s2 = a0; // whole symmetric pair lost in round-off
    } else {
        s0 = sym[0];
        const double gap_up = std::max(s0 - a0, 0.0);
        const double accept = std::max(4.0 * gap_up, cluster_eps);
        if (sym.size() >= 2 && sym[1] >= a0 - accept) {
            s2 = sym[1];
        } else if (gap_up <= cluster_eps) {
            s2 = a0; // lower pair member lost in round-off
        } else {
            throw ModeCountError("coupler y-mode triplet incomplete (" + std::string(where) +
                                     " at " + std::to_string(wavelength_um) + " um)",
                                 sol.total_guided);
        }
    }
    if (!(s0 >= a0 - cluster_eps && a0 >= s2 - cluster_eps))
        throw ModeCountError("coupler y-mode triplet ordering broken", sol.total_guided);

    sol.modes[0] = build_y_mode(m, g, wavelength_um, pol, Parity::symmetric, 0, s0);
    sol.modes[1] = build_y_mode(m, g, wavelength_um, pol, Parity::antisymmetric, 1, a0);
    sol.modes[2] = build_y_mode(m, g, wavelength_um, pol, Parity::symmetric, 2, s2);
    return sol;
}

SlabModeZ solve_slab_z(const MaterialModel& m, const CouplerGeometry& g,
                       double wavelength_um, Polarization pol) {
    g.validate();
    const double k0 = 2.0 * M_PI / wavelength_um;
    const double n1 = g.cover_index;
    const double n3 = substrate_index(m, wavelength_um, pol);
    const double n2 = core_index(m, wavelength_um, pol);
    if (!(n2 > n3 && n3 > n1))
        throw ConfigError("slab_z requires n_core > n_substrate > n_cover");
    const bool tm = (pol == Polarization::V); // z-polarized field is TM along z

    auto f = [&](double x) { return slab_z_dispersion(x, k0, n1, n2, n3, g.depth_b_um, tm); };
    const double lo = std::max(n1, n3);
    std::vector<double> roots = scan_roots(f, lo, n2, kCoarseScan);
    if (roots.empty())
        throw NoModeError("no bound z-mode in n_eff bracket (" + std::to_string(lo) + ", " +
                          std::to_string(n2) + ") at " + std::to_string(wavelength_um) + " um");

    SlabModeZ md;
    md.pol = pol;
    md.n = 0;
    md.bound_roots_found = static_cast<int>(roots.size());
    md.neff_z = roots[0];
    md.beta_z = k0 * md.neff_z;
    md.sigma = k0 * std::sqrt(std::max(n2 * n2 - md.neff_z * md.neff_z, 0.0));
    md.eta = k0 * std::sqrt(std::max(md.neff_z * md.neff_z - n1 * n1, 0.0));
    md.delta = k0 * std::sqrt(std::max(md.neff_z * md.neff_z - n3 * n3, 0.0));
    md.b_um = g.depth_b_um;
    md.residual = std::abs(f(md.neff_z));

    const double w1 = wfactor(tm, n1);
    const double w2 = wfactor(tm, n2);
    md.G = 1.0;
    md.H1 = 1.0;
    md.H2 = -(w1 / w2) * md.eta / md.sigma;
    md.J = md.H1 * std::cos(md.sigma * md.b_um) - md.H2 * std::sin(md.sigma * md.b_um);

    auto f2 = [&](double z) {
        const double v = md.value(z);
        return v * v;
    };
    md.norm = 1.0;
    const double total = integrate_adaptive(
        f2, {-md.b_um - 45.0 / md.delta, -md.b_um, 0.0, 45.0 / md.eta}, 1e-10);
    md.norm = 1.0 / std::sqrt(total);
    return md;
}

} // namespace qpm
