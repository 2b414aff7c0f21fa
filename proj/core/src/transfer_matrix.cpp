#include "qpm/transfer_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qpm/errors.hpp"
#include "qpm/roots.hpp"

namespace qpm {

double transfer_matrix_dispersion(const std::vector<Layer>& profile, double wavelength_um,
                                  bool tm, double neff) {
    const double k0 = 2.0 * M_PI / wavelength_um;
    auto w = [tm](double n) { return tm ? 1.0 / (n * n) : 1.0; };

    const double n_first = profile.front().index;
    const double n_last = profile.back().index;
    const double g0sq = k0 * k0 * (neff * neff - n_first * n_first);
    const double gNsq = k0 * k0 * (neff * neff - n_last * n_last);
    if (g0sq <= 0.0 || gNsq <= 0.0) return std::nan("");

    // decaying toward -inf in the first layer
    double F = 1.0;
    double D = w(n_first) * std::sqrt(g0sq); // weighted derivative
    for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
        const double n = profile[i].index;
        const double t = profile[i].thickness_um;
        const double q = k0 * k0 * (n * n - neff * neff);
        const double wl = w(n);
        const double dY = D / wl;
        double Fn, dYn;
        if (q > 0.0) {
            const double s = std::sqrt(q);
            const double cs = std::cos(s * t), sn = std::sin(s * t);
            Fn = F * cs + dY * sn / s;
            dYn = -F * s * sn + dY * cs;
        } else {
            const double gm = std::sqrt(-q);
            const double ch = std::cosh(gm * t), sh = std::sinh(gm * t);
            Fn = F * ch + dY * sh / gm;
            dYn = F * gm * sh + dY * ch;
        }
        F = Fn;
        D = dYn * wl;
        const double mag = std::max(std::abs(F), std::abs(D));
        if (mag > 1e100) {
            F /= mag;
            D /= mag;
        }
    }
    const double gN = std::sqrt(gNsq);
    const double f = D + w(n_last) * gN * F;
    const double scale = std::max({std::abs(F) * w(n_last) * gN, std::abs(D), 1e-300});
    return f / scale;
}

std::vector<double> transfer_matrix_oracle(const std::vector<Layer>& profile,
                                           double wavelength_um, bool tm,
                                           const std::vector<double>& hints) {
    if (profile.size() < 3) throw ConfigError("transfer matrix needs at least 3 layers");
    double n_max = 0.0;
    for (std::size_t i = 1; i + 1 < profile.size(); ++i)
        n_max = std::max(n_max, profile[i].index);
    const double n_out = std::max(profile.front().index, profile.back().index);
    if (!(n_max > n_out)) return {};

    auto f = [&](double x) { return transfer_matrix_dispersion(profile, wavelength_um, tm, x); };
    return scan_roots(f, n_out, n_max, 3000, hints);
}

} // namespace qpm
