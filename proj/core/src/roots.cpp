#include "qpm/roots.hpp"

#include <algorithm>
#include <cmath>

namespace qpm {

double bisect(const Fn1& f, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // interval at machine resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0) != (fm < 0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    // return the endpoint with the smaller magnitude
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

std::vector<double> scan_interval(const Fn1& f, double lo, double hi, int n) {
    std::vector<double> roots;
    if (n < 2 || !(hi > lo)) return roots;
    const double step = (hi - lo) / (n - 1);
    double xp = lo;
    double vp = f(xp);
    for (int i = 1; i < n; ++i) {
        const double x = (i == n - 1) ? hi : lo + i * step;
        const double v = f(x);
        if (std::isfinite(vp) && std::isfinite(v) && ((vp < 0) != (v < 0)))
            roots.push_back(bisect(f, xp, x));
        xp = x;
        vp = v;
    }
    return roots;
}

std::vector<double> scan_roots(const Fn1& f, double lo, double hi, int n_coarse,
                               const std::vector<double>& hints) {
    const double pad = 1e-9 * (hi - lo);
    lo += pad;
    hi -= pad;
    const double step = (hi - lo) / (n_coarse - 1);

    std::vector<double> roots = scan_interval(f, lo, hi, n_coarse);

    std::vector<double> centers = roots;
    centers.insert(centers.end(), hints.begin(), hints.end());
    std::sort(centers.begin(), centers.end());
    for (double c : centers) {
        const double wlo = std::max(lo, c - 1.5 * step);
        const double whi = std::min(hi, c + 1.5 * step);
        if (!(whi > wlo)) continue;
        for (double r : scan_interval(f, wlo, whi, 2001)) {
            bool dup = false;
            for (double x : roots)
                if (std::abs(x - r) <= 1e-13) { dup = true; break; }
            if (!dup) roots.push_back(r);
        }
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return roots;
}

} // namespace qpm
