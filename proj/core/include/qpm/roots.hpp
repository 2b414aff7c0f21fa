#ifndef QPM_ROOTS_HPP
#define QPM_ROOTS_HPP

#include <functional>
#include <vector>

namespace qpm {

using Fn1 = std::function<double(double)>;

// Bisection to full double precision on a bracketing interval.
// Requires f(lo)*f(hi) < 0; NaN-free on the interval.
double bisect(const Fn1& f, double lo, double hi);

// Sign-change scan on n uniform samples of [lo, hi]; each bracket bisected.
std::vector<double> scan_interval(const Fn1& f, double lo, double hi, int n);

// Coarse scan plus fine re-scans (2001 points over +-1.5 coarse cells) around
// every coarse root and every hint. Clustered roots pinch within one coarse
// cell near roots of the companion parity family, so callers pass those as
// hints. Returns roots sorted descending, deduplicated at 1e-13.
std::vector<double> scan_roots(const Fn1& f, double lo, double hi, int n_coarse,
                               const std::vector<double>& hints = {});

} // namespace qpm

#endif
