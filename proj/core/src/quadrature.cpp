#include "qpm/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <unordered_map>

#include "qpm/errors.hpp"

namespace qpm {

namespace {

struct GaussRule {
    std::vector<double> x; // nodes on (-1, 1)
    std::vector<double> w;
};

// Nodes by Newton iteration on Legendre polynomials; computed once per order.
GaussRule make_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

const GaussRule& rule(int n) {
    static std::mutex mu;
    static std::unordered_map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

double panel(const std::function<double(double)>& f, double a, double b, const GaussRule& g) {
    const double xm = 0.5 * (a + b);
    const double xr = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(xm + xr * g.x[i]);
    return s * xr;
}

} // namespace

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& edges, int points_per_panel) {
    const GaussRule& g = rule(points_per_panel);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        total += panel(f, edges[i], edges[i + 1], g);
    return total;
}

double integrate_adaptive(const std::function<double(double)>& f,
                          const std::vector<double>& edges, double rel_tol,
                          int points_per_panel) {
    const GaussRule& g = rule(points_per_panel);
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        scale += std::abs(panel(f, edges[i], edges[i + 1], g));
    const double abs_floor = 1e-14 * (scale > 0 ? scale : 1.0);

    double prev = 0.0;
    double last_delta = 0.0;
    for (int split = 1; split <= 16; split *= 2) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            const double h = (edges[i + 1] - edges[i]) / split;
            for (int k = 0; k < split; ++k)
                total += panel(f, edges[i] + k * h, edges[i] + (k + 1) * h, g);
        }
        if (split > 1) {
            last_delta = std::abs(total - prev);
            if (last_delta <= rel_tol * std::abs(total) + abs_floor) return total;
        }
        prev = total;
    }
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "quadrature did not reach tolerance %.1e (total %.6e, delta %.2e)",
                  rel_tol, prev, last_delta);
    throw SolverError(msg);
}

} // namespace qpm
