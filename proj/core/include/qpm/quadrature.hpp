#ifndef QPM_QUADRATURE_HPP
#define QPM_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace qpm {

// Composite Gauss-Legendre quadrature: one fixed-order rule per panel, panel
// edges supplied by the caller (region boundaries of the piecewise-smooth
// modal fields serve as edges).
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& edges, int points_per_panel = 32);

// Same, with one refinement pass: panels are split until doubling the
// subdivision changes the total by less than rel_tol (plus a tiny absolute
// floor for integrals that vanish by symmetry). Throws SolverError if the
// tolerance is not reached within the refinement budget.
double integrate_adaptive(const std::function<double(double)>& f,
                          const std::vector<double>& edges, double rel_tol,
                          int points_per_panel = 32);

} // namespace qpm

#endif
