#ifndef LINSTAB_SCALAR_RIEMANN_HPP_
#define LINSTAB_SCALAR_RIEMANN_HPP_

#include "linstab/flux.hpp"
#include "linstab/wave_fan.hpp"

namespace linstab {

// Entropy solution of the scalar Riemann problem (u_l, u_r). Convex and
// concave fluxes are solved in closed form; general fluxes go through the
// envelope on a `grid`-point mesh, with tangency points refined by bisection
// of the chord-tangency equation when one end of the shock is a data state.
ScalarFan solve_riemann_scalar(const ScalarFlux& f, double u_l, double u_r, int grid = 2048);

// Value of the self-similar solution at x/t = xi.
double sample_fan(const ScalarFan& fan, const ScalarFlux& f, double u_l, double xi);

// Oleinik chord condition for the jump (u_minus, u_plus), checked on
// `samples` interior points with relative tolerance tol.
bool oleinik_admissible(const ScalarFlux& f, double u_minus, double u_plus,
                        int samples = 256, double tol = 1e-12);

}  // namespace linstab

#endif  // LINSTAB_SCALAR_RIEMANN_HPP_
