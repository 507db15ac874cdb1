#include <algorithm>
#include <cmath>
#include <sstream>

#include "linstab/linear_transport.hpp"
#include "linstab/quadrature.hpp"

namespace linstab {

ScalarMeasure volpert_product(const std::function<double(double)>& g, const ScalarField& u,
                              const ScalarMeasure& psi) {
  ScalarMeasure out;
  // Density part on the merged partition.
  const auto cuts = merged_breakpoints(u, psi.bv);
  std::vector<double> vals;
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    double probe;
    if (cuts.empty()) {
      probe = 0.0;
    } else if (k == 0) {
      probe = cuts.front() - 1.0;
    } else if (k == cuts.size()) {
      probe = cuts.back() + 1.0;
    } else {
      probe = 0.5 * (cuts[k - 1] + cuts[k]);
    }
    vals.push_back(g(u(probe)) * psi.bv(probe));
  }
  out.bv = ScalarField(cuts, vals);

  const auto& quad = gauss_legendre(32);
  const auto& b = u.breakpoints();
  for (const auto& at : psi.atoms) {
    const auto it = std::lower_bound(b.begin(), b.end(), at.x - 1e-12);
    const bool near = it != b.end() && *it <= at.x + 1e-12;
    if (near != at.on_jump) {
      std::ostringstream msg;
      msg << "volpert_product: atom at x = " << at.x
          << (near ? " lies on a jump of u but is not declared coincident"
                   : " is declared on a jump but u is continuous there");
      throw AmbiguousPlacement(msg.str());
    }
    double coef;
    if (near) {
      const double um = u.left_limit(*it), up = u(*it);
      coef = quad.integrate([&](double s) { return g(um + s * (up - um)); });
    } else {
      coef = g(u(at.x));
    }
    out.atoms.push_back({at.x, coef * at.mass, at.on_jump});
  }
  return out;
}

}  // namespace linstab
