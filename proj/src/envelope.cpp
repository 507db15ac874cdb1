#include "linstab/envelope.hpp"

#include <algorithm>

#include "linstab/errors.hpp"

namespace linstab {

double PiecewiseLinear::operator()(double u) const {
  if (nodes.size() == 1) return values.front();
  auto it = std::upper_bound(nodes.begin(), nodes.end(), u);
  std::size_t k = static_cast<std::size_t>(it - nodes.begin());
  k = std::clamp<std::size_t>(k, 1, nodes.size() - 1);
  const double t = (u - nodes[k - 1]) / (nodes[k] - nodes[k - 1]);
  return values[k - 1] + t * (values[k] - values[k - 1]);
}

std::vector<double> PiecewiseLinear::slopes() const {
  std::vector<double> s;
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    s.push_back((values[k] - values[k - 1]) / (nodes[k] - nodes[k - 1]));
  }
  return s;
}

std::vector<std::size_t> hull_indices(const std::vector<double>& u,
                                      const std::vector<double>& g, EnvelopeSide side) {
  const double sign = side == EnvelopeSide::kLower ? 1.0 : -1.0;
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k < u.size(); ++k) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull.back();
      // Cross product of (b - a) x (k - a); keep b only for a strict left turn
      // (lower hull) or strict right turn (upper hull).
      const double cross = (u[b] - u[a]) * (g[k] - g[a]) - (g[b] - g[a]) * (u[k] - u[a]);
      if (sign * cross <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  return hull;
}

PiecewiseLinear convex_envelope(const std::vector<double>& u, const std::vector<double>& g,
                                EnvelopeSide side) {
  if (u.size() < 2 || u.size() != g.size()) {
    throw InvalidArgument("convex_envelope needs at least two samples");
  }
  PiecewiseLinear env;
  for (std::size_t k : hull_indices(u, g, side)) {
    env.nodes.push_back(u[k]);
    env.values.push_back(g[k]);
  }
  return env;
}

PiecewiseLinear convex_envelope(const ScalarFlux& f, double u_lo, double u_hi,
                                EnvelopeSide side, int grid) {
  if (grid < 2) throw InvalidArgument("convex_envelope: grid must be >= 2");
  if (!(u_lo < u_hi)) throw InvalidArgument("convex_envelope: need u_lo < u_hi");
  std::vector<double> u(static_cast<std::size_t>(grid)), g(u.size());
  for (int k = 0; k < grid; ++k) {
    u[k] = k + 1 == grid ? u_hi : u_lo + (u_hi - u_lo) * k / (grid - 1);
    g[k] = f(u[k]);
  }
  return convex_envelope(u, g, side);
}

}  // namespace linstab
