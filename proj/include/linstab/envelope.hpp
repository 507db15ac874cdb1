#ifndef LINSTAB_ENVELOPE_HPP_
#define LINSTAB_ENVELOPE_HPP_

#include <vector>

#include "linstab/flux.hpp"

namespace linstab {

// Continuous piecewise-linear function through (nodes[k], values[k]).
struct PiecewiseLinear {
  std::vector<double> nodes;
  std::vector<double> values;

  double operator()(double u) const;
  std::vector<double> slopes() const;
};

enum class EnvelopeSide { kLower, kUpper };

// Lower convex (or upper concave) envelope of f sampled on a uniform grid of
// `grid` points over [u_lo, u_hi]. Returned nodes are the hull vertices.
PiecewiseLinear convex_envelope(const ScalarFlux& f, double u_lo, double u_hi,
                                EnvelopeSide side, int grid = 2048);

// Same, for explicit sample points (sorted, strictly increasing).
PiecewiseLinear convex_envelope(const std::vector<double>& u, const std::vector<double>& g,
                                EnvelopeSide side);

// Hull vertex indices into the sample arrays (monotone chain, collinear
// points dropped).
std::vector<std::size_t> hull_indices(const std::vector<double>& u,
                                      const std::vector<double>& g, EnvelopeSide side);

}  // namespace linstab

#endif  // LINSTAB_ENVELOPE_HPP_
