#ifndef LINSTAB_QUADRATURE_HPP_
#define LINSTAB_QUADRATURE_HPP_

#include <vector>

namespace linstab {

// Gauss-Legendre rule on [0,1]. Nodes come in mirrored pairs:
// left[k] + right[k] == 1 bitwise, with left[k] = (1 - x_k)/2 and
// right[k] = (1 + x_k)/2 built from the same x_k, so a sum over pairs is
// symmetric under theta -> 1 - theta in floating point.
struct GaussLegendre {
  std::vector<double> left;     // (1 - x)/2, x > 0
  std::vector<double> right;    // (1 + x)/2
  std::vector<double> weights;  // weight per pair member, already halved for [0,1]
  bool has_center = false;
  double center_weight = 0.0;

  int order() const {
    return static_cast<int>(2 * weights.size() + (has_center ? 1 : 0));
  }

  // Integrate g over [0,1] in pair order; g is called with theta.
  template <class Fn>
  auto integrate(Fn&& g) const -> decltype(g(0.5)) {
    using R = decltype(g(0.5));
    R sum = has_center ? R(center_weight * g(0.5)) : R(0.0 * g(0.5));
    for (std::size_t k = 0; k < weights.size(); ++k) {
      sum += weights[k] * (g(left[k]) + g(right[k]));
    }
    return sum;
  }
};

// Cached rules; order must be >= 1.
const GaussLegendre& gauss_legendre(int order);

}  // namespace linstab

#endif  // LINSTAB_QUADRATURE_HPP_
