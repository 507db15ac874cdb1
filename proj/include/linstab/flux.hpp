#ifndef LINSTAB_FLUX_HPP_
#define LINSTAB_FLUX_HPP_

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace linstab {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

enum class Convexity { kConvex, kConcave, kGeneral };

// Closed-form scalar flux f: R -> R with its first two derivatives and the
// admissible interval [lo, hi].
struct ScalarFlux {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;
  double lo = -1e6;
  double hi = 1e6;
  Convexity convexity = Convexity::kGeneral;

  double operator()(double u) const { return f(u); }
  bool admissible(double u) const { return u >= lo && u <= hi; }
};

// Closed-form 2x2 flux with analytic Jacobian and admissible box.
struct SystemFlux {
  std::string name;
  std::function<Vec2(const Vec2&)> f;
  std::function<Mat2(const Vec2&)> jacobian;
  Vec2 lo = Vec2::Constant(-1e6);
  Vec2 hi = Vec2::Constant(1e6);

  Vec2 operator()(const Vec2& u) const { return f(u); }
  bool admissible(const Vec2& u) const {
    return (u.array() >= lo.array()).all() && (u.array() <= hi.array()).all();
  }
};

namespace fluxes {

ScalarFlux burgers();            // u^2/2
ScalarFlux cubic();              // u^3/3
ScalarFlux linear(double speed); // speed * u

// Lagrangian p-system (u1 = specific volume, u2 = velocity):
// f(u) = (-u2, p(u1)) with p'(u1) < 0.
SystemFlux p_system(double gamma);           // p(w) = w^-gamma
SystemFlux p_system_linear();                // p(w) = -w
SystemFlux p_system_inflection();            // p(w) = -(w + (w-1)^3), inflection at w = 1
SystemFlux p_system_custom(std::string name, std::function<double(double)> p,
                           std::function<double(double)> dp, double w_lo, double w_hi);

// Euler equations in (density, momentum): f = (m, m^2/rho + kappa rho^gamma).
SystemFlux euler(double gamma, double kappa);

}  // namespace fluxes

// Discriminant of the 2x2 characteristic polynomial, (tr/2)^2 - det, in the
// cancellation-free form ((a-d)/2)^2 + bc.
double hyperbolicity_discriminant(const Mat2& a);

}  // namespace linstab

#endif  // LINSTAB_FLUX_HPP_
