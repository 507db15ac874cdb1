#include "linstab/flux.hpp"

#include <cmath>
#include <utility>

namespace linstab {
namespace fluxes {

ScalarFlux burgers() {
  ScalarFlux fl;
  fl.name = "burgers";
  fl.f = [](double u) { return 0.5 * u * u; };
  fl.df = [](double u) { return u; };
  fl.d2f = [](double) { return 1.0; };
  fl.convexity = Convexity::kConvex;
  return fl;
}

ScalarFlux cubic() {
  ScalarFlux fl;
  fl.name = "cubic";
  fl.f = [](double u) { return u * u * u / 3.0; };
  fl.df = [](double u) { return u * u; };
  fl.d2f = [](double u) { return 2.0 * u; };
  fl.convexity = Convexity::kGeneral;
  return fl;
}

ScalarFlux linear(double speed) {
  ScalarFlux fl;
  fl.name = "linear";
  fl.f = [speed](double u) { return speed * u; };
  fl.df = [speed](double) { return speed; };
  fl.d2f = [](double) { return 0.0; };
  // Linear is both; the convex fast paths handle it correctly.
  fl.convexity = Convexity::kConvex;
  return fl;
}

SystemFlux p_system_custom(std::string name, std::function<double(double)> p,
                           std::function<double(double)> dp, double w_lo, double w_hi) {
  SystemFlux fl;
  fl.name = std::move(name);
  fl.f = [p](const Vec2& u) { return Vec2(-u(1), p(u(0))); };
  fl.jacobian = [dp](const Vec2& u) {
    Mat2 a;
    a << 0.0, -1.0, dp(u(0)), 0.0;
    return a;
  };
  fl.lo = Vec2(w_lo, -1e6);
  fl.hi = Vec2(w_hi, 1e6);
  return fl;
}

SystemFlux p_system(double gamma) {
  return p_system_custom(
      "p-system", [gamma](double w) { return std::pow(w, -gamma); },
      [gamma](double w) { return -gamma * std::pow(w, -gamma - 1.0); }, 1e-3, 1e3);
}

SystemFlux p_system_linear() {
  return p_system_custom(
      "p-system-linear", [](double w) { return -w; }, [](double) { return -1.0; }, -1e6,
      1e6);
}

SystemFlux p_system_inflection() {
  return p_system_custom(
      "p-system-inflection",
      [](double w) { return -(w + (w - 1.0) * (w - 1.0) * (w - 1.0)); },
      [](double w) { return -(1.0 + 3.0 * (w - 1.0) * (w - 1.0)); }, -1e6, 1e6);
}

SystemFlux euler(double gamma, double kappa) {
  SystemFlux fl;
  fl.name = "euler";
  fl.f = [gamma, kappa](const Vec2& u) {
    const double rho = u(0), m = u(1);
    return Vec2(m, m * m / rho + kappa * std::pow(rho, gamma));
  };
  fl.jacobian = [gamma, kappa](const Vec2& u) {
    const double rho = u(0), vel = u(1) / u(0);
    Mat2 a;
    a << 0.0, 1.0, -vel * vel + kappa * gamma * std::pow(rho, gamma - 1.0), 2.0 * vel;
    return a;
  };
  fl.lo = Vec2(1e-3, -1e6);
  fl.hi = Vec2(1e3, 1e6);
  return fl;
}

}  // namespace fluxes

double hyperbolicity_discriminant(const Mat2& a) {
  const double half_gap = 0.5 * (a(0, 0) - a(1, 1));
  return half_gap * half_gap + a(0, 1) * a(1, 0);
}

}  // namespace linstab
