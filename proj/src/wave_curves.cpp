#include <cmath>
#include <sstream>

#include "linstab/systems.hpp"

namespace linstab {

std::vector<Vec2> integral_curve(const HyperbolicModel& m, const Vec2& u_minus, int family,
                                 double sigma, int steps) {
  if (steps < 1) throw InvalidArgument("integral_curve: steps must be positive");
  std::vector<Vec2> out{u_minus};
  Vec2 dir = eigenvector(m, u_minus, family);
  const auto field = [&](const Vec2& u) {
    Vec2 r = eigenvector(m, u, family);
    return r.dot(dir) < 0.0 ? Vec2(-r) : r;
  };
  const double h = sigma / steps;
  Vec2 u = u_minus;
  for (int k = 0; k < steps; ++k) {
    const Vec2 k1 = field(u);
    const Vec2 k2 = field(u + 0.5 * h * k1);
    const Vec2 k3 = field(u + 0.5 * h * k2);
    const Vec2 k4 = field(u + h * k3);
    const Vec2 step = (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    u += h * step;
    dir = step;
    if (!m.admissible(u)) {
      throw ContinuationFailure("integral curve leaves the admissible box");
    }
    out.push_back(u);
  }
  return out;
}

SystemWave wave_curve(const HyperbolicModel& m, const Vec2& u_minus, int family, double eps) {
  SystemWave w;
  w.family = family;
  w.left = u_minus;
  w.eps = eps;
  const double lam = eigenvalue(m, u_minus, family);
  if (eps == 0.0) {
    w.right = u_minus;
    w.speed = w.speed_hi = lam;
    return w;
  }
  const double g = gnl_coefficient(m, u_minus, family);
  if (eps * g <= 0.0) {
    const auto p = hugoniot_point(m, u_minus, family, eps);
    w.right = p.u_plus;
    w.speed = w.speed_hi = p.speed;
    w.lax = p.lax_admissible;
    w.residual = p.residual;
    return w;
  }
  const int steps = std::max(4, static_cast<int>(std::ceil(std::abs(eps) / 0.005)));
  const auto states = integral_curve(m, u_minus, family, eps, steps);
  w.shock = false;
  w.right = states.back();
  w.speed = lam;
  w.speed_hi = eigenvalue(m, w.right, family);
  return w;
}

namespace {

Vec2 composed(const HyperbolicModel& m, const Vec2& ul, const Vec2& eps) {
  const SystemWave w1 = wave_curve(m, ul, 1, eps(0));
  return wave_curve(m, w1.right, 2, eps(1)).right;
}

}  // namespace

SystemRiemannSolution solve_riemann_system(const HyperbolicModel& m, const Vec2& u_l,
                                           const Vec2& u_r, double tol) {
  SystemRiemannSolution sol;
  sol.u_l = u_l;
  sol.u_r = u_r;
  sol.u_m = u_l;
  if (u_l == u_r) return sol;
  const EigenData e = eigen_decompose(m.matrix(u_l));
  Vec2 eps = e.l * (u_r - u_l);
  const double scale = std::max(1.0, u_r.norm());
  double res = INFINITY;
  Vec2 fv;
  const auto eval = [&](const Vec2& x, Vec2& out) {
    try {
      out = composed(m, u_l, x) - u_r;
      return out.allFinite();
    } catch (const Error&) {
      return false;
    }
  };
  if (!eval(eps, fv)) throw OutOfRadius("riemann: initial guess leaves the wave-curve domain");
  res = fv.norm();
  for (int it = 0; it < 50 && res > tol * scale; ++it) {
    Mat2 jac;
    const double h = 1e-7;
    bool ok = true;
    for (int k = 0; k < 2 && ok; ++k) {
      Vec2 d = Vec2::Zero();
      d(k) = h;
      Vec2 fp, fm;
      ok = eval(eps + d, fp) && eval(eps - d, fm);
      if (ok) jac.col(k) = (fp - fm) / (2.0 * h);
    }
    if (!ok) break;
    const Vec2 step = -jac.fullPivLu().solve(fv);
    double damp = 1.0;
    bool improved = false;
    for (int tries = 0; tries < 12; ++tries, damp *= 0.5) {
      Vec2 trial_f;
      const Vec2 trial = eps + damp * step;
      if (eval(trial, trial_f) && trial_f.norm() < res) {
        eps = trial;
        fv = trial_f;
        res = trial_f.norm();
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (!(res <= tol * scale)) {
    std::ostringstream s;
    s << "riemann: Newton on the wave curves did not converge (residual " << res << ")";
    throw OutOfRadius(s.str());
  }
  // Strengths at rounding level are dropped and the neighbouring wave is
  // pinned to the end state.
  const double tiny = 1e-12 * std::max(1.0, std::abs(eps(0)) + std::abs(eps(1)));
  if (std::abs(eps(0)) <= tiny) eps(0) = 0.0;
  if (std::abs(eps(1)) <= tiny) eps(1) = 0.0;
  SystemWave w1 = wave_curve(m, u_l, 1, eps(0));
  SystemWave w2 = wave_curve(m, w1.right, 2, eps(1));
  w2.right = u_r;
  if (eps(1) == 0.0) w1.right = u_r;
  if (eps(0) == 0.0) w2.left = u_l;
  if (w1.shock && eps(0) != 0.0) w1.residual = m.residual(w1.left, w1.right, w1.speed).norm();
  if (w2.shock && eps(1) != 0.0) w2.residual = m.residual(w2.left, w2.right, w2.speed).norm();
  sol.u_m = eps(0) == 0.0 ? u_l : w1.right;
  if (eps(0) != 0.0) sol.waves.push_back(w1);
  if (eps(1) != 0.0) sol.waves.push_back(w2);
  return sol;
}

}  // namespace linstab
