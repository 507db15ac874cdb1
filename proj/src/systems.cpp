#include "linstab/systems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "linstab/quadrature.hpp"

namespace linstab {
namespace {

Vec2 unit_eigenvector(const Mat2& a, double lambda) {
  const Vec2 c1(a(0, 1), lambda - a(0, 0));
  const Vec2 c2(lambda - a(1, 1), a(1, 0));
  Vec2 r = c1.squaredNorm() >= c2.squaredNorm() ? c1 : c2;
  r.normalize();
  if (r(0) < 0.0 || (r(0) == 0.0 && r(1) < 0.0)) r = -r;
  return r;
}

std::string describe(const Vec2& u) {
  std::ostringstream s;
  s << "(" << u(0) << ", " << u(1) << ")";
  return s.str();
}

struct NewtonResult {
  Vec2 w;
  double lambda;
  bool ok;
};

// Scaled Hugoniot system G(w, lambda) = jump(u-, u- + eps w)/eps - lambda w,
// r.w = 1.
NewtonResult hugoniot_newton(const HyperbolicModel& m, const Vec2& um, const Vec2& rhat,
                             double eps, Vec2 w, double lambda) {
  const auto g = [&](const Vec2& ww, double lam) -> Vec2 {
    return m.jump(um, um + eps * ww) / eps - lam * ww;
  };
  for (int it = 0; it < 60; ++it) {
    const Vec2 gv = g(w, lambda);
    const double cv = rhat.dot(w) - 1.0;
    if (!gv.allFinite()) return {w, lambda, false};
    if (std::abs(eps) * gv.norm() <= 1e-14 * std::max(1.0, std::abs(lambda)) &&
        std::abs(cv) <= 1e-15) {
      return {w, lambda, true};
    }
    Eigen::Matrix3d jac = Eigen::Matrix3d::Zero();
    const double h = 1e-6;
    for (int k = 0; k < 2; ++k) {
      Vec2 e = Vec2::Zero();
      e(k) = h;
      jac.block<2, 1>(0, k) = (g(w + e, lambda) - g(w - e, lambda)) / (2.0 * h);
    }
    jac.block<2, 1>(0, 2) = -w;
    jac(2, 0) = rhat(0);
    jac(2, 1) = rhat(1);
    Eigen::Vector3d rhs(-gv(0), -gv(1), -cv);
    const Eigen::Vector3d step = jac.fullPivLu().solve(rhs);
    if (!step.allFinite()) return {w, lambda, false};
    w += step.head<2>();
    lambda += step(2);
    if (step.norm() <= 1e-16 * (1.0 + w.norm() + std::abs(lambda))) {
      return {w, lambda, (std::abs(eps) * g(w, lambda).norm()) <= 1e-11};
    }
  }
  return {w, lambda, std::abs(eps) * g(w, lambda).norm() <= 1e-11};
}

}  // namespace

EigenData eigen_decompose(const Mat2& a) {
  const double disc = hyperbolicity_discriminant(a);
  if (!(disc > 0.0) || !(2.0 * std::sqrt(disc) > 1e-10)) {
    std::ostringstream s;
    s << "matrix is not strictly hyperbolic, discriminant = " << disc;
    throw HyperbolicityError(s.str());
  }
  const double mean = 0.5 * (a(0, 0) + a(1, 1));
  const double root = std::sqrt(disc);
  EigenData e;
  e.lambda = Vec2(mean - root, mean + root);
  e.r.col(0) = unit_eigenvector(a, e.lambda(0));
  e.r.col(1) = unit_eigenvector(a, e.lambda(1));
  const double det = e.r.determinant();
  e.l << e.r(1, 1), -e.r(0, 1), -e.r(1, 0), e.r(0, 0);
  e.l /= det;
  return e;
}

AveragedMatrix averaged_matrix(const SystemFlux& f, const Vec2& u, const Vec2& v, int quad_order) {
  if (!f.admissible(u) || !f.admissible(v)) {
    throw InvalidArgument("averaged_matrix: states outside the admissible box: " + describe(u) +
                          ", " + describe(v));
  }
  AveragedMatrix out;
  if (u == v) {
    out.a = f.jacobian(u);
  } else {
    const auto& gl = gauss_legendre(quad_order);
    const Vec2 mid = 0.5 * (u + v);
    const Vec2 d = v - u;
    Mat2 sum = gl.has_center ? Mat2(gl.center_weight * f.jacobian(mid)) : Mat2(Mat2::Zero());
    double total = gl.has_center ? gl.center_weight : 0.0;
    for (std::size_t k = 0; k < gl.weights.size(); ++k) {
      const double s = gl.right[k] - 0.5;
      sum += gl.weights[k] * (f.jacobian(mid + s * d) + f.jacobian(mid - s * d));
      total += gl.weights[k] * 2.0;
    }
    out.a = sum / total;
  }
  try {
    out.eig = eigen_decompose(out.a);
  } catch (const HyperbolicityError& e) {
    throw HyperbolicityError(std::string("averaged_matrix on [") + describe(u) + ", " +
                             describe(v) + "]: " + e.what());
  }
  return out;
}

HyperbolicModel HyperbolicModel::conservative(const SystemFlux& f) {
  HyperbolicModel m;
  m.name = f.name;
  m.matrix = f.jacobian;
  m.jump = [fn = f.f](const Vec2& a, const Vec2& b) -> Vec2 { return fn(b) - fn(a); };
  m.lo = f.lo;
  m.hi = f.hi;
  return m;
}

double eigenvalue(const HyperbolicModel& m, const Vec2& u, int family) {
  return eigen_decompose(m.matrix(u)).lambda(family - 1);
}

Vec2 eigenvector(const HyperbolicModel& m, const Vec2& u, int family) {
  return eigen_decompose(m.matrix(u)).r.col(family - 1);
}

double gnl_coefficient(const HyperbolicModel& m, const Vec2& u, int family) {
  const Vec2 r = eigenvector(m, u, family);
  const double h = 1e-5;
  return (eigenvalue(m, u + h * r, family) - eigenvalue(m, u - h * r, family)) / (2.0 * h);
}

HugoniotPoint hugoniot_point(const HyperbolicModel& m, const Vec2& u_minus, int family,
                             double eps) {
  if (family != 1 && family != 2) throw InvalidArgument("hugoniot: family must be 1 or 2");
  if (!m.admissible(u_minus)) {
    throw InvalidArgument("hugoniot: base state outside the admissible box " + describe(u_minus));
  }
  const EigenData e0 = eigen_decompose(m.matrix(u_minus));
  const Vec2 rhat = e0.r.col(family - 1);
  const double lam0 = e0.lambda(family - 1);
  HugoniotPoint p;
  p.eps = eps;
  if (eps == 0.0) {
    p.u_plus = u_minus;
    p.speed = lam0;
    return p;
  }

  NewtonResult res = hugoniot_newton(m, u_minus, rhat, eps, rhat, lam0);
  if (!res.ok) {
    // Continuation in eps from the eigen-pair.
    Vec2 w = rhat;
    double lam = lam0;
    const int steps = 16;
    res.ok = true;
    for (int k = 1; k <= steps && res.ok; ++k) {
      res = hugoniot_newton(m, u_minus, rhat, eps * k / steps, w, lam);
      w = res.w;
      lam = res.lambda;
    }
  }
  const Vec2 up = u_minus + eps * res.w;
  if (!res.ok || !up.allFinite() || !m.admissible(up)) {
    std::ostringstream s;
    s << "hugoniot: Newton continuation failed at eps = " << eps << " from " << describe(u_minus);
    throw ContinuationFailure(s.str());
  }
  p.u_plus = up;
  p.speed = res.lambda;
  p.residual = m.residual(u_minus, up, res.lambda).norm();
  if (p.residual > 1e-10) {
    std::ostringstream s;
    s << "hugoniot: residual " << p.residual << " at eps = " << eps;
    throw ContinuationFailure(s.str());
  }
  const double lam_plus = eigenvalue(m, up, family);
  p.lax_admissible = lam0 > p.speed && p.speed > lam_plus;
  return p;
}

std::vector<HugoniotPoint> hugoniot_curve(const HyperbolicModel& m, const Vec2& u_minus,
                                          int family, const std::vector<double>& eps_grid) {
  std::vector<HugoniotPoint> out;
  out.reserve(eps_grid.size());
  for (double e : eps_grid) out.push_back(hugoniot_point(m, u_minus, family, e));
  return out;
}

std::vector<HugoniotPoint> hugoniot_curve(const SystemFlux& f, const Vec2& u_minus, int family,
                                          const std::vector<double>& eps_grid) {
  return hugoniot_curve(HyperbolicModel::conservative(f), u_minus, family, eps_grid);
}

MonotonicityReport averaged_eigen_monotonicity(const SystemFlux& f, const Vec2& u_minus,
                                               int family, const Vec2& v,
                                               const std::vector<double>& eps_grid, double radius,
                                               double tol) {
  MonotonicityReport rep;
  if (eps_grid.empty()) return rep;
  rep.eps = eps_grid;
  std::sort(rep.eps.begin(), rep.eps.end());
  const double reach = std::max(std::abs(rep.eps.front()), std::abs(rep.eps.back()));
  if (reach + (v - u_minus).norm() > radius) {
    std::ostringstream s;
    s << "monotonicity: |eps| + |v - u-| = " << reach + (v - u_minus).norm()
      << " exceeds the radius " << radius;
    throw OutOfRadius(s.str());
  }
  const auto model = HyperbolicModel::conservative(f);
  const auto curve = hugoniot_curve(model, u_minus, family, rep.eps);
  for (const auto& p : curve) rep.lambda_bar.push_back(averaged_matrix(f, p.u_plus, v).lambda(family));
  for (std::size_t k = 0; k + 1 < rep.eps.size(); ++k) {
    const double de = rep.eps[k + 1] - rep.eps[k];
    if (de > 0.0) rep.derivative.push_back((rep.lambda_bar[k + 1] - rep.lambda_bar[k]) / de);
  }
  const double g = gnl_coefficient(model, u_minus, family);
  const int expected = g > 0.0 ? 1 : (g < 0.0 ? -1 : 0);
  rep.worst_margin = INFINITY;
  for (double d : rep.derivative) {
    rep.worst_margin = std::min(rep.worst_margin, expected * d);
    if (expected * d < -tol) ++rep.sign_violations;
  }
  if (rep.derivative.empty()) rep.worst_margin = 0.0;
  rep.sign = rep.derivative.empty() || rep.sign_violations > 0 ? 0 : expected;

  const double base = averaged_matrix(f, u_minus, v).lambda(family);
  rep.worst_lax_margin = INFINITY;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    if (!curve[k].lax_admissible) continue;
    ++rep.lax_checks;
    const double margin = base - rep.lambda_bar[k];
    rep.worst_lax_margin = std::min(rep.worst_lax_margin, margin);
    if (margin < -tol) ++rep.lax_violations;
  }
  if (rep.lax_checks == 0) rep.worst_lax_margin = 0.0;
  return rep;
}

}  // namespace linstab
