#include "linstab/dlm.hpp"

#include <cmath>
#include <sstream>

#include "linstab/quadrature.hpp"

namespace linstab {
namespace {

std::string describe(const Vec2& u) {
  std::ostringstream s;
  s << "(" << u(0) << ", " << u(1) << ")";
  return s.str();
}

Vec2 perp(const Vec2& d) { return Vec2(-d(1), d(0)); }

}  // namespace

Vec2 PathFamily::derivative(double s, const Vec2& um, const Vec2& up) const {
  if (tangent) return tangent(s, um, up);
  const double h = 1e-3;
  // One-sided stencils near the ends keep s inside [0, 1].
  if (s < 2.0 * h) {
    return (-25.0 * eval(s, um, up) + 48.0 * eval(s + h, um, up) - 36.0 * eval(s + 2 * h, um, up) +
            16.0 * eval(s + 3 * h, um, up) - 3.0 * eval(s + 4 * h, um, up)) /
           (12.0 * h);
  }
  if (s > 1.0 - 2.0 * h) {
    return (25.0 * eval(s, um, up) - 48.0 * eval(s - h, um, up) + 36.0 * eval(s - 2 * h, um, up) -
            16.0 * eval(s - 3 * h, um, up) + 3.0 * eval(s - 4 * h, um, up)) /
           (12.0 * h);
  }
  return (eval(s - 2 * h, um, up) - 8.0 * eval(s - h, um, up) + 8.0 * eval(s + h, um, up) -
          eval(s + 2 * h, um, up)) /
         (12.0 * h);
}

PathFamily PathFamily::straightline() {
  PathFamily p;
  p.eval = [](double s, const Vec2& a, const Vec2& b) -> Vec2 { return a + s * (b - a); };
  p.tangent = [](double, const Vec2& a, const Vec2& b) -> Vec2 { return b - a; };
  return p;
}

PathFamily PathFamily::bezier(double offset) {
  PathFamily p;
  p.kind = Kind::kUser;
  std::ostringstream s;
  s << "bezier(" << offset << ")";
  p.name = s.str();
  p.eval = [offset](double t, const Vec2& a, const Vec2& b) -> Vec2 {
    const Vec2 c = 0.5 * (a + b) + offset * perp(b - a);
    return (1 - t) * (1 - t) * a + 2 * t * (1 - t) * c + t * t * b;
  };
  p.tangent = [offset](double t, const Vec2& a, const Vec2& b) -> Vec2 {
    const Vec2 c = 0.5 * (a + b) + offset * perp(b - a);
    return 2 * (1 - t) * (c - a) + 2 * t * (b - c);
  };
  return p;
}

PathFamily PathFamily::user(std::string name,
                            std::function<Vec2(double, const Vec2&, const Vec2&)> eval,
                            std::function<Vec2(double, const Vec2&, const Vec2&)> tangent) {
  if (!eval) throw InvalidArgument("user path needs an evaluator");
  PathFamily p;
  p.kind = Kind::kUser;
  p.name = std::move(name);
  p.eval = std::move(eval);
  p.tangent = std::move(tangent);
  return p;
}

std::vector<PathFamily> curved_test_paths() {
  return {PathFamily::bezier(0.25), PathFamily::bezier(-0.5), PathFamily::bezier(1.0)};
}

PathDiagnostics path_diagnostics(const PathFamily& phi, const Vec2& um, const Vec2& up,
                                 int samples) {
  if (samples < 1) throw InvalidArgument("path_diagnostics: samples must be positive");
  PathDiagnostics d;
  d.endpoint_error = std::max((phi(0.0, um, up) - um).norm(), (phi(1.0, um, up) - up).norm());
  Vec2 prev = phi(0.0, um, up);
  for (int k = 1; k <= samples; ++k) {
    const Vec2 cur = phi(static_cast<double>(k) / samples, um, up);
    d.tv += (cur - prev).norm();
    prev = cur;
  }
  const double size = (up - um).norm();
  d.tv_constant = size > 0.0 ? d.tv / size : 0.0;
  return d;
}

double path_graph_distance(const PathFamily& phi, const Vec2& am, const Vec2& ap, const Vec2& bm,
                           const Vec2& bp, int samples) {
  double dist = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double s = static_cast<double>(k) / samples;
    dist = std::max(dist, (phi(s, am, ap) - phi(s, bm, bp)).norm());
  }
  return dist;
}

Vec2 path_integral(const MatrixField& g, const PathFamily& phi, const Vec2& um, const Vec2& up,
                   int quad_order, const StateBox& box) {
  if (um == up) return Vec2::Zero();
  if ((phi(0.0, um, up) - um).norm() > 1e-12 || (phi(1.0, um, up) - up).norm() > 1e-12) {
    throw InvalidArgument("path " + phi.name + " misses its endpoints on " + describe(um) + " -> " +
                          describe(up));
  }
  const auto& gl = gauss_legendre(quad_order);
  return gl.integrate([&](double s) -> Vec2 {
    const Vec2 p = phi(s, um, up);
    if (!box.contains(p)) {
      std::ostringstream msg;
      msg << "path " << phi.name << " leaves the admissible box at s = " << s << ", state "
          << describe(p);
      throw PathRangeError(msg.str());
    }
    const Vec2 v = g(p) * phi.derivative(s, um, up);
    if (!v.allFinite()) throw InvalidArgument("coefficient unbounded on the path image");
    return v;
  });
}

Measure<Vec2> nc_product(const MatrixField& g, const SystemField& u, const PathFamily& phi,
                         int quad_order, const StateBox& box) {
  Measure<Vec2> mu;
  const auto& b = u.breakpoints();
  for (std::size_t k = 0; k < b.size(); ++k) {
    Atom<Vec2> a;
    a.x = b[k];
    a.mass = path_integral(g, phi, u.values()[k], u.values()[k + 1], quad_order, box);
    a.on_jump = true;
    mu.atoms.push_back(a);
  }
  return mu;
}

Measure<double> nc_product(const std::function<double(double)>& g, const ScalarField& u,
                           int quad_order) {
  Measure<double> mu;
  const auto& gl = gauss_legendre(quad_order);
  const auto& b = u.breakpoints();
  for (std::size_t k = 0; k < b.size(); ++k) {
    const double l = u.values()[k], r = u.values()[k + 1];
    Atom<double> a;
    a.x = b[k];
    a.mass = gl.integrate([&](double s) { return g(l + s * (r - l)); }) * (r - l);
    a.on_jump = true;
    mu.atoms.push_back(a);
  }
  return mu;
}

Vec2 pairing(const Measure<Vec2>& mu, const std::function<double(double)>& test) {
  Vec2 sum = Vec2::Zero();
  for (const auto& a : mu.atoms) sum += test(a.x) * a.mass;
  return sum;
}

Vec2 generalized_hugoniot_residual(const MatrixField& a, const PathFamily& phi, const Vec2& um,
                                   const Vec2& up, double lambda, int quad_order,
                                   const StateBox& box) {
  return -lambda * (up - um) + path_integral(a, phi, um, up, quad_order, box);
}

double generalized_hugoniot_residual(const std::function<double(double)>& a, double um, double up,
                                     double lambda, int quad_order) {
  const auto& gl = gauss_legendre(quad_order);
  return -lambda * (up - um) + gl.integrate([&](double s) { return a(um + s * (up - um)); }) * (up - um);
}

HyperbolicModel nc_model(std::string name, const MatrixField& a, const PathFamily& phi,
                         const StateBox& box, int quad_order) {
  HyperbolicModel m;
  m.name = std::move(name);
  m.matrix = a;
  m.jump = [a, phi, box, quad_order](const Vec2& l, const Vec2& r) -> Vec2 {
    return path_integral(a, phi, l, r, quad_order, box);
  };
  m.lo = box.lo;
  m.hi = box.hi;
  return m;
}

MatrixField model_nc_matrix() {
  return [](const Vec2& u) -> Mat2 {
    Mat2 a;
    a << u(1), 1.0, 1.0, u(1);
    return a;
  };
}

HyperbolicModel model_nc_system(const PathFamily& phi) {
  return nc_model("model-nonconservative", model_nc_matrix(), phi);
}

SystemRiemannSolution solve_nc_riemann(const MatrixField& a, const PathFamily& phi,
                                       const Vec2& ul, const Vec2& ur, const StateBox& box,
                                       int quad_order) {
  return solve_riemann_system(nc_model("dlm", a, phi, box, quad_order), ul, ur, 1e-12);
}

SuperpositionReport superposition_check(const HyperbolicModel& m, const Triple& t,
                                        double pair_tol) {
  SuperpositionReport rep;
  rep.triple = t;
  rep.left_residual = m.residual(t.ul, t.um, t.lambda).norm();
  rep.right_residual = m.residual(t.um, t.ur, t.lambda).norm();
  if (!(rep.left_residual <= pair_tol) || !(rep.right_residual <= pair_tol)) {
    std::ostringstream s;
    s << "superposition: pairwise relations not satisfied (" << rep.left_residual << ", "
      << rep.right_residual << ")";
    throw SetupError(s.str());
  }
  rep.composite = m.residual(t.ul, t.ur, t.lambda);
  rep.composite_residual = rep.composite.norm();
  return rep;
}

SuperpositionReport superposition_check(const SystemFlux& f, const Triple& t, double pair_tol) {
  return superposition_check(HyperbolicModel::conservative(f), t, pair_tol);
}

Triple conservative_triple(double a, double v_left) {
  if (!(a > 0.0)) throw SetupError("conservative triple needs a > 0");
  Triple t;
  t.lambda = std::sqrt(1.0 + a * a);
  t.ul = Vec2(1.0 - a, v_left);
  t.um = Vec2(1.0, v_left - t.lambda * a);
  t.ur = Vec2(1.0 + a, v_left - 2.0 * t.lambda * a);
  return t;
}

Triple nonconservative_triple(const HyperbolicModel& m, const Vec2& ul, double eps1) {
  Triple t;
  t.ul = ul;
  HugoniotPoint first;
  try {
    first = hugoniot_point(m, ul, 1, eps1);
  } catch (const Error& e) {
    throw SetupError(std::string("nonconservative triple: ") + e.what());
  }
  t.um = first.u_plus;
  t.lambda = first.speed;
  const auto speed_gap = [&](double e) { return hugoniot_point(m, t.um, 2, e).speed - t.lambda; };
  double e0 = 0.0, e1 = -1.0;
  try {
    double g0 = speed_gap(e0), g1 = speed_gap(e1);
    for (int it = 0; it < 60 && std::abs(g1) > 1e-14; ++it) {
      if (g1 == g0) break;
      const double e2 = e1 - g1 * (e1 - e0) / (g1 - g0);
      e0 = e1;
      g0 = g1;
      e1 = e2;
      g1 = speed_gap(e1);
    }
    if (!(std::abs(g1) <= 1e-12)) throw SetupError("nonconservative triple: speed search stalled");
    const auto second = hugoniot_point(m, t.um, 2, e1);
    t.ur = second.u_plus;
  } catch (const SetupError&) {
    throw;
  } catch (const Error& e) {
    throw SetupError(std::string("nonconservative triple: ") + e.what());
  }
  return t;
}

CurveDifferences shock_curve_differences(const HyperbolicModel& m, const Vec2& um, int family,
                                         const std::vector<double>& eps_grid) {
  CurveDifferences out;
  const auto curve = hugoniot_curve(m, um, family, eps_grid);
  std::vector<Vec2> first;
  std::vector<double> mids;
  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    const double de = eps_grid[k + 1] - eps_grid[k];
    if (!(de > 0.0)) throw InvalidArgument("shock_curve_differences: grid must increase");
    first.push_back((curve[k + 1].u_plus - curve[k].u_plus) / de);
    mids.push_back(0.5 * (eps_grid[k] + eps_grid[k + 1]));
    out.max_first = std::max(out.max_first, first.back().norm());
  }
  for (std::size_t k = 0; k + 1 < first.size(); ++k) {
    out.max_second = std::max(out.max_second, (first[k + 1] - first[k]).norm() / (mids[k + 1] - mids[k]));
  }
  return out;
}

}  // namespace linstab
