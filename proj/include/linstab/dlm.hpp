#ifndef LINSTAB_DLM_HPP_
#define LINSTAB_DLM_HPP_

#include <functional>
#include <string>
#include <vector>

#include "linstab/field.hpp"
#include "linstab/systems.hpp"

namespace linstab {

using MatrixField = std::function<Mat2(const Vec2&)>;

// Family of connecting paths s -> Phi(s; u-, u+) on [0, 1].
struct PathFamily {
  enum class Kind { kStraightline, kUser };
  Kind kind = Kind::kStraightline;
  std::string name = "straightline";
  std::function<Vec2(double, const Vec2&, const Vec2&)> eval;
  // d Phi / ds; when empty a five-point difference is used.
  std::function<Vec2(double, const Vec2&, const Vec2&)> tangent;

  Vec2 operator()(double s, const Vec2& um, const Vec2& up) const { return eval(s, um, up); }
  Vec2 derivative(double s, const Vec2& um, const Vec2& up) const;

  static PathFamily straightline();
  // Quadratic Bezier whose control point is the midpoint moved by
  // offset * perp(u+ - u-), perp(a, b) = (-b, a).
  static PathFamily bezier(double offset);
  static PathFamily user(std::string name,
                         std::function<Vec2(double, const Vec2&, const Vec2&)> eval,
                         std::function<Vec2(double, const Vec2&, const Vec2&)> tangent = {});
};

// Offsets of the curved probe paths.
std::vector<PathFamily> curved_test_paths();

struct StateBox {
  Vec2 lo = Vec2::Constant(-1e6);
  Vec2 hi = Vec2::Constant(1e6);
  bool contains(const Vec2& u) const {
    return (u.array() >= lo.array()).all() && (u.array() <= hi.array()).all();
  }
};

struct PathDiagnostics {
  double endpoint_error = 0.0;  // max of |Phi(0) - u-|, |Phi(1) - u+|
  double tv = 0.0;              // sampled total variation
  double tv_constant = 0.0;     // tv / |u+ - u-|, 0 for a trivial jump
};

PathDiagnostics path_diagnostics(const PathFamily& phi, const Vec2& um, const Vec2& up,
                                 int samples = 512);
// max_s |Phi(s; a-, a+) - Phi(s; b-, b+)| on a uniform sample.
double path_graph_distance(const PathFamily& phi, const Vec2& am, const Vec2& ap, const Vec2& bm,
                           const Vec2& bp, int samples = 512);

// int_0^1 g(Phi) dPhi/ds ds for one jump.
Vec2 path_integral(const MatrixField& g, const PathFamily& phi, const Vec2& um, const Vec2& up,
                   int quad_order = 32, const StateBox& box = {});

// [g(u) d_x u]_Phi for piecewise-constant u: zero density, one atom per jump.
Measure<Vec2> nc_product(const MatrixField& g, const SystemField& u, const PathFamily& phi,
                         int quad_order = 32, const StateBox& box = {});
// Scalar product along straight lines.
Measure<double> nc_product(const std::function<double(double)>& g, const ScalarField& u,
                           int quad_order = 32);

// sum_atoms phi(x) mass.
Vec2 pairing(const Measure<Vec2>& mu, const std::function<double(double)>& test);

Vec2 generalized_hugoniot_residual(const MatrixField& a, const PathFamily& phi, const Vec2& um,
                                   const Vec2& up, double lambda, int quad_order = 32,
                                   const StateBox& box = {});
double generalized_hugoniot_residual(const std::function<double(double)>& a, double um, double up,
                                     double lambda, int quad_order = 32);

// Model A(u) with jump term given by the path integral.
HyperbolicModel nc_model(std::string name, const MatrixField& a, const PathFamily& phi,
                         const StateBox& box = {}, int quad_order = 32);

// The fixed nonconservative witness A(u) = [[u2, 1], [1, u2]].
MatrixField model_nc_matrix();
HyperbolicModel model_nc_system(const PathFamily& phi = PathFamily::straightline());

SystemRiemannSolution solve_nc_riemann(const MatrixField& a, const PathFamily& phi,
                                       const Vec2& ul, const Vec2& ur, const StateBox& box = {},
                                       int quad_order = 32);

struct Triple {
  Vec2 ul = Vec2::Zero();
  Vec2 um = Vec2::Zero();
  Vec2 ur = Vec2::Zero();
  double lambda = 0.0;
};

struct SuperpositionReport {
  Triple triple;
  double left_residual = 0.0;   // |relation(u_l, u_m)|
  double right_residual = 0.0;  // |relation(u_m, u_r)|
  double composite_residual = 0.0;
  Vec2 composite = Vec2::Zero();
};

// Throws SetupError unless both pairwise relations hold to pair_tol.
SuperpositionReport superposition_check(const HyperbolicModel& m, const Triple& t,
                                        double pair_tol = 1e-10);
SuperpositionReport superposition_check(const SystemFlux& f, const Triple& t,
                                        double pair_tol = 1e-10);

// States w in {1 - a, 1, 1 + a} of the inflection p-system on one 2-shock
// line with common speed sqrt(1 + a^2).
Triple conservative_triple(double a, double v_left = 0.0);
// 1-shock of strength eps1 from ul followed by the 2-shock of the middle
// state with the same speed, found by secant iteration on the 2-strength.
Triple nonconservative_triple(const HyperbolicModel& m, const Vec2& ul, double eps1);

struct CurveDifferences {
  double max_first = 0.0;
  double max_second = 0.0;
};

// Divided differences of eps -> u+(eps) along the i-Hugoniot curve.
CurveDifferences shock_curve_differences(const HyperbolicModel& m, const Vec2& um, int family,
                                         const std::vector<double>& eps_grid);

}  // namespace linstab

#endif  // LINSTAB_DLM_HPP_
