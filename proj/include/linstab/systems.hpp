#ifndef LINSTAB_SYSTEMS_HPP_
#define LINSTAB_SYSTEMS_HPP_

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "linstab/classification.hpp"
#include "linstab/field.hpp"
#include "linstab/flux.hpp"

namespace linstab {

// Eigen-data of a strictly hyperbolic 2x2 matrix: lambda(0) < lambda(1),
// unit right eigenvectors as columns of r (first nonzero component
// positive), dual rows of l with l r = I.
struct EigenData {
  Vec2 lambda = Vec2::Zero();
  Mat2 r = Mat2::Identity();
  Mat2 l = Mat2::Identity();
};

// Analytic decomposition; throws HyperbolicityError when the eigenvalues
// are complex or closer than 1e-10.
EigenData eigen_decompose(const Mat2& a);

struct AveragedMatrix {
  Mat2 a = Mat2::Zero();
  EigenData eig;
  double lambda(int family) const { return eig.lambda(family - 1); }
  Vec2 r(int family) const { return eig.r.col(family - 1); }
  Vec2 l(int family) const { return eig.l.row(family - 1).transpose(); }
};

// int_0^1 Df(u + s(v - u)) ds by Gauss-Legendre on nodes placed
// symmetrically about the midpoint, so swapping u and v is exact.
AveragedMatrix averaged_matrix(const SystemFlux& f, const Vec2& u, const Vec2& v,
                               int quad_order = 16);

// A hyperbolic 2x2 model: the characteristic matrix A(u) and the jump term
// entering the jump relation -lambda (u+ - u-) + jump(u-, u+) = 0.
struct HyperbolicModel {
  std::string name;
  std::function<Mat2(const Vec2&)> matrix;
  std::function<Vec2(const Vec2&, const Vec2&)> jump;
  Vec2 lo = Vec2::Constant(-1e6);
  Vec2 hi = Vec2::Constant(1e6);

  bool admissible(const Vec2& u) const {
    return (u.array() >= lo.array()).all() && (u.array() <= hi.array()).all();
  }
  Vec2 residual(const Vec2& um, const Vec2& up, double lambda) const {
    return jump(um, up) - lambda * (up - um);
  }
  static HyperbolicModel conservative(const SystemFlux& f);
};

double eigenvalue(const HyperbolicModel& m, const Vec2& u, int family);
Vec2 eigenvector(const HyperbolicModel& m, const Vec2& u, int family);
// grad lambda_i . r_i by central differences.
double gnl_coefficient(const HyperbolicModel& m, const Vec2& u, int family);

struct HugoniotPoint {
  Vec2 u_plus = Vec2::Zero();
  double speed = 0.0;
  double eps = 0.0;
  bool lax_admissible = false;
  double residual = 0.0;
};

// Point of the i-Hugoniot locus of u_minus with (u+ - u-) . r_i(u-) = eps,
// solved by Newton in the scaled unknown w = (u+ - u-)/eps.
HugoniotPoint hugoniot_point(const HyperbolicModel& m, const Vec2& u_minus, int family, double eps);
std::vector<HugoniotPoint> hugoniot_curve(const HyperbolicModel& m, const Vec2& u_minus,
                                          int family, const std::vector<double>& eps_grid);
std::vector<HugoniotPoint> hugoniot_curve(const SystemFlux& f, const Vec2& u_minus, int family,
                                          const std::vector<double>& eps_grid);

struct MonotonicityReport {
  std::vector<double> eps;
  std::vector<double> lambda_bar;  // eigenvalue i of Abar(u+(eps), v)
  std::vector<double> derivative;  // forward differences along the grid
  int sign = 0;                    // common sign of the derivative, 0 if mixed or empty
  std::size_t sign_violations = 0;  // differences of the wrong sign beyond 1e-8
  double worst_margin = 0.0;        // smallest sign * derivative
  std::size_t lax_checks = 0;
  std::size_t lax_violations = 0;
  double worst_lax_margin = 0.0;  // smallest lambda_bar(u-, v) - lambda_bar(u+, v)
};

MonotonicityReport averaged_eigen_monotonicity(const SystemFlux& f, const Vec2& u_minus,
                                               int family, const Vec2& v,
                                               const std::vector<double>& eps_grid,
                                               double radius = 0.3, double tol = 1e-8);

// --- wave curves and Riemann problems -------------------------------------

struct SystemWave {
  int family = 1;
  bool shock = true;
  Vec2 left = Vec2::Zero();
  Vec2 right = Vec2::Zero();
  double speed = 0.0;     // shock speed, or left edge of a fan
  double speed_hi = 0.0;  // right edge of a fan (equals speed for shocks)
  double eps = 0.0;
  bool lax = true;
  double residual = 0.0;
};

// State on the i-wave curve of u_minus: Hugoniot branch on the compressive
// side, integral curve of r_i (arclength eps) on the other.
SystemWave wave_curve(const HyperbolicModel& m, const Vec2& u_minus, int family, double eps);

struct SystemRiemannSolution {
  Vec2 u_l = Vec2::Zero();
  Vec2 u_m = Vec2::Zero();
  Vec2 u_r = Vec2::Zero();
  std::vector<SystemWave> waves;  // empty when u_l == u_r
};

SystemRiemannSolution solve_riemann_system(const HyperbolicModel& m, const Vec2& u_l,
                                           const Vec2& u_r, double tol = 1e-12);

// States along the integral curve of r_i from u_minus, at arclength steps.
std::vector<Vec2> integral_curve(const HyperbolicModel& m, const Vec2& u_minus, int family,
                                 double sigma, int steps);

// --- front tracking -----------------------------------------------------

struct SystemFront {
  std::int64_t id = 0;
  double x = 0.0;
  Vec2 left = Vec2::Zero();
  Vec2 right = Vec2::Zero();
  double speed = 0.0;
  int family = 1;
  bool shock = true;
};

struct SystemFrontState {
  double time = 0.0;
  Vec2 far_left = Vec2::Zero();
  std::vector<SystemFront> fronts;
  SystemField to_field() const;
};

struct SystemFrontTrajectory {
  std::vector<SystemFrontState> states;  // one per event time, states[0] at t = 0
  double t_max = 0.0;
  std::size_t interactions = 0;
  SystemFrontState at(double t) const;
};

struct SystemTrackingOptions {
  double delta = 0.05;  // rarefaction fans are split into jumps of at most this size
  std::size_t interaction_budget = 20000;
  std::size_t front_budget = 5000;
};

SystemFrontTrajectory system_front_tracking(const HyperbolicModel& m, const SystemField& u0,
                                            double t_max,
                                            const SystemTrackingOptions& options = {});

// Per family, classification of the averaged-matrix jumps induced by the
// shock fronts of u and v at every event time.
std::array<ScanReport, 2> scan_rarefaction_free_systems(const SystemFrontTrajectory& u,
                                                        const SystemFrontTrajectory& v,
                                                        const SystemFlux& f, double tol = 1e-9);

}  // namespace linstab

#endif  // LINSTAB_SYSTEMS_HPP_
