#ifndef LINSTAB_LINEAR_TRANSPORT_HPP_
#define LINSTAB_LINEAR_TRANSPORT_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "linstab/classification.hpp"
#include "linstab/field.hpp"
#include "linstab/flux.hpp"
#include "linstab/front_tracking.hpp"

namespace linstab {

// Averaged speed abar(u, v) = int_0^1 f'(s u + (1 - s) v) ds.
double average_speed(const ScalarFlux& f, double u, double v);

// Self-similar solution of the transport Riemann problem: psi_l on the far
// left, then `jumps` (by increasing speed) and `atoms` riding on rays.
struct LinearRiemannSolution {
  struct Jump {
    double speed = 0.0;
    double value = 0.0;  // value to the right of the jump
  };
  struct MovingAtom {
    double speed = 0.0;
    double mass0 = 0.0;   // mass at t = 0
    double growth = 0.0;  // mass per unit time
    double mass(double t) const { return mass0 + growth * t; }
  };

  double psi_l = 0.0;
  double psi_r = 0.0;
  double a_minus = 0.0;
  double a_plus = 0.0;
  double lambda = 0.0;
  JumpClass cls;
  std::vector<Jump> jumps;
  std::vector<MovingAtom> atoms;

  // Growth rate and speed of the atom on the coefficient jump (zero when
  // there is none).
  double atom_growth() const;
  double atom_speed() const { return lambda; }
  double coefficient(double t, double x) const { return x < lambda * t ? a_minus : a_plus; }
  ScalarMeasure at(double t) const;
};

// Riemann problem for d_t psi + d_x(a psi) = 0 with a = a_minus for
// x < lambda t and a_plus beyond. phi_star selects the member of the
// one-parameter family in the rarefaction case and is required there.
LinearRiemannSolution riemann_linear(double psi_l, double psi_r, double a_minus, double a_plus,
                                     double lambda, std::optional<double> phi_star = {});

// Space-time test function theta(t, x) = b(t) g(x) with a smooth time bump b
// vanishing to fourth order at 0 and T, and a Gaussian g.
struct TestFunction {
  double t_end = 1.0;
  double center = 0.0;
  double width = 0.5;

  double bump(double t) const;
  double bump_dt(double t) const;
  double g(double x) const;
  double g_dx(double x) const;
  // Exact integral of g over [a, b] (infinite ends allowed).
  double g_integral(double a, double b) const;
};

std::vector<TestFunction> standard_test_functions(int count = 20, double t_end = 1.0);

// Weak-form residual int int (psi d_t theta + a psi d_x theta) over
// (0, T) x R, exact in x and by a composite midpoint rule in t.
double weak_form_residual(const LinearRiemannSolution& sol, const TestFunction& theta,
                          int time_points = 10000);

// Space-time transport coefficient built from front-tracking solutions.
// From one solution u: a = f'(u) away from fronts, jumps of u move at their
// speeds. From two solutions: a = abar(u, v). Synthetic coefficients carry
// explicit region speeds on top of non-interacting fronts whose states are
// region indices.
class CoefficientField {
 public:
  enum class Tag { kFromOneSolution, kFromTwoSolutions, kSynthetic };

  static CoefficientField from_one_solution(const ScalarFlux& f, const FrontTrajectory& u);
  static CoefficientField from_two_solutions(const ScalarFlux& f, const FrontTrajectory& u,
                                             const FrontTrajectory& v);
  // Jumps at positions x[k] moving at speeds lambda[k]; speeds[k] is the
  // coefficient on region k (speeds.size() == x.size() + 1).
  static CoefficientField synthetic(const std::vector<double>& x, const std::vector<double>& lambda,
                                    const std::vector<double>& speeds, double t_max);

  Tag tag() const { return tag_; }
  const ScalarFlux& flux() const { return flux_; }
  const FrontTrajectory& u() const { return *u_; }
  const FrontTrajectory* v() const { return v_.get(); }
  double t_max() const;
  double region_speed(double u, double v) const;
  // Coefficient as a piecewise-constant field at time t.
  ScalarField at(double t) const;

 private:
  Tag tag_ = Tag::kSynthetic;
  ScalarFlux flux_;
  std::shared_ptr<const FrontTrajectory> u_, v_;
  std::vector<double> table_;
};

// Snapshot sequence of a measure-valued solution.
struct MeasureTrajectory {
  std::vector<double> times;
  std::vector<ScalarMeasure> states;
  struct AtomEntry {
    double t, x, mass;
  };
  std::vector<AtomEntry> atom_ledger;  // every atom at every event time
  double mass_bound = 1.0;             // measured K with ||psi(t)|| <= K ||psi0||
  std::size_t events = 0;
};

struct LinearCauchyOptions {
  std::vector<double> sample_times;  // empty: coefficient event times and t_max
  double mass_bound_limit = 10.0;
  std::size_t event_budget = 10000000;
};

// Forward solution of d_t psi + d_x(a psi) = 0 for a coefficient from one
// front-tracking entropy solution, following characteristics of u exactly.
MeasureTrajectory solve_linear_cauchy(const CoefficientField& a, const ScalarMeasure& psi0,
                                      double t_max, const LinearCauchyOptions& options = {});

// Volpert product g(u) psi: pointwise on continuity intervals of u, and with
// the straight-line average int_0^1 g(u_- + s(u_+ - u_-)) ds on atoms of psi
// sitting on jumps of u (which must be declared with on_jump).
ScalarMeasure volpert_product(const std::function<double(double)>& g, const ScalarField& u,
                              const ScalarMeasure& psi);

}  // namespace linstab

#endif  // LINSTAB_LINEAR_TRANSPORT_HPP_
