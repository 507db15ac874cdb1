#ifndef LINSTAB_STABILITY_HPP_
#define LINSTAB_STABILITY_HPP_

#include <array>
#include <optional>
#include <vector>

#include "linstab/classification.hpp"
#include "linstab/field.hpp"
#include "linstab/flux.hpp"
#include "linstab/front_tracking.hpp"
#include "linstab/linear_transport.hpp"

namespace linstab {

// Contribution of one coefficient jump over a time window [t0, t1].
struct DecayIncrement {
  JumpRecord jump;  // classification at the start of the window
  int source = 0;   // 0: front of u, 1: front of v, 2: coincident fronts of both
  double t1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  bool slice = false;  // booked as continuous variation
};

struct DecayLedger {
  bool trivial = false;  // psi(0) = 0; K undefined
  double psi0 = 0.0;
  std::vector<double> times;
  std::vector<double> l1;
  std::vector<double> d2;
  std::vector<double> d3;
  std::vector<double> k;  // (l1 + d2 + d3) / psi0, empty when trivial
  double d3_jumps = 0.0;
  double d3_continuous = 0.0;
  std::size_t rarefaction_windows = 0;
  std::vector<DecayIncrement> increments;

  double max_k() const;
  std::optional<double> final_k() const;
};

struct DecayOptions {
  bool itemize = true;
  double slice_factor = 2.0;  // jumps of size <= slice_factor * delta are slices
  double tol = 1e-9;
};

// D2 / D3 bookkeeping for psi = v - u along two front-tracking solutions
// sharing one flux approximation.
DecayLedger decay_terms_scalar(const FrontTrajectory& u, const FrontTrajectory& v,
                               const ScalarFlux& f, double t_max, const DecayOptions& options = {});

// alpha with psi = sum_j alpha_j r_j, r_j the columns of `basis`.
Vec2 characteristic_components(const Vec2& psi, const Mat2& basis);

// One-sided data at a jump of the averaged matrix in family `family` (1 or 2).
struct JumpCharacteristics {
  int family = 1;
  std::optional<JumpKind> kind;  // classification of the family jump
  Vec2 alpha_minus = Vec2::Zero();
  Vec2 alpha_plus = Vec2::Zero();
  Vec2 lambda_minus = Vec2::Zero();  // eigenvalues of the left matrix
  Vec2 lambda_plus = Vec2::Zero();
  double lambda_bar = 0.0;
};

struct CharacteristicData {
  JumpCharacteristics jump;
  Vec2 beta_minus = Vec2::Zero();
  Vec2 beta_plus = Vec2::Zero();
  bool sign_pass = true;
  double sign_margin = 0.0;    // smallest signed slack over the audited entries
  bool two_unfavorable = false;  // both family fluxes positive
};

CharacteristicData characteristic_flux(const JumpCharacteristics& jump, double tol = 1e-8);

struct DominanceReport {
  std::array<bool, 2> dominant{};
  std::array<double, 2> margin{};  // kappa |beta_j^-| - right side
  // Component sign rule on dominant families, as implied by the linear
  // Rankine-Hugoniot relation: kept for j != i and on S_i, F_i; flipped on
  // L_i, R_i.
  std::size_t checked = 0;
  std::size_t violations = 0;
  // Same audit with the rule for j = i reversed.
  std::size_t reversed_violations = 0;
};

DominanceReport dominance_test(const CharacteristicData& data, double matrix_jump,
                               double eigvec_jump, double kappa, double tol = 1e-8);

struct WeightField {
  std::array<ScalarField, 2> w{ScalarField(1.0), ScalarField(1.0)};
  double w_min = 1.0;
  double w_max = 1.0;
  int families = 2;
};

// int sum_j |alpha_j| w_j dx, exact on the merged partition.
double weighted_norm(const std::array<ScalarField, 2>& alpha, const WeightField& w);
double weighted_norm(const ScalarField& alpha, const ScalarField& w, double w_min, double w_max);

struct WeightParams {
  double w_min = 0.5;
  double w_max = 1.0;
  double c = 0.1;
};

struct WeightTrajectory {
  std::vector<double> times;
  std::vector<ScalarField> weights;
  std::vector<double> weighted;  // ||psi(t)||_w at each time
  std::vector<double> plain;     // ||psi(t)||
  double max_rate = 0.0;         // largest d/dt ||psi||_w between events
  double overshoot = 0.0;        // total positive jump of ||psi||_w at events
  std::size_t clamps = 0;
  std::size_t events = 0;
};

// Scalar weights transported along the averaged coefficient abar(u, v) with
// multiplicative bumps at the jumps; psi = v - u.
WeightTrajectory evolve_weights(const CoefficientField& a, const WeightParams& params);

}  // namespace linstab

#endif  // LINSTAB_STABILITY_HPP_
