#ifndef LINSTAB_CLASSIFICATION_HPP_
#define LINSTAB_CLASSIFICATION_HPP_

#include <array>
#include <string>
#include <vector>

#include "linstab/flux.hpp"
#include "linstab/front_tracking.hpp"

namespace linstab {

enum class JumpKind { kCompressive, kSlowUndercompressive, kFastUndercompressive, kRarefaction };

// Short tags: L, S, F, R.
const char* jump_kind_tag(JumpKind kind);
JumpKind mirrored(JumpKind kind);

struct JumpClass {
  JumpKind kind = JumpKind::kCompressive;
  double margin = 0.0;  // smallest gap in the inequalities defining `kind`
  bool degenerate = false;
};

// Four-way classification of a coefficient jump (a_minus, a_plus) moving at
// speed lambda. Checked in the order L, S, F, R; ties report L.
JumpClass classify_jump(double a_minus, double a_plus, double lambda, double tol = 1e-9);

// Classification of the averaged-speed jump seen by v across the entropy
// discontinuity (u_minus, u_plus), via the sign of
// Omega = (u_minus - v)(u_plus - u_minus)(abar_plus - abar_minus).
JumpClass omega_classify(double u_minus, double u_plus, double v, const ScalarFlux& f,
                         double tol = 1e-9);
double omega_value(double u_minus, double u_plus, double v, const ScalarFlux& f);

struct JumpRecord {
  double t = 0.0;
  double x = 0.0;
  double a_minus = 0.0;
  double a_plus = 0.0;
  double lambda = 0.0;
  int family = 1;
  JumpClass cls;
};

struct ScanReport {
  std::array<std::size_t, 4> counts{};  // indexed by JumpKind
  std::size_t degenerate = 0;
  std::size_t rarefaction_violations = 0;  // R with margin above tolerance
  double worst_rarefaction_margin = -1.0;  // -1 when no R jump was seen
  std::vector<JumpRecord> rarefaction_records;
  std::size_t sampled_times = 0;

  std::size_t count(JumpKind k) const { return counts[static_cast<std::size_t>(k)]; }
};

// Classifies, at every union event time, the averaged-speed jumps generated
// by the shock fronts of u and v. Rarefaction slices are not entropy
// discontinuities and are skipped. The tolerance is scaled by the local speed
// magnitude.
ScanReport scan_rarefaction_free(const FrontTrajectory& u, const FrontTrajectory& v,
                                 const ScalarFlux& f, double tol = 1e-9);

}  // namespace linstab

#endif  // LINSTAB_CLASSIFICATION_HPP_
