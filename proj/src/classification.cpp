#include "linstab/classification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "linstab/linear_transport.hpp"
#include "linstab/scalar_riemann.hpp"

namespace linstab {

const char* jump_kind_tag(JumpKind kind) {
  switch (kind) {
    case JumpKind::kCompressive:
      return "L";
    case JumpKind::kSlowUndercompressive:
      return "S";
    case JumpKind::kFastUndercompressive:
      return "F";
    case JumpKind::kRarefaction:
      return "R";
  }
  return "?";
}

JumpKind mirrored(JumpKind kind) {
  switch (kind) {
    case JumpKind::kSlowUndercompressive:
      return JumpKind::kFastUndercompressive;
    case JumpKind::kFastUndercompressive:
      return JumpKind::kSlowUndercompressive;
    default:
      return kind;
  }
}

JumpClass classify_jump(double a_minus, double a_plus, double lambda, double tol) {
  if (!(tol >= 0.0)) throw InvalidArgument("classify_jump: tol must be non-negative");
  JumpClass c;
  const double lo = std::min(a_minus, a_plus), hi = std::max(a_minus, a_plus);
  if (a_minus >= lambda && lambda >= a_plus) {
    c.kind = JumpKind::kCompressive;
    c.margin = std::min(a_minus - lambda, lambda - a_plus);
  } else if (lambda < lo) {
    c.kind = JumpKind::kSlowUndercompressive;
    c.margin = lo - lambda;
  } else if (lambda > hi) {
    c.kind = JumpKind::kFastUndercompressive;
    c.margin = lambda - hi;
  } else {
    c.kind = JumpKind::kRarefaction;
    c.margin = std::min(lambda - a_minus, a_plus - lambda);
  }
  c.degenerate = c.margin < tol;
  return c;
}

double omega_value(double u_minus, double u_plus, double v, const ScalarFlux& f) {
  const double am = average_speed(f, u_minus, v), ap = average_speed(f, u_plus, v);
  return (u_minus - v) * (u_plus - u_minus) * (ap - am);
}

JumpClass omega_classify(double u_minus, double u_plus, double v, const ScalarFlux& f,
                         double tol) {
  if (u_minus == u_plus) throw InvalidArgument("omega_classify needs u_minus != u_plus");
  if (!oleinik_admissible(f, u_minus, u_plus, 256, 1e-12)) {
    std::ostringstream msg;
    msg << "omega_classify: (" << u_minus << ", " << u_plus << ") is not an entropy shock";
    throw EntropyViolation(msg.str());
  }
  if (std::abs(v - u_minus) < 1e-12 || std::abs(v - u_plus) < 1e-12) {
    throw DegenerateState("omega_classify: v coincides with a shock state");
  }
  const double am = average_speed(f, u_minus, v), ap = average_speed(f, u_plus, v);
  const double lambda = average_speed(f, u_minus, u_plus);
  const double omega = (u_minus - v) * (u_plus - u_minus) * (ap - am);
  const bool same_side = (u_minus - v) * (u_plus - v) > 0.0;
  JumpClass c = classify_jump(am, ap, lambda, tol);
  if (same_side) {
    c.kind = omega <= 0.0 ? JumpKind::kSlowUndercompressive : JumpKind::kFastUndercompressive;
  } else {
    c.kind = omega >= 0.0 ? JumpKind::kCompressive : JumpKind::kRarefaction;
  }
  return c;
}

namespace {

struct Sweep {
  const ScalarFlux& f;
  double tol;
  ScanReport& report;

  // Index range of fronts of `other` within 1e-12 of x.
  static std::pair<std::size_t, std::size_t> near(const std::vector<Front>& fronts, double x) {
    auto lo = std::lower_bound(fronts.begin(), fronts.end(), x - 1e-12,
                               [](const Front& fr, double p) { return fr.x < p; });
    auto hi = lo;
    while (hi != fronts.end() && hi->x <= x + 1e-12) ++hi;
    return {static_cast<std::size_t>(lo - fronts.begin()),
            static_cast<std::size_t>(hi - fronts.begin())};
  }

  void record(double t, const Front& fr, double v_minus, double v_plus) {
    JumpRecord r;
    r.t = t;
    r.x = fr.x;
    r.lambda = fr.speed;
    r.a_minus = average_speed(f, fr.left, v_minus);
    r.a_plus = average_speed(f, fr.right, v_plus);
    const double scale = std::max({1.0, std::abs(r.a_minus), std::abs(r.a_plus), std::abs(r.lambda)});
    r.cls = classify_jump(r.a_minus, r.a_plus, r.lambda, tol * scale);
    ++report.counts[static_cast<std::size_t>(r.cls.kind)];
    if (r.cls.degenerate) ++report.degenerate;
    if (r.cls.kind == JumpKind::kRarefaction) {
      report.worst_rarefaction_margin = std::max(report.worst_rarefaction_margin, r.cls.margin);
      if (!r.cls.degenerate) {
        ++report.rarefaction_violations;
        report.rarefaction_records.push_back(r);
      }
    }
  }

  // Shock fronts of `own` against the field `other`. Coincident fronts of
  // `other` are classified jointly when they move together and otherwise
  // counted as degenerate; `skip_coincident` avoids booking them twice.
  void pass(double t, const FrontState& own, const FrontState& other, const ScalarField& other_field,
            bool skip_coincident) {
    for (const auto& fr : own.fronts) {
      if (fr.kind != FrontKind::kShock) continue;
      const auto [lo, hi] = near(other.fronts, fr.x);
      if (lo == hi) {
        const double val = other_field(fr.x);
        record(t, fr, val, val);
        continue;
      }
      if (skip_coincident) continue;
      bool together = true;
      for (std::size_t k = lo; k < hi; ++k) {
        together = together && std::abs(other.fronts[k].speed - fr.speed) <= 1e-12;
      }
      if (!together) {
        ++report.degenerate;
        continue;
      }
      record(t, fr, other.fronts[lo].left, other.fronts[hi - 1].right);
    }
  }
};

}  // namespace

ScanReport scan_rarefaction_free(const FrontTrajectory& u, const FrontTrajectory& v,
                                 const ScalarFlux& f, double tol) {
  ScanReport report;
  Sweep sweep{f, tol, report};
  FrontCursor cu(u), cv(v);
  for (double t : union_event_times({&u, &v})) {
    if (t > u.t_max() || t > v.t_max()) break;
    const auto& us = cu.advance_to(t);
    const auto& vs = cv.advance_to(t);
    const auto uf = us.to_field(), vf = vs.to_field();
    sweep.pass(t, us, vs, vf, false);
    if (&u != &v) sweep.pass(t, vs, us, uf, true);
    ++report.sampled_times;
  }
  return report;
}

}  // namespace linstab
