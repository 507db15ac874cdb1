#include "linstab/stability.hpp"

#include <algorithm>
#include <cmath>

namespace linstab {
namespace {

constexpr double kPositionTol = 1e-12;
constexpr double kSpeedTol = 1e-12;

double region_state(const std::vector<Front>& fronts, double far_left, std::size_t r) {
  return r == 0 ? far_left : fronts[r - 1].right;
}

// Window of constant traces at one coefficient jump.
struct Window {
  int source;
  double um, up, vm, vp, speed, x, ta, tb;
};

class LedgerBuilder {
 public:
  LedgerBuilder(const ScalarFlux& f, double delta, const DecayOptions& opt, DecayLedger& out)
      : f_(f), slice_(opt.slice_factor * delta), opt_(opt), out_(out) {}

  void book(const Window& w) {
    const double dt = w.tb - w.ta;
    if (!(dt > 0.0)) return;
    const double am = average_speed(f_, w.um, w.vm);
    const double ap = average_speed(f_, w.up, w.vp);
    const double psi_m = w.vm - w.um;
    DecayIncrement inc;
    inc.source = w.source;
    inc.t1 = w.tb;
    inc.jump.t = w.ta;
    inc.jump.x = w.x;
    inc.jump.a_minus = am;
    inc.jump.a_plus = ap;
    inc.jump.lambda = w.speed;
    const double size = std::max(std::abs(w.up - w.um), std::abs(w.vp - w.vm));
    if (size <= slice_) {
      inc.slice = true;
      const double uc = 0.5 * (w.um + w.up), vc = 0.5 * (w.vm + w.vp);
      const double ac = average_speed(f_, uc, vc);
      inc.d3 = dt * std::abs(ac - f_.df(uc)) * std::abs(vc - uc) * std::abs(ap - am);
      d3c_ += inc.d3;
    } else {
      const double scale = std::max({1.0, std::abs(am), std::abs(ap), std::abs(w.speed)});
      inc.jump.cls = classify_jump(am, ap, w.speed, opt_.tol * scale);
      switch (inc.jump.cls.kind) {
        case JumpKind::kCompressive:
          inc.d2 = dt * std::abs(w.speed - am) * std::abs(psi_m);
          d2_ += inc.d2;
          break;
        case JumpKind::kSlowUndercompressive:
        case JumpKind::kFastUndercompressive:
          inc.d3 = dt * std::abs(am - w.speed) * std::abs(ap - am) * std::abs(psi_m);
          d3j_ += inc.d3;
          break;
        case JumpKind::kRarefaction:
          ++out_.rarefaction_windows;
          break;
      }
    }
    if (opt_.itemize) out_.increments.push_back(inc);
  }

  double d2() const { return d2_; }
  double d3() const { return d3j_ + d3c_; }
  double d3_jumps() const { return d3j_; }
  double d3_continuous() const { return d3c_; }

 private:
  const ScalarFlux& f_;
  double slice_;
  const DecayOptions& opt_;
  DecayLedger& out_;
  double d2_ = 0.0, d3j_ = 0.0, d3c_ = 0.0;
};

// Emits the windows of every front of `a` over (t0, t1), with the other
// solution `b` continuous across it except at crossings. Fronts coincident
// with a front of b are combined; `paired` marks them in b.
template <class Emit>
void sweep(const FrontState& a, const FrontState& b, int source, double t0, double t1,
           std::vector<char>* paired_b, const std::vector<char>* skip_a, Emit&& emit) {
  const auto& bf = b.fronts;
  for (std::size_t i = 0; i < a.fronts.size(); ++i) {
    if (skip_a && (*skip_a)[i]) continue;
    const Front& fa = a.fronts[i];
    const double xa0 = fa.position(t0), xa1 = fa.position(t1);
    const auto before0 = [&](const Front& q) {
      const double xq = q.position(t0);
      return xq < xa0 - kPositionTol ||
             (std::abs(xq - xa0) <= kPositionTol && q.speed < fa.speed - kSpeedTol);
    };
    const auto before1 = [&](const Front& q) {
      const double xq = q.position(t1);
      return xq < xa1 - kPositionTol ||
             (std::abs(xq - xa1) <= kPositionTol && q.speed > fa.speed + kSpeedTol);
    };
    const std::size_t r0 =
        static_cast<std::size_t>(std::partition_point(bf.begin(), bf.end(), before0) - bf.begin());
    const std::size_t r1 =
        static_cast<std::size_t>(std::partition_point(bf.begin(), bf.end(), before1) - bf.begin());

    // Coincident partner moving together.
    std::size_t partner = bf.size();
    for (std::size_t k = r0; k < bf.size(); ++k) {
      const double xq = bf[k].position(t0);
      if (xq > xa0 + kPositionTol) break;
      if (std::abs(xq - xa0) <= kPositionTol && std::abs(bf[k].speed - fa.speed) <= kSpeedTol) {
        partner = k;
        break;
      }
    }
    if (partner < bf.size()) {
      if (paired_b) (*paired_b)[partner] = 1;
      emit(Window{2, fa.left, fa.right, bf[partner].left, bf[partner].right, fa.speed, xa0, t0, t1},
           source);
      continue;
    }

    double ta = t0;
    std::size_t r = r0;
    const auto flush = [&](double tb) {
      const double s = region_state(bf, b.far_left, r);
      emit(Window{source, fa.left, fa.right, s, s, fa.speed, fa.position(ta), ta, tb}, source);
      ta = tb;
    };
    const auto crossing = [&](const Front& q) {
      const double closing = fa.speed - q.speed;
      if (closing == 0.0) return ta;
      const double tc = t0 + (q.position(t0) - xa0) / closing;
      return std::isfinite(tc) ? std::clamp(tc, ta, t1) : ta;
    };
    while (r < r1) {
      flush(crossing(bf[r]));
      ++r;
    }
    while (r > r1) {
      flush(crossing(bf[r - 1]));
      --r;
    }
    flush(t1);
  }
}

}  // namespace

double DecayLedger::max_k() const {
  double m = 0.0;
  for (double x : k) m = std::max(m, x);
  return m;
}

std::optional<double> DecayLedger::final_k() const {
  if (trivial || k.empty()) return std::nullopt;
  return k.back();
}

DecayLedger decay_terms_scalar(const FrontTrajectory& u, const FrontTrajectory& v,
                               const ScalarFlux& f, double t_max, const DecayOptions& options) {
  if (!(t_max >= 0.0)) throw InvalidArgument("decay_terms_scalar: t_max must be non-negative");
  if (t_max > u.t_max() || t_max > v.t_max()) {
    throw InvalidArgument("decay_terms_scalar: trajectories end before t_max");
  }
  DecayLedger out;
  FrontCursor cu(u), cv(v);
  const double psi0 = l1_distance(cu.advance_to(0.0).to_field(), cv.advance_to(0.0).to_field());
  out.psi0 = psi0;
  if (psi0 == 0.0) {
    out.trivial = true;
    out.times = {0.0, t_max};
    out.l1 = out.d2 = out.d3 = {0.0, 0.0};
    return out;
  }

  std::vector<double> times;
  for (double t : union_event_times({&u, &v})) {
    if (t < t_max) times.push_back(t);
  }
  times.push_back(t_max);

  LedgerBuilder lb(f, u.flux.delta(), options, out);
  const auto record = [&](double t, const FrontState& su, const FrontState& sv) {
    out.times.push_back(t);
    out.l1.push_back(l1_distance(su.advanced(t).to_field(), sv.advanced(t).to_field()));
    out.d2.push_back(lb.d2());
    out.d3.push_back(lb.d3());
    out.k.push_back((out.l1.back() + out.d2.back() + out.d3.back()) / psi0);
  };

  const auto emit = [&](const Window& w, int) { lb.book(w); };
  FrontState su = cu.advance_to(0.0), sv = cv.advance_to(0.0);
  record(0.0, su, sv);
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double t0 = times[k], t1 = times[k + 1];
    su = cu.advance_to(t0);
    sv = cv.advance_to(t0);
    std::vector<char> paired(sv.fronts.size(), 0);
    sweep(su, sv, 0, t0, t1, &paired, nullptr, emit);
    // Fronts of v see u as the continuous background.
    sweep(sv, su, 1, t0, t1, nullptr, &paired, [&](const Window& w, int) {
      lb.book(Window{1, w.vm, w.vp, w.um, w.up, w.speed, w.x, w.ta, w.tb});
    });
    record(t1, cu.advance_to(t1), cv.advance_to(t1));
  }
  out.d3_jumps = lb.d3_jumps();
  out.d3_continuous = lb.d3_continuous();
  return out;
}

Vec2 characteristic_components(const Vec2& psi, const Mat2& basis) {
  const double det = basis.determinant();
  if (!(std::abs(det) > 1e-10)) {
    throw IllConditionedBasis("characteristic_components: |det| = " + std::to_string(det));
  }
  Mat2 dual;
  dual << basis(1, 1), -basis(0, 1), -basis(1, 0), basis(0, 0);
  return dual * psi / det;
}

CharacteristicData characteristic_flux(const JumpCharacteristics& jump, double tol) {
  if (jump.family != 1 && jump.family != 2) {
    throw InvalidArgument("characteristic_flux: family must be 1 or 2");
  }
  if (!jump.kind) throw MissingClassification("characteristic_flux: jump is unclassified");
  CharacteristicData d;
  d.jump = jump;
  for (int j = 0; j < 2; ++j) {
    d.beta_minus(j) = (jump.lambda_bar - jump.lambda_minus(j)) * std::abs(jump.alpha_minus(j));
    d.beta_plus(j) = (jump.lambda_plus(j) - jump.lambda_bar) * std::abs(jump.alpha_plus(j));
  }
  const int i = jump.family - 1;
  double margin = INFINITY;
  const auto need = [&](double slack) { margin = std::min(margin, slack); };
  for (int j = 0; j < 2; ++j) {
    const double bm = d.beta_minus(j), bp = d.beta_plus(j);
    if (j < i) {
      need(-bp);
      need(bm);
    } else if (j > i) {
      need(bp);
      need(-bm);
    } else {
      switch (*jump.kind) {
        case JumpKind::kCompressive:
          need(-bm);
          need(-bp);
          break;
        case JumpKind::kRarefaction:
          need(bm);
          need(bp);
          break;
        case JumpKind::kSlowUndercompressive:
          need(bp);
          need(-bm);
          break;
        case JumpKind::kFastUndercompressive:
          need(-bp);
          need(bm);
          break;
      }
    }
  }
  d.sign_margin = margin;
  d.two_unfavorable = *jump.kind == JumpKind::kRarefaction ||
                      (d.beta_minus(i) > tol && d.beta_plus(i) > tol);
  d.sign_pass = margin >= -tol && !d.two_unfavorable;
  return d;
}

DominanceReport dominance_test(const CharacteristicData& data, double matrix_jump,
                               double eigvec_jump, double kappa, double tol) {
  DominanceReport rep;
  const int i = data.jump.family - 1;
  const double sum = data.beta_minus.cwiseAbs().sum();
  const double rhs = eigvec_jump * std::abs(data.beta_minus(i)) + matrix_jump * sum;
  for (int j = 0; j < 2; ++j) {
    rep.margin[j] = kappa * std::abs(data.beta_minus(j)) - rhs;
    rep.dominant[j] = rep.margin[j] >= 0.0;
    if (!rep.dominant[j] || rep.margin[j] <= tol) continue;
    const double am = data.jump.alpha_minus(j), ap = data.jump.alpha_plus(j);
    if (std::abs(am) <= tol || std::abs(ap) <= tol) continue;
    if (j == i && !data.jump.kind) continue;
    bool flip = false;
    if (j == i) {
      const auto k = *data.jump.kind;
      flip = k == JumpKind::kCompressive || k == JumpKind::kRarefaction;
    }
    const bool flipped = (am > 0.0) != (ap > 0.0);
    ++rep.checked;
    if (flipped != flip) ++rep.violations;
    if (j == i ? flipped == flip : flipped != flip) ++rep.reversed_violations;
  }
  return rep;
}

double weighted_norm(const ScalarField& alpha, const ScalarField& w, double w_min, double w_max) {
  for (double x : w.values()) {
    if (!(x >= w_min - 1e-14 && x <= w_max + 1e-14)) {
      throw InvalidWeight("weighted_norm: weight " + std::to_string(x) + " outside [" +
                          std::to_string(w_min) + ", " + std::to_string(w_max) + "]");
    }
  }
  if (alpha.far_left() != 0.0 || alpha.far_right() != 0.0) {
    throw DivergentIntegral("weighted_norm: components must vanish at infinity");
  }
  return integrate_pair(alpha, w, [](double a, double b) { return std::abs(a) * b; });
}

double weighted_norm(const std::array<ScalarField, 2>& alpha, const WeightField& w) {
  if (!(w.w_min > 0.0) || w.w_min > w.w_max) {
    throw InvalidWeight("weighted_norm: bounds must satisfy 0 < w_min <= w_max");
  }
  double sum = 0.0;
  for (int j = 0; j < w.families; ++j) sum += weighted_norm(alpha[j], w.w[j], w.w_min, w.w_max);
  return sum;
}

}  // namespace linstab
