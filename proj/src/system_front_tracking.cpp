#include <algorithm>
#include <cmath>
#include <limits>

#include "linstab/systems.hpp"

namespace linstab {
namespace {

constexpr double kTouch = 1e-12;

std::vector<SystemFront> riemann_system_fronts(const HyperbolicModel& m, const Vec2& ul,
                                               const Vec2& ur, double x, double delta,
                                               std::int64_t& next_id) {
  std::vector<SystemFront> out;
  const auto sol = solve_riemann_system(m, ul, ur);
  for (const auto& w : sol.waves) {
    if (w.shock) {
      out.push_back({next_id++, x, w.left, w.right, w.speed, w.family, true});
      continue;
    }
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(w.eps) / delta)));
    auto states = integral_curve(m, w.left, w.family, w.eps, pieces);
    states.back() = w.right;
    for (int k = 0; k < pieces; ++k) {
      // Roe-type speed of the small jump.
      const Vec2 a = states[k], b = states[k + 1];
      const double speed = 0.5 * (eigenvalue(m, a, w.family) + eigenvalue(m, b, w.family));
      out.push_back({next_id++, x, a, b, speed, w.family, false});
    }
  }
  return out;
}

void advance(SystemFrontState& s, double t) {
  for (auto& fr : s.fronts) fr.x += fr.speed * (t - s.time);
  s.time = t;
}

}  // namespace

SystemField SystemFrontState::to_field() const {
  std::vector<double> b;
  std::vector<Vec2> v{far_left};
  for (const auto& fr : fronts) {
    if (!b.empty() && fr.x <= b.back() + kTouch) {
      v.back() = fr.right;
    } else {
      b.push_back(fr.x);
      v.push_back(fr.right);
    }
  }
  return SystemField(std::move(b), std::move(v));
}

SystemFrontState SystemFrontTrajectory::at(double t) const {
  if (states.empty()) throw InvalidArgument("empty system trajectory");
  auto it = std::upper_bound(states.begin(), states.end(), t,
                             [](double x, const SystemFrontState& s) { return x < s.time; });
  if (it != states.begin()) --it;
  SystemFrontState s = *it;
  advance(s, std::max(t, s.time));
  return s;
}

SystemFrontTrajectory system_front_tracking(const HyperbolicModel& m, const SystemField& u0,
                                            double t_max, const SystemTrackingOptions& options) {
  if (!(options.delta > 0.0)) throw InvalidArgument("system front tracking: delta must be positive");
  SystemFrontTrajectory traj;
  traj.t_max = t_max;
  SystemFrontState s;
  s.far_left = u0.far_left();
  std::int64_t next_id = 0;
  const auto& b = u0.breakpoints();
  for (std::size_t k = 0; k < b.size(); ++k) {
    auto fr = riemann_system_fronts(m, u0.values()[k], u0.values()[k + 1], b[k], options.delta,
                                    next_id);
    s.fronts.insert(s.fronts.end(), fr.begin(), fr.end());
  }
  traj.states.push_back(s);

  while (true) {
    double dt = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < s.fronts.size(); ++k) {
      const double closing = s.fronts[k].speed - s.fronts[k + 1].speed;
      if (closing > 0.0) {
        dt = std::min(dt, std::max(0.0, s.fronts[k + 1].x - s.fronts[k].x) / closing);
      }
    }
    if (s.time + dt >= t_max) {
      advance(s, t_max);
      traj.states.push_back(s);
      return traj;
    }
    if (++traj.interactions > options.interaction_budget) {
      throw ResourceLimit("system front tracking: interaction budget exceeded", s.time);
    }
    advance(s, s.time + dt);
    std::vector<SystemFront> next;
    std::size_t k = 0;
    while (k < s.fronts.size()) {
      std::size_t j = k;
      while (j + 1 < s.fronts.size() && s.fronts[j + 1].x - s.fronts[j].x <= kTouch &&
             s.fronts[j].speed > s.fronts[j + 1].speed) {
        ++j;
      }
      if (j == k) {
        next.push_back(s.fronts[k]);
      } else {
        const double x = s.fronts[k].x;
        auto fr = riemann_system_fronts(m, s.fronts[k].left, s.fronts[j].right, x, options.delta,
                                        next_id);
        next.insert(next.end(), fr.begin(), fr.end());
      }
      k = j + 1;
    }
    s.fronts = std::move(next);
    if (s.fronts.size() > options.front_budget) {
      throw ResourceLimit("system front tracking: front budget exceeded", s.time);
    }
    traj.states.push_back(s);
  }
}

std::array<ScanReport, 2> scan_rarefaction_free_systems(const SystemFrontTrajectory& u,
                                                        const SystemFrontTrajectory& v,
                                                        const SystemFlux& f, double tol) {
  std::array<ScanReport, 2> rep;
  std::vector<double> times;
  for (const auto& s : u.states) times.push_back(s.time);
  for (const auto& s : v.states) times.push_back(s.time);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  const double t_end = std::min(u.t_max, v.t_max);

  const auto classify = [&](double t, double x, const Vec2& um, const Vec2& up, const Vec2& vm,
                            const Vec2& vp, double speed) {
    const auto am = averaged_matrix(f, um, vm);
    const auto ap = averaged_matrix(f, up, vp);
    for (int j = 1; j <= 2; ++j) {
      const double lm = am.lambda(j), lp = ap.lambda(j);
      const double scale = std::max({1.0, std::abs(lm), std::abs(lp), std::abs(speed)});
      JumpRecord r{t, x, lm, lp, speed, j, classify_jump(lm, lp, speed, tol * scale)};
      auto& out = rep[j - 1];
      ++out.counts[static_cast<std::size_t>(r.cls.kind)];
      if (r.cls.degenerate) ++out.degenerate;
      if (r.cls.kind == JumpKind::kRarefaction) {
        out.worst_rarefaction_margin = std::max(out.worst_rarefaction_margin, r.cls.margin);
        if (r.cls.margin > tol * scale) {
          ++out.rarefaction_violations;
          out.rarefaction_records.push_back(r);
        }
      }
    }
  };

  // Fronts of `a` against the background `b`; coincident pairs are handled
  // once from the u side.
  const auto pass = [&](double t, const SystemFrontState& a, const SystemFrontState& b,
                        bool a_is_u) {
    const auto bf = b.to_field();
    for (const auto& fr : a.fronts) {
      if (!fr.shock) continue;
      const SystemFront* partner = nullptr;
      bool crossing = false;
      for (const auto& q : b.fronts) {
        if (std::abs(q.x - fr.x) > kTouch) continue;
        if (std::abs(q.speed - fr.speed) <= 1e-12) {
          partner = &q;
        } else {
          crossing = true;
        }
      }
      if (crossing) {
        ++rep[fr.family - 1].degenerate;
        continue;
      }
      if (partner && !a_is_u && partner->shock) continue;
      const Vec2 bm = partner ? partner->left : bf(fr.x);
      const Vec2 bp = partner ? partner->right : bf(fr.x);
      if (a_is_u) {
        classify(t, fr.x, fr.left, fr.right, bm, bp, fr.speed);
      } else {
        classify(t, fr.x, bm, bp, fr.left, fr.right, fr.speed);
      }
    }
  };

  for (double t : times) {
    if (t > t_end) break;
    const auto su = u.at(t), sv = v.at(t);
    pass(t, su, sv, true);
    pass(t, sv, su, false);
    for (auto& r : rep) ++r.sampled_times;
  }
  return rep;
}

}  // namespace linstab
