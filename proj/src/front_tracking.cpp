#include "linstab/front_tracking.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "linstab/envelope.hpp"

namespace linstab {

PiecewiseLinearFlux::PiecewiseLinearFlux(const ScalarFlux& f, double delta, double lo,
                                         double hi, const std::vector<double>& extra)
    : flux_(f), delta_(delta) {
  if (!(delta > 0.0)) throw InvalidArgument("flux approximation needs delta > 0");
  for (double e : extra) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  const auto k_lo = static_cast<long long>(std::floor(lo / delta));
  const auto k_hi = static_cast<long long>(std::ceil(hi / delta));
  if (k_hi - k_lo > 50000000) throw InvalidArgument("flux approximation grid too fine");
  std::vector<double> sorted_extra = extra;
  std::sort(sorted_extra.begin(), sorted_extra.end());
  const double merge_eps = 1e-9 * delta;
  for (long long k = k_lo; k <= k_hi; ++k) {
    const double u = static_cast<double>(k) * delta;
    const auto it = std::lower_bound(sorted_extra.begin(), sorted_extra.end(), u - merge_eps);
    if (it != sorted_extra.end() && *it <= u + merge_eps) continue;  // data value wins
    nodes_.push_back(u);
  }
  nodes_.insert(nodes_.end(), sorted_extra.begin(), sorted_extra.end());
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  values_.reserve(nodes_.size());
  for (double u : nodes_) values_.push_back(f(u));
}

std::size_t PiecewiseLinearFlux::index_of(double u) const {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), u);
  if (it == nodes_.end() || *it != u) {
    std::ostringstream msg;
    msg << "state " << u << " is not a node of the flux approximation";
    throw InvalidArgument(msg.str());
  }
  return static_cast<std::size_t>(it - nodes_.begin());
}

double PiecewiseLinearFlux::operator()(double u) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u);
  std::size_t k = std::clamp<std::size_t>(static_cast<std::size_t>(it - nodes_.begin()), 1,
                                          nodes_.size() - 1);
  const double t = (u - nodes_[k - 1]) / (nodes_[k] - nodes_[k - 1]);
  return values_[k - 1] + t * (values_[k] - values_[k - 1]);
}

PiecewiseLinearFlux shared_flux(const ScalarFlux& f, double delta,
                                const std::vector<const ScalarField*>& data) {
  std::vector<double> extra;
  for (const auto* field : data) {
    extra.insert(extra.end(), field->values().begin(), field->values().end());
  }
  if (extra.empty()) throw InvalidArgument("shared_flux needs at least one field");
  const auto [lo, hi] = std::minmax_element(extra.begin(), extra.end());
  return PiecewiseLinearFlux(f, delta, *lo, *hi, extra);
}

FrontState FrontState::advanced(double t) const {
  FrontState out = *this;
  for (auto& fr : out.fronts) fr.x = fr.position(t);
  out.time = t;
  return out;
}

ScalarField FrontState::to_field() const {
  std::vector<double> b;
  std::vector<double> v{far_left};
  for (const auto& fr : fronts) {
    if (!b.empty() && fr.x <= b.back() + 1e-12) {
      v.back() = fr.right;
    } else {
      b.push_back(fr.x);
      v.push_back(fr.right);
    }
  }
  return ScalarField(std::move(b), std::move(v));
}

namespace {

// Replace the consumed block of `fronts` by the created fronts.
void apply(std::vector<Front>& fronts, const Interaction& ev) {
  if (ev.consumed.empty()) {
    auto pos = std::lower_bound(fronts.begin(), fronts.end(), ev.x,
                                [](const Front& f, double x) { return f.x < x; });
    fronts.insert(pos, ev.created.begin(), ev.created.end());
    return;
  }
  auto first = std::find_if(fronts.begin(), fronts.end(),
                            [&](const Front& f) { return f.id == ev.consumed.front(); });
  if (first == fronts.end() ||
      static_cast<std::size_t>(fronts.end() - first) < ev.consumed.size()) {
    throw InvalidArgument("trajectory replay lost a front");
  }
  const auto last = first + static_cast<std::ptrdiff_t>(ev.consumed.size());
  const auto at = fronts.erase(first, last);
  fronts.insert(at, ev.created.begin(), ev.created.end());
}

}  // namespace

FrontState FrontTrajectory::at(double t) const {
  auto it = std::upper_bound(checkpoints.begin(), checkpoints.end(), t,
                             [](double value, const Checkpoint& c) { return value < c.state.time; });
  if (it == checkpoints.begin()) return checkpoints.front().state.advanced(t);
  const Checkpoint& c = *std::prev(it);
  FrontState s = c.state;
  for (std::size_t k = c.applied; k < interactions.size() && interactions[k].t <= t; ++k) {
    apply(s.fronts, interactions[k]);
  }
  return s.advanced(t);
}

std::size_t FrontTrajectory::front_count() const {
  std::size_t n = 0;
  for (const auto& ev : interactions) n += ev.created.size();
  return n;
}

FrontCursor::FrontCursor(const FrontTrajectory& traj) : traj_(&traj) {
  state_.far_left = traj.far_left;
  state_.time = 0.0;
}

const FrontState& FrontCursor::advance_to(double t) {
  if (t < state_.time) throw InvalidArgument("FrontCursor cannot move backwards");
  const auto& evs = traj_->interactions;
  while (next_ < evs.size() && evs[next_].t <= t) apply(state_.fronts, evs[next_++]);
  for (auto& fr : state_.fronts) fr.x = fr.position(t);
  state_.time = t;
  return state_;
}

std::vector<Front> riemann_fronts(const PiecewiseLinearFlux& g, double u_l, double u_r,
                                  double x, double t, std::int64_t& next_id) {
  std::vector<Front> out;
  if (u_l == u_r) return out;
  const std::size_t il = g.index_of(u_l), ir = g.index_of(u_r);
  const bool increasing = il < ir;
  const std::size_t lo = std::min(il, ir), hi = std::max(il, ir);
  std::vector<double> us(g.nodes().begin() + lo, g.nodes().begin() + hi + 1);
  std::vector<double> gs(g.values().begin() + lo, g.values().begin() + hi + 1);
  auto hull = hull_indices(us, gs, increasing ? EnvelopeSide::kLower : EnvelopeSide::kUpper);
  if (!increasing) std::reverse(hull.begin(), hull.end());
  // Vertices whose chords are collinear up to rounding would give fronts
  // that collide at once; drop them so speeds strictly increase.
  auto slope = [&](std::size_t a, std::size_t b) { return (gs[b] - gs[a]) / (us[b] - us[a]); };
  std::vector<std::size_t> kept;
  for (std::size_t v : hull) {
    while (kept.size() >= 2 && !(slope(kept[kept.size() - 2], kept.back()) < slope(kept.back(), v))) {
      kept.pop_back();
    }
    kept.push_back(v);
  }
  hull = std::move(kept);
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const std::size_t a = hull[k - 1], b = hull[k];
    Front fr;
    fr.id = next_id++;
    fr.x = fr.x0 = x;
    fr.t0 = t;
    fr.left = us[a];
    fr.right = us[b];
    fr.speed = (gs[b] - gs[a]) / (us[b] - us[a]);
    fr.kind = (a > b ? a - b : b - a) == 1 ? FrontKind::kRarefaction : FrontKind::kShock;
    out.push_back(fr);
  }
  return out;
}

FrontTrajectory front_tracking_evolve(const PiecewiseLinearFlux& g, const ScalarField& u0,
                                      double t_max, const FrontTrackingOptions& options) {
  if (!(t_max >= 0.0)) throw InvalidArgument("t_max must be non-negative");
  FrontTrajectory traj;
  traj.flux = g;
  traj.far_left = u0.far_left();
  std::int64_t next_id = 0;
  std::vector<Front> fronts;
  const auto& bp = u0.breakpoints();
  for (std::size_t i = 0; i < bp.size(); ++i) {
    auto fan = riemann_fronts(g, u0.values()[i], u0.values()[i + 1], bp[i], 0.0, next_id);
    fronts.insert(fronts.end(), fan.begin(), fan.end());
    traj.interactions.push_back({0.0, bp[i], {}, std::move(fan)});
  }
  double t = 0.0;
  traj.times.push_back(t);
  const std::size_t every = std::max<std::size_t>(1, options.checkpoint_every);
  traj.checkpoints.push_back({traj.interactions.size(), {t, traj.far_left, fronts}});

  std::size_t events = 0;
  std::vector<double> pair_time;
  while (true) {
    if (fronts.size() > options.front_budget) {
      throw ResourceLimit("front budget exceeded", t);
    }
    const std::size_t n = fronts.size();
    pair_time.assign(n > 0 ? n - 1 : 0, INFINITY);
    double dt_min = INFINITY;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double closing = fronts[i].speed - fronts[i + 1].speed;
      if (closing > 0.0) {
        const double gap = std::max(0.0, fronts[i + 1].x - fronts[i].x);
        pair_time[i] = gap / closing;
        dt_min = std::min(dt_min, pair_time[i]);
      }
    }
    if (!(t + dt_min <= t_max)) {
      t = t_max;
      for (auto& fr : fronts) fr.x = fr.position(t);
      if (traj.times.back() < t_max) traj.times.push_back(t_max);
      break;
    }
    if (++events > options.event_budget) throw ResourceLimit("event budget exceeded", t);
    const double t_new = t + dt_min;
    for (auto& fr : fronts) fr.x = fr.position(t_new);
    std::vector<Front> next;
    next.reserve(n + 8);
    std::size_t i = 0;
    while (i < n) {
      if (i + 1 < n && pair_time[i] <= dt_min + options.simultaneity) {
        std::size_t j = i + 1;
        while (j + 1 < n && pair_time[j] <= dt_min + options.simultaneity) ++j;
        double x = 0.0;
        for (std::size_t k = i; k <= j; ++k) x += fronts[k].x;
        x /= static_cast<double>(j - i + 1);
        if (!next.empty()) x = std::max(x, next.back().x);
        if (j + 1 < n) x = std::min(x, fronts[j + 1].x);
        Interaction ev{t_new, x, {}, {}};
        for (std::size_t k = i; k <= j; ++k) ev.consumed.push_back(fronts[k].id);
        ev.created = riemann_fronts(g, fronts[i].left, fronts[j].right, x, t_new, next_id);
        next.insert(next.end(), ev.created.begin(), ev.created.end());
        traj.interactions.push_back(std::move(ev));
        i = j + 1;
      } else {
        next.push_back(fronts[i]);
        ++i;
      }
    }
    fronts = std::move(next);
    t = t_new;
    if (traj.times.back() < t) traj.times.push_back(t);
    if (events % every == 0) {
      traj.checkpoints.push_back({traj.interactions.size(), {t, traj.far_left, fronts}});
    }
  }
  traj.checkpoints.push_back({traj.interactions.size(), {t, traj.far_left, fronts}});
  return traj;
}

FrontTrajectory front_tracking_evolve(const ScalarFlux& f, const ScalarField& u0,
                                      double delta, double t_max,
                                      const FrontTrackingOptions& options) {
  if (!(delta > 0.0)) throw InvalidArgument("front tracking needs delta > 0");
  return front_tracking_evolve(shared_flux(f, delta, {&u0}), u0, t_max, options);
}

FrontTrajectory free_fronts_trajectory(const PiecewiseLinearFlux& g, double far_left,
                                       std::vector<Front> fronts, double t_max) {
  if (!(t_max > 0.0)) throw InvalidArgument("t_max must be positive");
  double state = far_left;
  for (std::size_t k = 0; k < fronts.size(); ++k) {
    auto& fr = fronts[k];
    if (fr.left != state) throw InvalidArgument("front states are not continuous");
    state = fr.right;
    fr.x0 = fr.x;
    fr.t0 = 0.0;
    if (k > 0) {
      const auto& prev = fronts[k - 1];
      if (fr.x < prev.x) throw InvalidArgument("fronts must be sorted by position");
      if (prev.position(t_max) >= fr.position(t_max) && prev.speed > fr.speed) {
        throw InvalidArgument("free fronts would interact before t_max");
      }
    }
  }
  FrontTrajectory traj;
  traj.flux = g;
  traj.far_left = far_left;
  for (const auto& fr : fronts) traj.interactions.push_back({0.0, fr.x, {}, {fr}});
  traj.times = {0.0, t_max};
  traj.checkpoints.push_back({traj.interactions.size(), {0.0, far_left, fronts}});
  return traj;
}

std::vector<double> union_event_times(const std::vector<const FrontTrajectory*>& trajs) {
  std::vector<double> times;
  for (const auto* tr : trajs) times.insert(times.end(), tr->times.begin(), tr->times.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

}  // namespace linstab
