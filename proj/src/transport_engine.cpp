#include "transport_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace linstab::detail {
namespace {

constexpr double kCoincident = 1e-12;

bool same_value(double a, double b) {
  return std::abs(a - b) <= 1e-14 * std::max({1.0, std::abs(a), std::abs(b)});
}

TransportEngine::Item marker(double x, double t, double speed, double atom = 0.0) {
  TransportEngine::Item it;
  it.front.id = -1;
  it.front.x = it.front.x0 = x;
  it.front.t0 = t;
  it.front.speed = speed;
  it.atom = atom;
  return it;
}

}  // namespace

TransportEngine::TransportEngine(const CoefficientField& a, Mode mode,
                                 const ScalarMeasure& initial, WeightRule rule)
    : coef_(a), mode_(mode), rule_(rule) {
  std::vector<Item> all;
  double u_far = 0.0, v_far = 0.0;
  {
    FrontCursor cu(coef_.u());
    const auto& s = cu.advance_to(0.0);
    u_far = s.far_left;
    for (const auto& fr : s.fronts) all.push_back({0, fr, 0.0});
    const auto& evs = coef_.u().interactions;
    while (next_u_ < evs.size() && evs[next_u_].t <= 0.0) ++next_u_;
  }
  if (coef_.v()) {
    FrontCursor cv(*coef_.v());
    const auto& s = cv.advance_to(0.0);
    v_far = s.far_left;
    for (const auto& fr : s.fronts) all.push_back({1, fr, 0.0});
    const auto& evs = coef_.v()->interactions;
    while (next_v_ < evs.size() && evs[next_v_].t <= 0.0) ++next_v_;
  }
  for (double b : initial.bv.breakpoints()) all.push_back(marker(b, 0.0, 0.0));
  for (const auto& at : initial.atoms) all.push_back(marker(at.x, 0.0, 0.0, at.mass));
  std::stable_sort(all.begin(), all.end(),
                   [](const Item& p, const Item& q) { return p.front.x < q.front.x; });
  items_ = std::move(all);

  const std::size_t n = items_.size();
  ru_.assign(n + 1, u_far);
  rv_.assign(n + 1, v_far);
  psi_.assign(n + 1, initial.bv.far_left());
  for (std::size_t k = 0; k < n; ++k) {
    ru_[k + 1] = ru_[k];
    rv_[k + 1] = rv_[k];
    const auto& it = items_[k];
    if (it.source == 0) ru_[k + 1] = it.front.right;
    if (it.source == 1) rv_[k + 1] = it.front.right;
    if (k + 1 == n) {
      psi_[k + 1] = initial.bv.far_right();
    } else {
      const double x1 = it.front.x, x2 = items_[k + 1].front.x;
      psi_[k + 1] = x2 > x1 ? initial.bv(0.5 * (x1 + x2)) : initial.bv(x1);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!items_[k].is_jump()) items_[k].front.speed = region_speed(k);
  }
  // Coefficient jumps present at t = 0 start as clusters.
  std::size_t end = n;
  while (end > 0) {
    std::size_t start = end - 1;
    while (start > 0 && items_[start].front.x - items_[start - 1].front.x <= kCoincident) --start;
    std::vector<Item> jumps;
    for (std::size_t k = start; k < end; ++k) {
      if (items_[k].is_jump()) jumps.push_back(items_[k]);
    }
    if (!jumps.empty()) resolve(start, end - 1, std::move(jumps), items_[start].front.x);
    end = start;
  }
}

double TransportEngine::clamp(double w) {
  if (w < rule_.w_min || w > rule_.w_max) {
    ++clamps_;
    return std::clamp(w, rule_.w_min, rule_.w_max);
  }
  return w;
}

double TransportEngine::emit_right(double trace, double a_l, double a_r, double lambda,
                                   bool both) {
  if (mode_ == Mode::kMeasure) return both ? 0.0 : trace * (a_l - lambda) / (a_r - lambda);
  if (both) return clamp(r_prior_);
  return clamp(trace * (1.0 - rule_.c * std::abs(a_r - a_l)));
}

double TransportEngine::emit_left(double trace, double a_l, double a_r, double lambda,
                                  bool both) {
  if (mode_ == Mode::kMeasure) return both ? 0.0 : trace * (a_r - lambda) / (a_l - lambda);
  if (both) return clamp(r_prior_);
  return clamp(trace * (1.0 - rule_.c * std::abs(a_r - a_l)));
}

void TransportEngine::resolve(std::size_t i, std::size_t j, std::vector<Item> jumps, double x) {
  double pooled = 0.0;
  for (std::size_t k = i; k <= j; ++k) pooled += items_[k].atom;
  for (auto& jp : jumps) jp.atom = 0.0;
  const double psi_l = psi_[i], psi_r = psi_[j + 1];
  const std::size_t m = jumps.size();

  std::vector<double> us(m + 1), vs(m + 1), as(m + 1);
  us[0] = ru_[i];
  vs[0] = rv_[i];
  for (std::size_t k = 0; k < m; ++k) {
    us[k + 1] = us[k];
    vs[k + 1] = vs[k];
    const auto& fr = jumps[k].front;
    double& state = jumps[k].source == 0 ? us[k + 1] : vs[k + 1];
    if (state != fr.left) throw TracingError("transport: coefficient states do not chain", t_, x);
    state = fr.right;
  }
  if (us[m] != ru_[j + 1] || vs[m] != rv_[j + 1]) {
    throw TracingError("transport: cluster does not reconnect to the right state", t_, x);
  }
  for (std::size_t k = 0; k <= m; ++k) as[k] = coef_.region_speed(us[k], vs[k]);

  std::vector<char> lout(m), rout(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double lam = jumps[k].front.speed;
    lout[k] = as[k] < lam;
    rout[k] = as[k + 1] > lam;
  }
  // vl[k], vr[k]: values at the left and right ends of region k.
  std::vector<double> vl(m + 1, 0.0), vr(m + 1, 0.0);
  vl[0] = vr[0] = psi_l;
  vl[m] = vr[m] = psi_r;
  r_prior_ = std::min(psi_l, psi_r);
  for (std::size_t k = 0; k < m; ++k) {
    if (!rout[k]) continue;
    const double e = emit_right(vr[k], as[k], as[k + 1], jumps[k].front.speed, lout[k]);
    vl[k + 1] = e;
    if (k + 1 < m) vr[k + 1] = e;
  }
  for (std::size_t k = m; k-- > 0;) {
    if (!lout[k]) continue;
    const double e = emit_left(vl[k + 1], as[k], as[k + 1], jumps[k].front.speed, rout[k]);
    vr[k] = e;
    if (k > 0 && !rout[k - 1]) vl[k] = e;
  }

  if (pooled != 0.0 && m > 0) {
    std::size_t target = m / 2;
    double best = -1.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double lam = jumps[k].front.speed;
      if (as[k] >= lam && lam >= as[k + 1] && as[k] - as[k + 1] > best) {
        best = as[k] - as[k + 1];
        target = k;
      }
    }
    jumps[target].atom = pooled;
  }

  // New items with the value and states to the right of each.
  std::vector<Item> seq;
  std::vector<double> val, su, sv;
  auto push = [&](Item it, double right_value, double u, double v) {
    seq.push_back(std::move(it));
    val.push_back(right_value);
    su.push_back(u);
    sv.push_back(v);
  };
  if (m == 0) {
    if (!same_value(psi_l, psi_r) || pooled != 0.0) {
      push(marker(x, t_, as[0], pooled), psi_r, us[0], vs[0]);
    }
  } else {
    if (lout[0] && !same_value(vr[0], psi_l)) push(marker(x, t_, as[0]), vr[0], us[0], vs[0]);
    for (std::size_t k = 0; k < m; ++k) {
      const bool last = k + 1 == m;
      double right = vl[k + 1];
      if (last && same_value(right, psi_r)) right = psi_r;
      push(jumps[k], right, us[k + 1], vs[k + 1]);
      if (!last && !same_value(vl[k + 1], vr[k + 1])) {
        push(marker(x, t_, as[k + 1]), vr[k + 1], us[k + 1], vs[k + 1]);
      }
      if (last && right != psi_r) push(marker(x, t_, as[m]), psi_r, us[m], vs[m]);
    }
  }

  const auto first = static_cast<std::ptrdiff_t>(i);
  const auto count = static_cast<std::ptrdiff_t>(j - i + 1);
  items_.erase(items_.begin() + first, items_.begin() + first + count);
  items_.insert(items_.begin() + first, seq.begin(), seq.end());
  // Regions i+1 .. j are replaced by the regions right of seq[0 .. L-2].
  auto replace = [&](std::vector<double>& arr, const std::vector<double>& fresh) {
    arr.erase(arr.begin() + first + 1, arr.begin() + first + 1 + (count - 1));
    const std::size_t inner = seq.empty() ? 0 : seq.size() - 1;
    if (seq.empty()) {
      // Regions i and j+1 merge into one.
      arr.erase(arr.begin() + first + 1);
      return;
    }
    arr.insert(arr.begin() + first + 1, fresh.begin(),
               fresh.begin() + static_cast<std::ptrdiff_t>(inner));
  };
  replace(psi_, val);
  replace(ru_, su);
  replace(rv_, sv);
}

void TransportEngine::process_interaction(int source, const Interaction& ev) {
  if (ev.consumed.empty()) return;
  auto find = [&](std::int64_t id, std::size_t from) {
    for (std::size_t k = from; k < items_.size(); ++k) {
      if (items_[k].source == source && items_[k].front.id == id) return k;
    }
    throw TracingError("transport: coefficient front not found", ev.t, ev.x);
  };
  const std::size_t i = find(ev.consumed.front(), 0);
  const std::size_t j = find(ev.consumed.back(), i);
  std::vector<Item> jumps;
  for (const auto& fr : ev.created) jumps.push_back({source, fr, 0.0});
  for (std::size_t k = i; k <= j; ++k) {
    if (items_[k].is_jump() && items_[k].source != source) jumps.push_back(items_[k]);
  }
  std::stable_sort(jumps.begin(), jumps.end(),
                   [](const Item& p, const Item& q) { return p.front.speed < q.front.speed; });
  resolve(i, j, std::move(jumps), ev.x);
}

double TransportEngine::next_pair_time(std::vector<double>* per_pair) const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = items_.size();
  if (per_pair) per_pair->assign(n > 0 ? n - 1 : 0, std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const auto& p = items_[k];
    const auto& q = items_[k + 1];
    if (!p.is_jump() && !q.is_jump()) continue;
    if (p.is_jump() && q.is_jump() && p.source == q.source) continue;
    const double closing = p.front.speed - q.front.speed;
    if (!(closing > 0.0)) continue;
    const double gap = std::max(0.0, q.front.position(t_) - p.front.position(t_));
    const double dt = gap / closing;
    if (per_pair) (*per_pair)[k] = dt;
    best = std::min(best, dt);
  }
  return best;
}

void TransportEngine::settle_collisions() {
  std::vector<double> pt;
  for (int round = 0;; ++round) {
    if (round > 100000) throw TracingError("transport: collisions do not settle", t_, 0.0);
    next_pair_time(&pt);
    bool any = false;
    std::size_t k = pt.size();
    while (k > 0) {
      --k;
      if (!(pt[k] <= kCoincident)) continue;
      std::size_t lo = k;
      while (lo > 0 && pt[lo - 1] <= kCoincident) --lo;
      const std::size_t i = lo, j = k + 1;
      std::vector<Item> jumps;
      double x = items_[i].front.position(t_);
      bool have_x = false;
      for (std::size_t q = i; q <= j; ++q) {
        if (!items_[q].is_jump()) continue;
        jumps.push_back(items_[q]);
        if (!have_x) {
          x = items_[q].front.position(t_);
          have_x = true;
        }
      }
      std::stable_sort(jumps.begin(), jumps.end(),
                       [](const Item& p, const Item& q) { return p.front.speed < q.front.speed; });
      resolve(i, j, std::move(jumps), x);
      any = true;
      k = lo;
    }
    if (!any) return;
  }
}

void TransportEngine::grow_atoms(double dt) {
  if (mode_ != Mode::kMeasure || dt <= 0.0) return;
  for (std::size_t k = 0; k < items_.size(); ++k) {
    if (!items_[k].is_jump()) continue;
    const double lam = items_[k].front.speed;
    const double rate =
        (region_speed(k) - lam) * psi_[k] - (region_speed(k + 1) - lam) * psi_[k + 1];
    items_[k].atom += rate * dt;
  }
}

double TransportEngine::next_event_time() const {
  const auto& uev = coef_.u().interactions;
  const auto* vev = coef_.v() ? &coef_.v()->interactions : nullptr;
  const double tu = next_u_ < uev.size() ? uev[next_u_].t : INFINITY;
  const double tv = vev && next_v_ < vev->size() ? (*vev)[next_v_].t : INFINITY;
  return std::min({tu, tv, t_ + next_pair_time(nullptr)});
}

void TransportEngine::advance_to(double t) {
  if (t < t_) throw InvalidArgument("transport engine cannot move backwards");
  const auto& uev = coef_.u().interactions;
  const auto* vev = coef_.v() ? &coef_.v()->interactions : nullptr;
  while (true) {
    const double tu = next_u_ < uev.size() ? uev[next_u_].t : INFINITY;
    const double tv = vev && next_v_ < vev->size() ? (*vev)[next_v_].t : INFINITY;
    const double tn = std::min({tu, tv, t_ + next_pair_time(nullptr)});
    if (tn > t) {
      grow_atoms(t - t_);
      t_ = t;
      return;
    }
    if (++events_ > event_budget) throw ResourceLimit("transport event budget exceeded", t_);
    grow_atoms(tn - t_);
    t_ = tn;
    while (next_u_ < uev.size() && uev[next_u_].t <= t_) process_interaction(0, uev[next_u_++]);
    while (vev && next_v_ < vev->size() && (*vev)[next_v_].t <= t_) {
      process_interaction(1, (*vev)[next_v_++]);
    }
    settle_collisions();
  }
}

ScalarMeasure TransportEngine::measure() const {
  std::vector<double> b;
  std::vector<double> v{psi_.front()};
  ScalarMeasure m;
  for (std::size_t k = 0; k < items_.size(); ++k) {
    const double x = position(k);
    if (!b.empty() && !(x > b.back())) {
      v.back() = psi_[k + 1];
    } else {
      b.push_back(x);
      v.push_back(psi_[k + 1]);
    }
    if (items_[k].atom != 0.0) m.atoms.push_back({x, items_[k].atom, items_[k].is_jump()});
  }
  m.bv = ScalarField(std::move(b), std::move(v));
  return m;
}

double TransportEngine::mass_norm() const {
  if (psi_.front() != 0.0 || psi_.back() != 0.0) return INFINITY;
  double total = 0.0;
  for (std::size_t k = 1; k < items_.size(); ++k) {
    total += std::abs(psi_[k]) * std::max(0.0, position(k) - position(k - 1));
  }
  for (const auto& it : items_) total += std::abs(it.atom);
  return total;
}

}  // namespace linstab::detail
