#include "linstab/shock_path.hpp"

#include <cmath>
#include <sstream>

namespace linstab {
namespace {

AmbiguousTracking ambiguous(double t, std::size_t count) {
  std::ostringstream msg;
  msg << "track_shock_path: " << count << " dominant jumps in window at t = " << t;
  return AmbiguousTracking(msg.str());
}

double pick_jump(const ScalarField& u, double t, const SpaceTimeWindow& w, double min_strength) {
  std::size_t found = 0;
  double where = 0.0;
  const auto& b = u.breakpoints();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] < w.x0 || b[i] > w.x1) continue;
    if (std::abs(u.values()[i + 1] - u.values()[i]) >= min_strength) {
      ++found;
      where = b[i];
    }
  }
  if (found != 1) throw ambiguous(t, found);
  return where;
}

}  // namespace

double Polyline::max_deviation(const std::function<double(double)>& exact) const {
  double m = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) m = std::max(m, std::abs(x[k] - exact(t[k])));
  return m;
}

Polyline track_shock_path(const FrontTrajectory& traj, const SpaceTimeWindow& window,
                          double min_strength) {
  Polyline path;
  FrontCursor cursor(traj);
  for (double t : traj.times) {
    if (t < window.t0 || t > window.t1) continue;
    path.t.push_back(t);
    path.x.push_back(pick_jump(cursor.advance_to(t).to_field(), t, window, min_strength));
  }
  if (path.t.empty()) throw ambiguous(window.t0, 0);
  return path;
}

Polyline track_shock_path(const std::vector<double>& times,
                          const std::vector<ScalarField>& fields, const SpaceTimeWindow& window,
                          double min_strength) {
  Polyline path;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < window.t0 || times[k] > window.t1) continue;
    path.t.push_back(times[k]);
    path.x.push_back(pick_jump(fields[k], times[k], window, min_strength));
  }
  if (path.t.empty()) throw ambiguous(window.t0, 0);
  return path;
}

}  // namespace linstab
