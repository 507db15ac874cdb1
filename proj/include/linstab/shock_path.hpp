#ifndef LINSTAB_SHOCK_PATH_HPP_
#define LINSTAB_SHOCK_PATH_HPP_

#include <functional>
#include <vector>

#include "linstab/field.hpp"
#include "linstab/front_tracking.hpp"

namespace linstab {

struct SpaceTimeWindow {
  double t0 = 0.0, t1 = 1.0;
  double x0 = -1.0, x1 = 1.0;
};

// Approximate shock curve t -> y(t), one vertex per sampled time.
struct Polyline {
  std::vector<double> t;
  std::vector<double> x;

  double max_deviation(const std::function<double(double)>& exact) const;
};

// Location of the single jump of strength >= min_strength inside the window
// at each time level; AmbiguousTracking when there are zero or several.
Polyline track_shock_path(const FrontTrajectory& traj, const SpaceTimeWindow& window,
                          double min_strength);
Polyline track_shock_path(const std::vector<double>& times,
                          const std::vector<ScalarField>& fields, const SpaceTimeWindow& window,
                          double min_strength);

}  // namespace linstab

#endif  // LINSTAB_SHOCK_PATH_HPP_
