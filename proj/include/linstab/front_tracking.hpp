#ifndef LINSTAB_FRONT_TRACKING_HPP_
#define LINSTAB_FRONT_TRACKING_HPP_

#include <cstdint>
#include <vector>

#include "linstab/field.hpp"
#include "linstab/flux.hpp"

namespace linstab {

// Continuous piecewise-linear interpolant g of a scalar flux on a node set.
// All front-tracking states are nodes, so every chord of g between states is
// a chord of f.
class PiecewiseLinearFlux {
 public:
  PiecewiseLinearFlux() = default;
  // Uniform grid k*delta covering [lo, hi], united with `extra` nodes.
  PiecewiseLinearFlux(const ScalarFlux& f, double delta, double lo, double hi,
                      const std::vector<double>& extra = {});

  const ScalarFlux& flux() const { return flux_; }
  double delta() const { return delta_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }

  // Index of a node; throws InvalidArgument when u is not a node.
  std::size_t index_of(double u) const;
  double operator()(double u) const;

 private:
  ScalarFlux flux_;
  double delta_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

// Flux approximation shared by several data sets (so that their solutions
// are solutions of the same approximate problem).
PiecewiseLinearFlux shared_flux(const ScalarFlux& f, double delta,
                                const std::vector<const ScalarField*>& data);

enum class FrontKind { kShock, kRarefaction };

struct Front {
  std::int64_t id = 0;
  double x = 0.0;  // position at the time of the enclosing state
  double left = 0.0;
  double right = 0.0;
  double speed = 0.0;
  FrontKind kind = FrontKind::kShock;
  double t0 = 0.0;  // birth
  double x0 = 0.0;

  double position(double t) const { return x0 + speed * (t - t0); }
};

// Solution snapshot. Front positions are non-decreasing; fronts born at the
// same interaction point share x at the snapshot time.
struct FrontState {
  double time = 0.0;
  double far_left = 0.0;
  std::vector<Front> fronts;

  double far_right() const { return fronts.empty() ? far_left : fronts.back().right; }
  // Fronts advanced to time t (no interaction handling).
  FrontState advanced(double t) const;
  ScalarField to_field() const;
};

// Fronts `consumed` met at (t, x) and were replaced by `created`. At t = 0
// each data breakpoint is an interaction with nothing consumed.
struct Interaction {
  double t = 0.0;
  double x = 0.0;
  std::vector<std::int64_t> consumed;
  std::vector<Front> created;
};

// Event history of a front-tracking run. States are rebuilt on demand from
// periodic checkpoints and the interaction list.
struct FrontTrajectory {
  PiecewiseLinearFlux flux;
  double far_left = 0.0;
  std::vector<Interaction> interactions;
  std::vector<double> times;  // distinct event times, starting at 0, ending at t_max
  struct Checkpoint {
    std::size_t applied = 0;  // interactions already included in `state`
    FrontState state;
  };
  std::vector<Checkpoint> checkpoints;

  // State at an arbitrary time in [0, t_max]; interactions at exactly t are
  // included.
  FrontState at(double t) const;
  FrontState final_state() const { return at(t_max()); }
  double t_max() const { return times.back(); }
  std::size_t front_count() const;  // total fronts ever created
};

// Sequential reader of a trajectory; times must be non-decreasing.
class FrontCursor {
 public:
  explicit FrontCursor(const FrontTrajectory& traj);
  const FrontState& advance_to(double t);
  const FrontState& state() const { return state_; }

 private:
  const FrontTrajectory* traj_;
  std::size_t next_ = 0;
  FrontState state_;
};

struct FrontTrackingOptions {
  std::size_t front_budget = 1000000;
  std::size_t event_budget = 10000000;
  double simultaneity = 1e-12;
  std::size_t checkpoint_every = 128;
};

// Fronts of the exact entropy solution of the Riemann problem for g between
// two node states, emanating from x at time t. Ids are assigned from next_id.
std::vector<Front> riemann_fronts(const PiecewiseLinearFlux& g, double u_l, double u_r,
                                  double x, double t, std::int64_t& next_id);

FrontTrajectory front_tracking_evolve(const ScalarFlux& f, const ScalarField& u0,
                                      double delta, double t_max,
                                      const FrontTrackingOptions& options = {});

// Same, with an explicit flux approximation (all data values must be nodes).
FrontTrajectory front_tracking_evolve(const PiecewiseLinearFlux& g, const ScalarField& u0,
                                      double t_max, const FrontTrackingOptions& options = {});

// Trajectory of fronts that move freely without interacting, e.g. synthetic
// or non-entropy configurations. Throws InvalidArgument if two fronts would
// meet before t_max.
FrontTrajectory free_fronts_trajectory(const PiecewiseLinearFlux& g, double far_left,
                                       std::vector<Front> fronts, double t_max);

// Sorted union of the event times of several trajectories.
std::vector<double> union_event_times(const std::vector<const FrontTrajectory*>& trajs);

}  // namespace linstab

#endif  // LINSTAB_FRONT_TRACKING_HPP_
