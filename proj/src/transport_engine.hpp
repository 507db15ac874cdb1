#ifndef LINSTAB_SRC_TRANSPORT_ENGINE_HPP_
#define LINSTAB_SRC_TRANSPORT_ENGINE_HPP_

#include <vector>

#include "linstab/linear_transport.hpp"

namespace linstab::detail {

struct TransportWeightRule {
  double c = 0.0;
  double w_min = 0.0;
  double w_max = 1.0;
};

// Event-driven transport of a piecewise-constant quantity along the
// characteristics of a coefficient built from front-tracking solutions.
// Items are coefficient jumps (fronts of u or v) and markers (jumps of the
// transported quantity moving with the local speed). Outgoing sides of each
// jump emit values; in measure mode mass that cannot leave piles up in atoms
// riding on the jumps.
class TransportEngine {
 public:
  enum class Mode { kMeasure, kWeights };
  using WeightRule = TransportWeightRule;

  struct Item {
    int source = -1;  // 0: u front, 1: v front, -1: marker
    Front front;      // markers use x0, t0 and speed only
    double atom = 0.0;
    bool is_jump() const { return source >= 0; }
  };

  TransportEngine(const CoefficientField& a, Mode mode, const ScalarMeasure& initial,
                  WeightRule rule = {});

  // Processes every event up to and including time t.
  void advance_to(double t);

  double time() const { return t_; }
  std::size_t events() const { return events_; }
  std::size_t clamps() const { return clamps_; }
  std::size_t event_budget = 10000000;

  const std::vector<Item>& items() const { return items_; }
  const std::vector<double>& values() const { return psi_; }
  double region_speed(std::size_t k) const { return coef_.region_speed(ru_[k], rv_[k]); }
  double position(std::size_t i) const { return items_[i].front.position(t_); }
  double region_u(std::size_t k) const { return ru_[k]; }
  double region_v(std::size_t k) const { return rv_[k]; }
  // Time of the next event after time(); infinity when none is pending.
  double next_event_time() const;

  ScalarMeasure measure() const;
  double mass_norm() const;

 private:
  void process_interaction(int source, const Interaction& ev);
  void resolve(std::size_t i, std::size_t j, std::vector<Item> jumps, double x);
  void settle_collisions();
  void grow_atoms(double dt);
  double next_pair_time(std::vector<double>* per_pair) const;
  double emit_right(double trace, double a_l, double a_r, double lambda, bool both);
  double emit_left(double trace, double a_l, double a_r, double lambda, bool both);
  double clamp(double w);

  CoefficientField coef_;
  Mode mode_;
  WeightRule rule_;
  double t_ = 0.0;
  std::vector<Item> items_;
  std::vector<double> psi_, ru_, rv_;
  std::size_t next_u_ = 0, next_v_ = 0;
  std::size_t events_ = 0, clamps_ = 0;
  double r_prior_ = 0.0;  // min of the outer values of the cluster being resolved
};

}  // namespace linstab::detail

#endif  // LINSTAB_SRC_TRANSPORT_ENGINE_HPP_
