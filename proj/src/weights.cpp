#include <algorithm>
#include <cmath>

#include "linstab/stability.hpp"
#include "transport_engine.hpp"

namespace linstab {
namespace {

using detail::TransportEngine;

double weighted_l1(const TransportEngine& e, bool with_weights) {
  const auto& w = e.values();
  double sum = 0.0;
  for (std::size_t k = 1; k < e.items().size(); ++k) {
    const double len = std::max(0.0, e.position(k) - e.position(k - 1));
    const double psi = std::abs(e.region_v(k) - e.region_u(k));
    sum += psi * (with_weights ? w[k] : 1.0) * len;
  }
  return sum;
}

// Exact time derivative of the weighted norm while no event occurs.
double weighted_rate(const TransportEngine& e) {
  const auto& w = e.values();
  const auto& items = e.items();
  double rate = 0.0;
  for (std::size_t k = 1; k < items.size(); ++k) {
    const double psi = std::abs(e.region_v(k) - e.region_u(k));
    rate += psi * w[k] * (items[k].front.speed - items[k - 1].front.speed);
  }
  return rate;
}

}  // namespace

WeightTrajectory evolve_weights(const CoefficientField& a, const WeightParams& params) {
  if (a.tag() != CoefficientField::Tag::kFromTwoSolutions) {
    throw UnsupportedCoefficient("evolve_weights needs a coefficient built from two solutions");
  }
  if (!(params.w_min > 0.0) || params.w_min > 1.0 || params.w_max < 1.0 || !(params.c > 0.0)) {
    throw InvalidArgument("evolve_weights: need 0 < w_min <= 1 <= w_max and c > 0");
  }
  const double tv = total_variation(a.at(0.0));
  const double budget = (params.w_max - params.w_min) / params.w_max;
  if (params.c * tv >= budget) {
    throw WeightBudgetExhausted("evolve_weights: c * TV = " + std::to_string(params.c * tv) +
                                " leaves no room in the weight range (" +
                                std::to_string(budget) + ")");
  }

  ScalarMeasure w0;
  w0.bv = ScalarField(1.0);
  TransportEngine engine(a, TransportEngine::Mode::kWeights, w0,
                         {params.c, params.w_min, params.w_max});

  std::vector<double> samples;
  for (double t : union_event_times({&a.u(), a.v()})) {
    if (t < a.t_max()) samples.push_back(t);
  }
  samples.push_back(a.t_max());

  WeightTrajectory out;
  const auto record = [&] {
    out.times.push_back(engine.time());
    out.weights.push_back(engine.measure().bv);
    out.weighted.push_back(weighted_l1(engine, true));
    out.plain.push_back(weighted_l1(engine, false));
  };
  record();
  std::size_t next = 1;
  while (next < samples.size()) {
    const double te = std::min(engine.next_event_time(), samples[next]);
    const double rate = weighted_rate(engine);
    if (te > engine.time()) out.max_rate = std::max(out.max_rate, rate);
    const double predicted = weighted_l1(engine, true) + rate * (te - engine.time());
    engine.advance_to(te);
    out.overshoot += std::max(0.0, weighted_l1(engine, true) - predicted);
    if (te >= samples[next]) {
      record();
      ++next;
    }
  }
  out.clamps = engine.clamps();
  out.events = engine.events();
  return out;
}

}  // namespace linstab
