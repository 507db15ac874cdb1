#include <algorithm>
#include <cmath>
#include <sstream>

#include "linstab/linear_transport.hpp"
#include "transport_engine.hpp"

namespace linstab {

MeasureTrajectory solve_linear_cauchy(const CoefficientField& a, const ScalarMeasure& psi0,
                                      double t_max, const LinearCauchyOptions& options) {
  if (a.tag() == CoefficientField::Tag::kFromTwoSolutions) {
    throw UnsupportedCoefficient(
        "solve_linear_cauchy handles coefficients from one solution; two-solution "
        "coefficients are evolved by the stability module");
  }
  if (!(t_max >= 0.0) || t_max > a.t_max()) {
    throw InvalidArgument("solve_linear_cauchy: t_max outside the coefficient's time range");
  }
  const double m0 = psi0.mass_norm();

  std::vector<double> samples = options.sample_times;
  if (samples.empty()) {
    for (double t : a.u().times) {
      if (t <= t_max) samples.push_back(t);
    }
    samples.push_back(t_max);
  }
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  detail::TransportEngine engine(a, detail::TransportEngine::Mode::kMeasure, psi0);
  engine.event_budget = options.event_budget;
  MeasureTrajectory out;
  out.mass_bound = m0 > 0.0 ? 1.0 : 0.0;
  for (double t : samples) {
    if (t < 0.0 || t > t_max) throw InvalidArgument("sample time outside [0, t_max]");
    engine.advance_to(t);
    auto state = engine.measure();
    const double norm = engine.mass_norm();
    if (m0 > 0.0) out.mass_bound = std::max(out.mass_bound, norm / m0);
    if (out.mass_bound > options.mass_bound_limit) {
      std::ostringstream msg;
      msg << "mass bound K = " << out.mass_bound << " exceeds " << options.mass_bound_limit
          << " at t = " << t;
      throw MassBoundExceeded(msg.str());
    }
    for (const auto& at : state.atoms) out.atom_ledger.push_back({t, at.x, at.mass});
    out.times.push_back(t);
    out.states.push_back(std::move(state));
  }
  out.events = engine.events();
  return out;
}

}  // namespace linstab
