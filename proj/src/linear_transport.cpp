#include "linstab/linear_transport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace linstab {

double average_speed(const ScalarFlux& f, double u, double v) {
  if (std::abs(u - v) > 1e-12) return (f(u) - f(v)) / (u - v);
  return f.df(0.5 * (u + v));
}

double LinearRiemannSolution::atom_growth() const {
  for (const auto& a : atoms) {
    if (a.speed == lambda && a.mass0 == 0.0) return a.growth;
  }
  return 0.0;
}

ScalarMeasure LinearRiemannSolution::at(double t) const {
  std::vector<double> b;
  std::vector<double> v{psi_l};
  for (const auto& j : jumps) {
    const double x = j.speed * t;
    if (!b.empty() && !(x > b.back())) {
      v.back() = j.value;
    } else {
      b.push_back(x);
      v.push_back(j.value);
    }
  }
  ScalarMeasure m;
  m.bv = ScalarField(std::move(b), std::move(v));
  for (const auto& a : atoms) m.atoms.push_back({a.speed * t, a.mass(t), a.speed == lambda});
  return m;
}

LinearRiemannSolution riemann_linear(double psi_l, double psi_r, double a_minus, double a_plus,
                                     double lambda, std::optional<double> phi_star) {
  LinearRiemannSolution s;
  s.psi_l = psi_l;
  s.psi_r = psi_r;
  s.a_minus = a_minus;
  s.a_plus = a_plus;
  s.lambda = lambda;
  s.cls = classify_jump(a_minus, a_plus, lambda);
  switch (s.cls.kind) {
    case JumpKind::kCompressive: {
      const double c_l = (lambda - a_minus) * psi_l, c_r = (lambda - a_plus) * psi_r;
      s.jumps.push_back({lambda, psi_r});
      const double growth = c_r - c_l;
      if (std::abs(growth) > 1e-15 * (std::abs(c_l) + std::abs(c_r))) {
        s.atoms.push_back({lambda, 0.0, growth});
      }
      break;
    }
    case JumpKind::kSlowUndercompressive: {
      const double mid = (a_minus - lambda) * psi_l / (a_plus - lambda);
      s.jumps.push_back({lambda, mid});
      s.jumps.push_back({a_plus, psi_r});
      break;
    }
    case JumpKind::kFastUndercompressive: {
      const double mid = (a_plus - lambda) * psi_r / (a_minus - lambda);
      s.jumps.push_back({a_minus, mid});
      s.jumps.push_back({lambda, psi_r});
      break;
    }
    case JumpKind::kRarefaction: {
      if (!phi_star) {
        throw NonuniquenessError(
            "riemann_linear: rarefaction-shock coefficient has a one-parameter family of "
            "solutions; pass phi_star explicitly");
      }
      s.jumps.push_back({a_minus, 0.0});
      s.jumps.push_back({a_plus, psi_r});
      if (*phi_star != 0.0) {
        s.atoms.push_back({a_minus, -*phi_star, 0.0});
        s.atoms.push_back({a_plus, *phi_star, 0.0});
      }
      break;
    }
  }
  return s;
}

double TestFunction::bump(double t) const {
  if (t <= 0.0 || t >= t_end) return 0.0;
  return std::pow(std::sin(std::numbers::pi * t / t_end), 4);
}

double TestFunction::bump_dt(double t) const {
  if (t <= 0.0 || t >= t_end) return 0.0;
  const double w = std::numbers::pi / t_end;
  const double s = std::sin(w * t);
  return 4.0 * s * s * s * std::cos(w * t) * w;
}

double TestFunction::g(double x) const {
  const double z = (x - center) / width;
  return std::exp(-0.5 * z * z);
}

double TestFunction::g_dx(double x) const { return -(x - center) / (width * width) * g(x); }

double TestFunction::g_integral(double a, double b) const {
  const double s = std::numbers::sqrt2 * width;
  auto e = [&](double x) {
    if (x == INFINITY) return 1.0;
    if (x == -INFINITY) return -1.0;
    return std::erf((x - center) / s);
  };
  return width * std::sqrt(std::numbers::pi / 2.0) * (e(b) - e(a));
}

std::vector<TestFunction> standard_test_functions(int count, double t_end) {
  std::vector<TestFunction> out;
  const int centers = std::max(1, (count + 1) / 2);
  for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
    const int c = k % centers;
    const double width = k < centers ? 0.25 : 0.5;
    const double center = centers == 1 ? 0.0 : -1.5 + 3.0 * c / (centers - 1);
    out.push_back({t_end, center, width});
  }
  return out;
}

double weak_form_residual(const LinearRiemannSolution& sol, const TestFunction& theta,
                          int time_points) {
  if (time_points < 1) throw InvalidArgument("weak_form_residual needs time points");
  std::vector<double> rays{sol.lambda};
  for (const auto& j : sol.jumps) rays.push_back(j.speed);
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  // Wedge values and coefficients, sampled on the unit-time slice.
  const auto slice = sol.at(1.0);
  std::vector<double> lo{-INFINITY}, hi, psi, coef;
  for (double r : rays) {
    hi.push_back(r);
    lo.push_back(r);
  }
  hi.push_back(INFINITY);
  for (std::size_t k = 0; k < lo.size(); ++k) {
    double probe;
    if (!std::isfinite(lo[k])) {
      probe = hi[k] - 1.0;
    } else if (!std::isfinite(hi[k])) {
      probe = lo[k] + 1.0;
    } else {
      probe = 0.5 * (lo[k] + hi[k]);
    }
    psi.push_back(slice.bv(probe));
    coef.push_back(sol.coefficient(1.0, probe));
  }
  const double dt = theta.t_end / time_points;
  double total = 0.0;
  for (int n = 0; n < time_points; ++n) {
    const double t = (n + 0.5) * dt;
    const double b = theta.bump(t), db = theta.bump_dt(t);
    double s = 0.0;
    for (std::size_t k = 0; k < lo.size(); ++k) {
      if (psi[k] == 0.0) continue;
      const double x1 = lo[k] * t, x2 = hi[k] * t;
      const double g1 = std::isfinite(x1) ? theta.g(x1) : 0.0;
      const double g2 = std::isfinite(x2) ? theta.g(x2) : 0.0;
      s += psi[k] * (db * theta.g_integral(x1, x2) + coef[k] * b * (g2 - g1));
    }
    for (const auto& a : sol.atoms) {
      const double x = a.speed * t;
      s += a.mass(t) * (db * theta.g(x) + a.speed * b * theta.g_dx(x));
    }
    total += s * dt;
  }
  return total;
}

CoefficientField CoefficientField::from_one_solution(const ScalarFlux& f,
                                                     const FrontTrajectory& u) {
  CoefficientField c;
  c.tag_ = Tag::kFromOneSolution;
  c.flux_ = f;
  c.u_ = std::make_shared<const FrontTrajectory>(u);
  return c;
}

CoefficientField CoefficientField::from_two_solutions(const ScalarFlux& f,
                                                      const FrontTrajectory& u,
                                                      const FrontTrajectory& v) {
  CoefficientField c;
  c.tag_ = Tag::kFromTwoSolutions;
  c.flux_ = f;
  c.u_ = std::make_shared<const FrontTrajectory>(u);
  c.v_ = std::make_shared<const FrontTrajectory>(v);
  return c;
}

CoefficientField CoefficientField::synthetic(const std::vector<double>& x,
                                             const std::vector<double>& lambda,
                                             const std::vector<double>& speeds, double t_max) {
  if (x.size() != lambda.size() || speeds.size() != x.size() + 1) {
    throw InvalidArgument("synthetic coefficient: size mismatch");
  }
  std::vector<Front> fronts;
  for (std::size_t k = 0; k < x.size(); ++k) {
    Front fr;
    fr.id = static_cast<std::int64_t>(k);
    fr.x = x[k];
    fr.left = static_cast<double>(k);
    fr.right = static_cast<double>(k + 1);
    fr.speed = lambda[k];
    fronts.push_back(fr);
  }
  CoefficientField c;
  c.tag_ = Tag::kSynthetic;
  c.flux_ = fluxes::linear(0.0);
  c.flux_.name = "synthetic";
  c.table_ = speeds;
  c.u_ = std::make_shared<const FrontTrajectory>(
      free_fronts_trajectory(PiecewiseLinearFlux{}, 0.0, std::move(fronts), t_max));
  return c;
}

double CoefficientField::t_max() const {
  return v_ ? std::min(u_->t_max(), v_->t_max()) : u_->t_max();
}

double CoefficientField::region_speed(double u, double v) const {
  switch (tag_) {
    case Tag::kFromOneSolution:
      return flux_.df(u);
    case Tag::kFromTwoSolutions:
      return average_speed(flux_, u, v);
    case Tag::kSynthetic:
      return table_.at(static_cast<std::size_t>(u));
  }
  return 0.0;
}

ScalarField CoefficientField::at(double t) const {
  const auto uf = u_->at(t).to_field();
  const ScalarField vf = v_ ? v_->at(t).to_field() : ScalarField(0.0);
  const auto cuts = merged_breakpoints(uf, vf);
  std::vector<double> vals;
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    double probe;
    if (cuts.empty()) {
      probe = 0.0;
    } else if (k == 0) {
      probe = cuts.front() - 1.0;
    } else if (k == cuts.size()) {
      probe = cuts.back() + 1.0;
    } else {
      probe = 0.5 * (cuts[k - 1] + cuts[k]);
    }
    vals.push_back(region_speed(uf(probe), vf(probe)));
  }
  return ScalarField(cuts, vals);
}

}  // namespace linstab
