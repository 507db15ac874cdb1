#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "linstab/linear_transport.hpp"
#include "linstab/quadrature.hpp"

using namespace linstab;

namespace {

ScalarField sum_fields(const ScalarField& p, double alpha, const ScalarField& q, double beta) {
  const auto cuts = merged_breakpoints(p, q);
  std::vector<double> vals{alpha * p.far_left() + beta * q.far_left()};
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const double probe = k + 1 < cuts.size() ? 0.5 * (cuts[k] + cuts[k + 1]) : cuts[k] + 1.0;
    vals.push_back(alpha * p(probe) + beta * q(probe));
  }
  return ScalarField(cuts, vals);
}

std::map<long long, double> atom_map(const ScalarMeasure& m, double scale = 1.0) {
  std::map<long long, double> out;
  for (const auto& a : m.atoms) out[std::llround(a.x * 1e8)] += scale * a.mass;
  return out;
}

ScalarField random_psi(std::mt19937_64& rng, int jumps) {
  std::uniform_real_distribution<double> pos(-2.0, 2.0), val(-1.0, 1.0);
  std::vector<double> b(jumps);
  for (auto& x : b) x = pos(rng);
  std::sort(b.begin(), b.end());
  std::vector<double> v{0.0};
  for (int i = 1; i < jumps; ++i) v.push_back(val(rng));
  v.push_back(0.0);
  return ScalarField(b, v);
}

ScalarField random_u(std::mt19937_64& rng, int jumps, double delta) {
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  std::uniform_int_distribution<int> level(-20, 20);
  std::vector<double> b(jumps);
  for (auto& x : b) x = pos(rng);
  std::sort(b.begin(), b.end());
  std::vector<double> v{0.0};
  for (int i = 1; i < jumps; ++i) v.push_back(level(rng) * delta);
  v.push_back(0.0);
  return ScalarField(b, v);
}

}  // namespace

TEST_CASE("average_speed examples") {
  const auto burgers = fluxes::burgers();
  const auto cubic = fluxes::cubic();
  const auto& q = gauss_legendre(64);
  auto oracle = [&](const ScalarFlux& f, double u, double v) {
    return q.integrate([&](double s) { return f.df(s * u + (1 - s) * v); });
  };
  CHECK(average_speed(burgers, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(average_speed(burgers, 1.0, 0.0) == doctest::Approx(oracle(burgers, 1.0, 0.0)));
  CHECK(average_speed(burgers, 0.3, 0.3) == 0.3);
  CHECK(average_speed(cubic, 1.0, -1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(average_speed(cubic, 1.0, -1.0) == doctest::Approx(oracle(cubic, 1.0, -1.0)));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const double u = d(rng), v = d(rng);
    CHECK(average_speed(cubic, u, v) == average_speed(cubic, v, u));
    CHECK(average_speed(cubic, u, v) == doctest::Approx(oracle(cubic, u, v)).epsilon(1e-12));
  }
}

TEST_CASE("riemann_linear: delta shock on a compressive jump") {
  const auto s = riemann_linear(1.0, 1.0, 1.0, -1.0, 0.0);
  CHECK(s.cls.kind == JumpKind::kCompressive);
  CHECK(s.atom_growth() == 2.0);
  CHECK(s.atom_speed() == 0.0);
  for (double t : {0.0, 0.5, 3.0}) {
    const auto m = s.at(t);
    REQUIRE(m.atoms.size() == 1);
    CHECK(m.atoms[0].mass == 2.0 * t);
    CHECK(m.atoms[0].on_jump);
  }
  const auto bv = riemann_linear(1.0, -2.0, 2.0, -1.0, 0.0);
  CHECK(bv.atoms.empty());
  CHECK(bv.atom_growth() == 0.0);
  CHECK(bv.at(1.0).bv(-0.1) == 1.0);
  CHECK(bv.at(1.0).bv(0.1) == -2.0);
}

TEST_CASE("riemann_linear: rarefaction needs an explicit parameter") {
  CHECK_THROWS_AS(riemann_linear(1.0, 1.0, -1.0, 1.0, 0.0), NonuniquenessError);
  const auto s0 = riemann_linear(1.0, 1.0, -1.0, 1.0, 0.0, 0.0);
  CHECK(s0.atoms.empty());
  CHECK(s0.at(1.0).bv(0.0) == 0.0);
  CHECK(s0.at(1.0).bv(-1.5) == 1.0);
  const auto s1 = riemann_linear(1.0, 1.0, -1.0, 1.0, 0.0, 1.0);
  REQUIRE(s1.atoms.size() == 2);
  CHECK(s1.at(2.0).atoms[0].x == -2.0);
  CHECK(s1.at(2.0).atoms[0].mass == -1.0);
  CHECK(s1.at(2.0).atoms[1].x == 2.0);
  CHECK(s1.at(2.0).atoms[1].mass == 1.0);
}

TEST_CASE("weak form residuals vanish for every case and detect wrong solutions") {
  const auto tests = standard_test_functions(20, 1.0);
  REQUIRE(tests.size() == 20);
  std::vector<LinearRiemannSolution> sols = {
      riemann_linear(1.0, 1.0, 1.0, -1.0, 0.0),           // L with atom
      riemann_linear(0.7, -0.4, 1.5, 0.5, 0.2),           // L
      riemann_linear(1.0, 0.5, 1.0, 2.0, 0.5),            // S
      riemann_linear(0.3, 1.0, -1.0, -2.0, 0.5),          // F
      riemann_linear(1.0, 1.0, -1.0, 1.0, 0.0, 0.0),      // R, BV branch
      riemann_linear(1.0, 1.0, -1.0, 1.0, 0.0, 1.0),      // R with atoms
      riemann_linear(-0.5, 2.0, -1.0, 1.5, 0.25, -0.75),  // R, skewed
  };
  CHECK(sols[2].cls.kind == JumpKind::kSlowUndercompressive);
  CHECK(sols[3].cls.kind == JumpKind::kFastUndercompressive);
  for (const auto& s : sols) {
    for (const auto& th : tests) CHECK(std::abs(weak_form_residual(s, th)) < 1e-6);
  }
  // Dropping the atom of the delta shock breaks the weak form.
  auto wrong = sols[0];
  wrong.atoms.clear();
  double worst = 0.0;
  for (const auto& th : tests) worst = std::max(worst, std::abs(weak_form_residual(wrong, th)));
  CHECK(worst > 1e-3);
}

TEST_CASE("nonuniqueness witness gives distinct weak solutions") {
  const auto a = riemann_linear(1.0, 1.0, -1.0, 1.0, 0.0, 0.0);
  const auto b = riemann_linear(1.0, 1.0, -1.0, 1.0, 0.0, 1.0);
  CHECK(a.at(0.5).atoms.size() != b.at(0.5).atoms.size());
  for (const auto& th : standard_test_functions(20, 1.0)) {
    CHECK(std::abs(weak_form_residual(a, th)) < 1e-6);
    CHECK(std::abs(weak_form_residual(b, th)) < 1e-6);
  }
}

TEST_CASE("linear cauchy: burgers shock absorbs an indicator") {
  const auto f = fluxes::burgers();
  const auto u = front_tracking_evolve(f, ScalarField({0.0}, {1.0, 0.0}), 0.5, 3.0);
  const auto coef = CoefficientField::from_one_solution(f, u);
  ScalarMeasure psi0;
  psi0.bv = ScalarField({-1.0, 0.0}, {0.0, 1.0, 0.0});
  LinearCauchyOptions opt;
  opt.sample_times = {0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
  const auto sol = solve_linear_cauchy(coef, psi0, 3.0, opt);
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    const double t = sol.times[k];
    const auto& m = sol.states[k];
    double atom = 0.0;
    for (const auto& at : m.atoms) {
      CHECK(at.x == doctest::Approx(t / 2));
      atom += at.mass;
    }
    // Characteristics from x0 in (-1, 0) reach the shock at t = -2 x0.
    CHECK(std::abs(atom - std::min(t / 2, 1.0)) < 1e-12);
    CHECK(std::abs(m.total_mass() - 1.0) < 1e-12);
  }
  const auto& end = sol.states[4];
  CHECK(end.bv(0.9) == 0.0);
  CHECK(end.bv(1.1) == 0.0);
  CHECK(sol.mass_bound <= 1.0 + 1e-12);

  // Upwind finite-volume oracle on 1e4 cells at CFL 0.9.
  const int cells = 10000;
  const double x0 = -2.0, x1 = 3.0, h = (x1 - x0) / cells, dt = 0.9 * h;
  std::vector<double> psi(cells);
  for (int j = 0; j < cells; ++j) {
    const double x = x0 + (j + 0.5) * h;
    psi[j] = (x > -1.0 && x < 0.0) ? 1.0 : 0.0;
  }
  double t = 0.0;
  while (t < 2.0 - 1e-12) {
    const double step = std::min(dt, 2.0 - t);
    std::vector<double> flux(cells + 1, 0.0);
    for (int j = 1; j < cells; ++j) {
      // Upwind: speed 1 left of the shock, 0 right of it.
      const double xf = x0 + j * h;
      const double a = xf < (t + 0.5 * step) / 2 ? 1.0 : 0.0;
      flux[j] = a * psi[j - 1];
    }
    for (int j = 0; j < cells; ++j) psi[j] -= step / h * (flux[j + 1] - flux[j]);
    t += step;
  }
  double near = 0.0;
  for (int j = 0; j < cells; ++j) {
    const double x = x0 + (j + 0.5) * h;
    if (std::abs(x - 1.0) < 0.05) near += psi[j] * h;
  }
  CHECK(std::abs(near - 1.0) < 0.02);
}

TEST_CASE("linear cauchy: trivial cases and errors") {
  const auto f = fluxes::burgers();
  const auto u = front_tracking_evolve(f, ScalarField(0.5), 0.1, 2.0);
  const auto coef = CoefficientField::from_one_solution(f, u);
  ScalarMeasure psi0;
  psi0.bv = ScalarField({0.0, 1.0}, {0.0, 2.0, 0.0});
  LinearCauchyOptions opt;
  opt.sample_times = {2.0};
  const auto sol = solve_linear_cauchy(coef, psi0, 2.0, opt);
  CHECK(sol.states[0].bv(1.2) == 2.0);
  CHECK(sol.states[0].bv(0.9) == 0.0);
  CHECK(sol.states[0].bv(2.1) == 0.0);

  const auto zero = solve_linear_cauchy(coef, ScalarMeasure{}, 2.0);
  for (const auto& m : zero.states) {
    CHECK(m.bv.jumps() == 0);
    CHECK(m.atoms.empty());
  }
  const auto two = CoefficientField::from_two_solutions(f, u, u);
  CHECK_THROWS_AS(solve_linear_cauchy(two, psi0, 1.0), UnsupportedCoefficient);
  CHECK_THROWS_AS(solve_linear_cauchy(coef, psi0, 3.0), InvalidArgument);
}

TEST_CASE("linear cauchy: conservation, linearity and bounded mass") {
  const auto f = fluxes::burgers();
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coef_d(-2.0, 2.0);
  for (int trial = 0; trial < 12; ++trial) {
    const double delta = 0.05;
    const auto u0 = random_u(rng, 6, delta);
    const auto u = front_tracking_evolve(f, u0, delta, 2.0);
    const auto coef = CoefficientField::from_one_solution(f, u);
    ScalarMeasure p, q;
    p.bv = random_psi(rng, 7);
    q.bv = random_psi(rng, 5);
    q.atoms.push_back({0.123, 0.4, false});
    const double alpha = coef_d(rng), beta = coef_d(rng);
    ScalarMeasure r;
    r.bv = sum_fields(p.bv, alpha, q.bv, beta);
    r.atoms.push_back({0.123, beta * 0.4, false});
    const auto sp = solve_linear_cauchy(coef, p, 2.0);
    const auto sq = solve_linear_cauchy(coef, q, 2.0);
    const auto sr = solve_linear_cauchy(coef, r, 2.0);
    CHECK(sp.mass_bound <= 10.0);
    REQUIRE(sp.times == sr.times);
    for (std::size_t k = 0; k < sp.times.size(); ++k) {
      CHECK(std::abs(sp.states[k].total_mass() - p.total_mass()) < 1e-10);
      const auto combo = sum_fields(sp.states[k].bv, alpha, sq.states[k].bv, beta);
      CHECK(l1_distance(combo, sr.states[k].bv) < 1e-10);
      auto expect = atom_map(sp.states[k], alpha);
      for (const auto& [x, m] : atom_map(sq.states[k], beta)) expect[x] += m;
      auto got = atom_map(sr.states[k]);
      for (const auto& [x, m] : expect) CHECK(std::abs(got[x] - m) < 1e-10);
      for (const auto& [x, m] : got) CHECK(std::abs(expect[x] - m) < 1e-10);
    }
  }
}

TEST_CASE("linear cauchy: atom mass is linear in time between interactions") {
  const auto f = fluxes::burgers();
  const auto u = front_tracking_evolve(f, ScalarField({0.0}, {1.0, -1.0}), 0.5, 2.0);
  const auto coef = CoefficientField::from_one_solution(f, u);
  ScalarMeasure psi0;
  psi0.bv = ScalarField({-3.0, 3.0}, {0.0, 1.0, 0.0});
  LinearCauchyOptions opt;
  opt.sample_times = {0.25, 0.5, 1.0};
  const auto sol = solve_linear_cauchy(coef, psi0, 1.0, opt);
  // C_r - C_l = (0 - (-1)) * 1 - (0 - 1) * 1 = 2.
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    REQUIRE(sol.states[k].atoms.size() == 1);
    CHECK(sol.states[k].atoms[0].mass == doctest::Approx(2.0 * sol.times[k]).epsilon(1e-14));
  }
}

TEST_CASE("volpert products") {
  const auto df = [](double u) { return u; };
  ScalarField u({0.0}, {0.0, 2.0});
  ScalarMeasure psi;
  psi.atoms.push_back({0.0, 1.0, true});
  auto p = volpert_product(df, u, psi);
  REQUIRE(p.atoms.size() == 1);
  CHECK(p.atoms[0].mass == doctest::Approx(1.0).epsilon(1e-14));

  // psi = d_x u, whose atom is u_+ - u_-: the product atom is h(u_+) - h(u_-).
  ScalarMeasure dx;
  dx.atoms.push_back({0.0, 2.0, true});
  CHECK(volpert_product(df, u, dx).atoms[0].mass == doctest::Approx(2.0).epsilon(1e-14));

  ScalarMeasure dens;
  dens.bv = ScalarField({-1.0, 1.0}, {0.0, 3.0, 0.0});
  const auto smooth = volpert_product([](double w) { return w * w + 1.0; }, ScalarField(0.5), dens);
  CHECK(smooth.bv(0.0) == doctest::Approx(3.75));

  ScalarMeasure bad;
  bad.atoms.push_back({1e-13, 1.0, false});
  CHECK_THROWS_AS(volpert_product(df, u, bad), AmbiguousPlacement);
  ScalarMeasure off;
  off.atoms.push_back({0.5, 1.0, true});
  CHECK_THROWS_AS(volpert_product(df, u, off), AmbiguousPlacement);
}
