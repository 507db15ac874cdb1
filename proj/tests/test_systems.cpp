#include <cmath>
#include <random>

#include "doctest.h"
#include "linstab/stability.hpp"
#include "linstab/systems.hpp"

using namespace linstab;

namespace {

double p_gamma2(double w) { return 1.0 / (w * w); }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(a + (b - a) * k / (n - 1));
  return out;
}

}  // namespace

TEST_CASE("analytic eigen-decomposition") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  int done = 0;
  while (done < 2000) {
    Mat2 a;
    a << d(rng), d(rng), d(rng), d(rng);
    if (hyperbolicity_discriminant(a) < 1e-3) continue;
    const auto e = eigen_decompose(a);
    CHECK(e.lambda(0) < e.lambda(1));
    for (int j = 0; j < 2; ++j) {
      CHECK((a * e.r.col(j) - e.lambda(j) * e.r.col(j)).norm() < 1e-10);
      CHECK(std::abs(e.r.col(j).norm() - 1.0) < 1e-14);
    }
    CHECK((e.l * e.r - Mat2::Identity()).norm() < 1e-12);
    ++done;
  }
  Mat2 rot;
  rot << 0.0, -1.0, 1.0, 0.0;
  CHECK_THROWS_AS(eigen_decompose(rot), HyperbolicityError);
  CHECK_THROWS_AS(eigen_decompose(Mat2::Identity()), HyperbolicityError);
}

TEST_CASE("averaged matrix") {
  const auto f = fluxes::p_system(2.0);
  SUBCASE("coincident states give the Jacobian") {
    const Vec2 u(1.3, 0.2);
    CHECK(averaged_matrix(f, u, u).a == f.jacobian(u));
  }
  SUBCASE("p-system example") {
    const auto m = averaged_matrix(f, Vec2(1.0, 0.4), Vec2(2.0, -0.3));
    CHECK(m.a(0, 0) == 0.0);
    CHECK(m.a(0, 1) == -1.0);
    CHECK(m.a(1, 0) == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK(m.lambda(1) == doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-12));
    CHECK(m.lambda(2) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  }
  SUBCASE("quadrature convergence, chord and symmetry on the test box") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> w(0.7, 1.4), vel(-0.5, 0.5);
    for (int k = 0; k < 500; ++k) {
      const Vec2 u(w(rng), vel(rng)), v(w(rng), vel(rng));
      const auto a16 = averaged_matrix(f, u, v, 16);
      const auto a64 = averaged_matrix(f, u, v, 64);
      CHECK((a16.a - a64.a).cwiseAbs().maxCoeff() < 1e-12);
      const double chord = (p_gamma2(u(0)) - p_gamma2(v(0))) / (u(0) - v(0));
      CHECK(std::abs(a16.a(1, 0) - chord) < 1e-12);
      CHECK(averaged_matrix(f, v, u).a == a16.a);
      for (int j = 1; j <= 2; ++j) {
        CHECK((a16.a * a16.r(j) - a16.lambda(j) * a16.r(j)).norm() < 1e-10);
      }
      CHECK((a16.eig.l * a16.eig.r - Mat2::Identity()).norm() < 1e-12);
    }
  }
  SUBCASE("linear pressure") {
    const auto lin = fluxes::p_system_linear();
    const auto m = averaged_matrix(lin, Vec2(-3.0, 1.0), Vec2(5.0, 2.0));
    Mat2 expect;
    expect << 0.0, -1.0, -1.0, 0.0;
    CHECK(m.a == expect);
    CHECK(m.lambda(1) == -1.0);
    CHECK(m.lambda(2) == 1.0);
  }
}

TEST_CASE("hugoniot curves") {
  const auto f = fluxes::p_system(2.0);
  const auto model = HyperbolicModel::conservative(f);
  const Vec2 um(1.0, 0.0);
  const auto z = hugoniot_point(model, um, 1, 0.0);
  CHECK(z.u_plus == um);
  CHECK(z.speed == doctest::Approx(eigenvalue(model, um, 1)));

  const auto p = hugoniot_point(model, um, 1, -0.1);
  CHECK(p.residual <= 1e-10);
  CHECK(p.lax_admissible);
  CHECK(eigenvalue(model, um, 1) > p.speed);
  CHECK(p.speed > eigenvalue(model, p.u_plus, 1));
  // Closed form: lambda^2 = -(p(w+) - p(w-)) / (w+ - w-), dv = -lambda dw.
  const double dw = p.u_plus(0) - um(0);
  const double lam = -std::sqrt(-(p_gamma2(p.u_plus(0)) - p_gamma2(um(0))) / dw);
  CHECK(p.speed == doctest::Approx(lam).epsilon(1e-12));
  CHECK(p.u_plus(1) == doctest::Approx(um(1) - lam * dw).epsilon(1e-12));
  CHECK((p.u_plus - um).dot(eigenvector(model, um, 1)) == doctest::Approx(-0.1).epsilon(1e-12));

  // Tangency of the speed: d lambda_bar / d eps at 0 = 1/2 grad lambda . r.
  for (int fam = 1; fam <= 2; ++fam) {
    const double h = 1e-4;
    const double slope =
        (hugoniot_point(model, um, fam, h).speed - hugoniot_point(model, um, fam, -h).speed) /
        (2.0 * h);
    CHECK(slope == doctest::Approx(0.5 * gnl_coefficient(model, um, fam)).epsilon(1e-4));
  }

  const auto curve = hugoniot_curve(f, um, 2, linspace(-0.2, 0.2, 21));
  for (const auto& q : curve) {
    CHECK(q.residual <= 1e-10);
    const bool lax = eigenvalue(model, um, 2) > q.speed && q.speed > eigenvalue(model, q.u_plus, 2);
    CHECK(q.lax_admissible == lax);
  }
}

TEST_CASE("averaged eigenvalue monotonicity") {
  const auto f = fluxes::p_system(2.0);
  const auto model = HyperbolicModel::conservative(f);
  const auto grid = linspace(-0.15, 0.15, 41);
  SUBCASE("v = u-") {
    const Vec2 um(1.1, 0.05);
    for (int fam = 1; fam <= 2; ++fam) {
      const auto rep = averaged_eigen_monotonicity(f, um, fam, um, grid);
      const double g = gnl_coefficient(model, um, fam);
      CHECK(rep.sign == (g > 0 ? 1 : -1));
      // 2 d/deps lambda_bar(u+(eps), u-) = grad lambda . r at eps = 0.
      const double mid = rep.derivative[19] + rep.derivative[20];
      CHECK(0.5 * mid == doctest::Approx(0.5 * g).epsilon(1e-3));
    }
  }
  SUBCASE("empty grid") {
    const auto rep = averaged_eigen_monotonicity(f, Vec2(1.0, 0.0), 1, Vec2(1.0, 0.1), {0.0});
    CHECK(rep.derivative.empty());
    CHECK(rep.sign == 0);
  }
  SUBCASE("radius") {
    CHECK_THROWS_AS(averaged_eigen_monotonicity(f, Vec2(1.0, 0.0), 1, Vec2(1.3, 0.0), grid),
                    OutOfRadius);
  }
  SUBCASE("random ensemble") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> w(0.8, 1.2), vel(-0.2, 0.2), ang(0.0, 2 * M_PI),
        rad(0.0, 0.15);
    for (int k = 0; k < 40; ++k) {
      const Vec2 um(w(rng), vel(rng));
      const double th = ang(rng), r = rad(rng);
      const Vec2 v = um + r * Vec2(std::cos(th), std::sin(th));
      for (int fam = 1; fam <= 2; ++fam) {
        const auto rep = averaged_eigen_monotonicity(f, um, fam, v, grid);
        CHECK(rep.sign_violations == 0);
        CHECK(rep.sign != 0);
        CHECK(rep.lax_checks > 0);
        CHECK(rep.lax_violations == 0);
      }
    }
  }
}

TEST_CASE("2x2 riemann solver") {
  SUBCASE("linear p-system, closed form") {
    const auto m = HyperbolicModel::conservative(fluxes::p_system_linear());
    const Vec2 ul(0.3, -0.2), ur(-0.4, 0.1);
    const auto sol = solve_riemann_system(m, ul, ur);
    // r1 ~ (1, 1) at speed -1, r2 ~ (1, -1) at speed +1.
    const Vec2 d = ur - ul;
    const double a = 0.5 * (d(0) + d(1)), b = 0.5 * (d(0) - d(1));
    const Vec2 um = ul + a * Vec2(1.0, 1.0);
    CHECK((sol.u_m - um).norm() < 1e-10);
    REQUIRE(sol.waves.size() == 2);
    CHECK(sol.waves[0].speed == doctest::Approx(-1.0));
    CHECK(sol.waves[1].speed == doctest::Approx(1.0));
    CHECK((um + b * Vec2(1.0, -1.0) - ur).norm() < 1e-10);
  }
  SUBCASE("gamma-law p-system, small data") {
    const auto m = HyperbolicModel::conservative(fluxes::p_system(2.0));
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> w(0.8, 1.2), vel(-0.15, 0.15);
    for (int k = 0; k < 50; ++k) {
      const Vec2 ul(w(rng), vel(rng)), ur(w(rng), vel(rng));
      const auto sol = solve_riemann_system(m, ul, ur);
      Vec2 state = ul;
      double last_speed = -INFINITY;
      for (const auto& wv : sol.waves) {
        CHECK(wv.left == state);
        state = wv.right;
        CHECK(wv.speed >= last_speed);
        last_speed = wv.speed_hi;
        if (wv.shock) {
          CHECK(m.residual(wv.left, wv.right, wv.speed).norm() <= 1e-10);
          CHECK(wv.lax);
        } else {
          CHECK(wv.speed < wv.speed_hi);
        }
      }
      CHECK(state == ur);
    }
    const auto same = solve_riemann_system(m, Vec2(1.0, 0.0), Vec2(1.0, 0.0));
    CHECK(same.waves.empty());
  }
}

TEST_CASE("2x2 front tracking and scan") {
  const auto f = fluxes::p_system(2.0);
  const auto m = HyperbolicModel::conservative(f);
  SystemTrackingOptions opt;
  opt.delta = 0.02;
  SUBCASE("single lax 1-shock against constant v") {
    const Vec2 ul(1.0, 0.0);
    const auto p = hugoniot_point(m, ul, 1, -0.1);
    REQUIRE(p.lax_admissible);
    const SystemField u0({0.0}, {ul, p.u_plus});
    const auto u = system_front_tracking(m, u0, 1.0, opt);
    REQUIRE(u.states.front().fronts.size() == 1);
    CHECK(u.states.front().fronts[0].speed == doctest::Approx(p.speed));
    for (const Vec2 c : {Vec2(1.05, 0.05), Vec2(0.9, -0.1)}) {
      const auto v = system_front_tracking(m, SystemField(c), 1.0, opt);
      const auto rep = scan_rarefaction_free_systems(u, v, f);
      CHECK(rep[0].count(JumpKind::kRarefaction) == 0);
      CHECK(rep[0].count(JumpKind::kCompressive) + rep[0].count(JumpKind::kSlowUndercompressive) +
                rep[0].count(JumpKind::kFastUndercompressive) >
            0);
    }
    const auto self = scan_rarefaction_free_systems(u, u, f);
    CHECK(self[0].count(JumpKind::kCompressive) == self[0].sampled_times);
    CHECK(self[1].count(JumpKind::kCompressive) == 0);
    CHECK(self[1].count(JumpKind::kRarefaction) == 0);
  }
  SUBCASE("synthetic non-lax jump is flagged") {
    const Vec2 ul(1.0, 0.0);
    const auto ur = integral_curve(m, ul, 1, 0.1, 20).back();
    SystemFrontTrajectory u;
    u.t_max = 1.0;
    SystemFrontState s;
    s.far_left = ul;
    s.fronts.push_back({0, 0.0, ul, ur, 0.5 * (eigenvalue(m, ul, 1) + eigenvalue(m, ur, 1)), 1, true});
    u.states.push_back(s);
    const auto v = system_front_tracking(m, SystemField(Vec2(1.0, 0.02)), 1.0, opt);
    const auto rep = scan_rarefaction_free_systems(u, v, f);
    CHECK(rep[0].rarefaction_violations >= 1);
  }
  SUBCASE("random small-data pairs") {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> w(0.9, 1.1), vel(-0.1, 0.1), pos(-1.0, 1.0);
    for (int k = 0; k < 6; ++k) {
      const auto make = [&] {
        std::vector<double> b{pos(rng), pos(rng), pos(rng)};
        std::sort(b.begin(), b.end());
        std::vector<Vec2> vals{Vec2(1.0, 0.0)};
        for (int i = 0; i < 2; ++i) vals.push_back(Vec2(w(rng), vel(rng)));
        vals.push_back(Vec2(1.0, 0.0));
        return SystemField(b, vals);
      };
      const auto u0 = make(), v0 = make();
      const auto u = system_front_tracking(m, u0, 1.0, opt);
      const auto v = system_front_tracking(m, v0, 1.0, opt);
      for (const auto& st : u.states) {
        for (std::size_t i = 0; i + 1 < st.fronts.size(); ++i) {
          CHECK(st.fronts[i].right == st.fronts[i + 1].left);
        }
      }
      const auto rep = scan_rarefaction_free_systems(u, v, f);
      CHECK(rep[0].rarefaction_violations == 0);
      CHECK(rep[1].rarefaction_violations == 0);
    }
  }
}

TEST_CASE("sign lemma and dominance on lax shocks") {
  const auto f = fluxes::p_system(2.0);
  const auto m = HyperbolicModel::conservative(f);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> w(0.8, 1.2), vel(-0.2, 0.2), ang(0.0, 2 * M_PI),
      rad(0.0, 0.1), strength(0.001, 0.1);
  std::size_t fail = 0, checked = 0, violations = 0;
  for (int k = 0; k < 100; ++k) {
    const int fam = 1 + k % 2;
    const Vec2 um(w(rng), vel(rng));
    const double g = gnl_coefficient(m, um, fam);
    const auto p = hugoniot_point(m, um, fam, g > 0 ? -strength(rng) : strength(rng));
    REQUIRE(p.lax_admissible);
    const double th = ang(rng);
    const Vec2 v = um + rad(rng) * Vec2(std::cos(th), std::sin(th));
    const auto am = averaged_matrix(f, um, v), ap = averaged_matrix(f, p.u_plus, v);
    JumpCharacteristics jc;
    jc.family = fam;
    jc.lambda_minus = am.eig.lambda;
    jc.lambda_plus = ap.eig.lambda;
    jc.lambda_bar = p.speed;
    jc.alpha_minus = characteristic_components(v - um, am.eig.r);
    jc.alpha_plus = characteristic_components(v - p.u_plus, ap.eig.r);
    jc.kind = classify_jump(am.lambda(fam), ap.lambda(fam), p.speed).kind;
    CHECK(*jc.kind != JumpKind::kRarefaction);
    const auto cd = characteristic_flux(jc);
    if (!cd.sign_pass) ++fail;
    const auto dom = dominance_test(cd, (ap.a - am.a).norm(), (ap.r(fam) - am.r(fam)).norm(), 0.1);
    checked += dom.checked;
    violations += dom.violations;
  }
  CHECK(fail == 0);
  CHECK(checked > 0);
  CHECK(violations == 0);
}
