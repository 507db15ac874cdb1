#include <cmath>
#include <random>

#include "doctest.h"
#include "linstab/dlm.hpp"

using namespace linstab;

namespace {

// H(u) = (sin(u1) u2, exp(u1 u2 / 2)) and its Jacobian.
Vec2 h_fn(const Vec2& u) { return Vec2(std::sin(u(0)) * u(1), std::exp(0.5 * u(0) * u(1))); }
Mat2 dh_fn(const Vec2& u) {
  const double e = std::exp(0.5 * u(0) * u(1));
  Mat2 a;
  a << std::cos(u(0)) * u(1), std::sin(u(0)), 0.5 * u(1) * e, 0.5 * u(0) * e;
  return a;
}

Mat2 non_gradient(const Vec2& u) {
  Mat2 a;
  a << u(1), 0.0, 0.0, 0.0;
  return a;
}

}  // namespace

TEST_CASE("path families") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<PathFamily> paths{PathFamily::straightline()};
  for (auto& p : curved_test_paths()) paths.push_back(p);
  for (int k = 0; k < 50; ++k) {
    const Vec2 a(d(rng), d(rng)), b(d(rng), d(rng));
    const Vec2 da(d(rng), d(rng)), db(d(rng), d(rng));
    for (const auto& p : paths) {
      const auto diag = path_diagnostics(p, a, b);
      CHECK(diag.endpoint_error <= 1e-12);
      CHECK(diag.tv_constant <= 3.0);
      CHECK(diag.tv_constant >= 1.0 - 1e-12);
      const double pert = 1e-3;
      const double dist = path_graph_distance(p, a, b, a + pert * da, b + pert * db);
      CHECK(dist <= 3.0 * pert * (da.norm() + db.norm()));
      // Analytic tangent against the difference stencil.
      auto numeric = p;
      numeric.tangent = nullptr;
      for (double s : {0.0, 0.3, 1.0}) {
        CHECK((numeric.derivative(s, a, b) - p.derivative(s, a, b)).norm() < 1e-9);
      }
    }
  }
  const auto straight = PathFamily::straightline();
  CHECK(straight.kind == PathFamily::Kind::kStraightline);
  CHECK(path_diagnostics(straight, Vec2(1, 1), Vec2(1, 1)).tv_constant == 0.0);
}

TEST_CASE("nonconservative products") {
  SUBCASE("scalar straightline") {
    const ScalarField u({0.5}, {0.0, 2.0});
    const auto mu = nc_product([](double x) { return x; }, u);
    REQUIRE(mu.atoms.size() == 1);
    CHECK(mu.atoms[0].x == 0.5);
    CHECK(mu.atoms[0].mass == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(nc_product([](double x) { return x; }, ScalarField(1.0)).atoms.empty());
  }
  SUBCASE("non-gradient coefficient depends on the path") {
    const SystemField u({0.0}, {Vec2(0, 0), Vec2(1, 1)}, SystemField::Merge::kYes);
    const auto straight = nc_product(non_gradient, u, PathFamily::straightline());
    const auto quad = PathFamily::user("quadratic-first", [](double s, const Vec2& l, const Vec2& r) {
      const Vec2 d = r - l;
      return Vec2(l(0) + s * s * d(0), l(1) + s * d(1));
    });
    const auto curved = nc_product(non_gradient, u, quad);
    CHECK(path_diagnostics(quad, Vec2(0, 0), Vec2(1, 1)).endpoint_error <= 1e-12);
    CHECK(straight.atoms[0].mass(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(curved.atoms[0].mass(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(curved.atoms[0].mass(0) - straight.atoms[0].mass(0)) >= 0.1);
    CHECK(straight.atoms[0].mass(1) == 0.0);
  }
  SUBCASE("gradients are path independent") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<PathFamily> paths{PathFamily::straightline()};
    for (auto& p : curved_test_paths()) paths.push_back(p);
    for (int k = 0; k < 20; ++k) {
      const Vec2 a(d(rng), d(rng)), b(d(rng), d(rng));
      const SystemField u({0.0}, {a, b});
      const Vec2 exact = h_fn(b) - h_fn(a);
      for (const auto& p : paths) {
        const auto mu = nc_product(dh_fn, u, p);
        CHECK((mu.atoms[0].mass - exact).norm() <= 1e-10);
      }
    }
  }
  SUBCASE("path range and zero jumps") {
    StateBox box;
    box.lo = Vec2(-0.1, -0.1);
    box.hi = Vec2(1.1, 1.1);
    const Vec2 a(0, 0), b(1, 1);
    CHECK_NOTHROW(path_integral(non_gradient, PathFamily::straightline(), a, b, 32, box));
    CHECK_THROWS_AS(path_integral(non_gradient, PathFamily::bezier(1.0), a, b, 32, box),
                    PathRangeError);
    CHECK(path_integral(non_gradient, PathFamily::bezier(1.0), a, a).norm() == 0.0);
    const auto broken = PathFamily::user("broken", [](double s, const Vec2& l, const Vec2&) -> Vec2 {
      return l + Vec2(s, 0);
    });
    CHECK_THROWS_AS(path_integral(non_gradient, broken, a, b), InvalidArgument);
  }
  SUBCASE("pairing with test functions") {
    const SystemField u({-1.0, 2.0}, {Vec2(0, 0), Vec2(1, 1), Vec2(0, 1)});
    const auto mu = nc_product(dh_fn, u, PathFamily::straightline());
    const Vec2 p = pairing(mu, [](double x) { return x; });
    const Vec2 expect = -1.0 * (h_fn(Vec2(1, 1)) - h_fn(Vec2(0, 0))) +
                        2.0 * (h_fn(Vec2(0, 1)) - h_fn(Vec2(1, 1)));
    CHECK((p - expect).norm() < 1e-12);
  }
}

TEST_CASE("generalized hugoniot relations") {
  const auto id = [](double x) { return x; };
  CHECK(std::abs(generalized_hugoniot_residual(id, 1.0, 0.0, 0.5)) <= 1e-12);
  CHECK(std::abs(generalized_hugoniot_residual(id, 1.0, 0.0, 0.0)) == doctest::Approx(0.5));
  CHECK(generalized_hugoniot_residual(id, 0.3, 0.3, 7.0) == 0.0);

  const auto f = fluxes::p_system(2.0);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> w(0.8, 1.3), v(-0.3, 0.3), lam(-2.0, 2.0);
  std::vector<PathFamily> paths{PathFamily::straightline()};
  for (auto& p : curved_test_paths()) paths.push_back(p);
  for (int k = 0; k < 40; ++k) {
    const Vec2 a(w(rng), v(rng));
    const Vec2 b = a + 0.2 * Vec2(v(rng), v(rng));
    const double l = lam(rng);
    const Vec2 classical = -l * (b - a) + f(b) - f(a);
    for (const auto& p : paths) {
      CHECK((generalized_hugoniot_residual(f.jacobian, p, a, b, l) - classical).norm() <= 1e-10);
    }
  }
}

TEST_CASE("dlm riemann problems") {
  SUBCASE("trivial") {
    const auto sol = solve_nc_riemann(model_nc_matrix(), PathFamily::straightline(), Vec2(0.1, 0.2),
                                      Vec2(0.1, 0.2));
    CHECK(sol.waves.empty());
  }
  SUBCASE("conservative reduction") {
    const auto f = fluxes::p_system(2.0);
    StateBox box{f.lo, f.hi};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> w(0.85, 1.15), v(-0.1, 0.1);
    for (int k = 0; k < 20; ++k) {
      const Vec2 ul(w(rng), v(rng)), ur(w(rng), v(rng));
      const auto nc = solve_nc_riemann(f.jacobian, PathFamily::straightline(), ul, ur, box);
      const auto cl = solve_riemann_system(HyperbolicModel::conservative(f), ul, ur);
      CHECK((nc.u_m - cl.u_m).norm() <= 1e-8);
      CHECK(nc.waves.size() == cl.waves.size());
    }
  }
  SUBCASE("model nonconservative system") {
    const auto m = model_nc_system();
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> d(-0.2, 0.2);
    for (int k = 0; k < 30; ++k) {
      const Vec2 ul(d(rng), d(rng)), ur(d(rng), d(rng));
      const auto sol = solve_riemann_system(m, ul, ur);
      Vec2 state = ul;
      for (const auto& wv : sol.waves) {
        CHECK(wv.left == state);
        state = wv.right;
        if (wv.shock) {
          CHECK(wv.residual <= 1e-10);
          CHECK(wv.lax);
          CHECK(generalized_hugoniot_residual(model_nc_matrix(), PathFamily::straightline(), wv.left,
                                              wv.right, wv.speed)
                    .norm() <= 1e-10);
        }
      }
      CHECK(state == ur);
    }
  }
  SUBCASE("shock curve first differences stay bounded") {
    const auto m = model_nc_system();
    std::vector<double> grid;
    for (int k = -20; k <= 20; ++k) grid.push_back(0.01 * k);
    const auto diff = shock_curve_differences(m, Vec2(0.1, 0.0), 1, grid);
    CHECK(diff.max_first <= 2.0);
    CHECK(std::isfinite(diff.max_second));
  }
}

TEST_CASE("superposition") {
  SUBCASE("conservative triple telescopes") {
    const auto f = fluxes::p_system_inflection();
    for (double a : {0.1, 0.3, 0.5}) {
      const auto t = conservative_triple(a, 0.2);
      const auto rep = superposition_check(f, t);
      CHECK(rep.left_residual <= 1e-12);
      CHECK(rep.right_residual <= 1e-12);
      CHECK(rep.composite_residual <= 1e-12);
    }
    CHECK_THROWS_AS(conservative_triple(0.0), SetupError);
  }
  SUBCASE("nonconservative witness") {
    const auto m = model_nc_system();
    const auto t = nonconservative_triple(m, Vec2(0.0, 0.0), 1.0);
    const auto rep = superposition_check(m, t);
    CHECK(rep.left_residual <= 1e-10);
    CHECK(rep.right_residual <= 1e-10);
    CHECK(rep.composite_residual > 1e-4);
  }
  SUBCASE("u_m = u_l") {
    const auto m = model_nc_system();
    const Vec2 ul(0.1, 0.0);
    const auto p = hugoniot_point(m, ul, 2, -0.1);
    const Triple t{ul, ul, p.u_plus, p.speed};
    const auto rep = superposition_check(m, t);
    CHECK(rep.composite_residual <= 1e-10);
  }
  SUBCASE("setup errors") {
    const auto m = model_nc_system();
    const Triple bad{Vec2(0, 0), Vec2(1, 0), Vec2(2, 0), 0.0};
    CHECK_THROWS_AS(superposition_check(m, bad), SetupError);
  }
}
