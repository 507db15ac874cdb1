#include <cmath>
#include <random>

#include "doctest.h"
#include "linstab/classification.hpp"
#include "linstab/scalar_riemann.hpp"

using namespace linstab;

namespace {

// Closed-form averaged speeds.
double abar_burgers(double a, double b) { return 0.5 * (a + b); }
double abar_cubic(double a, double b) { return (a * a + a * b + b * b) / 3.0; }

ScalarField random_levels(std::mt19937_64& rng, int jumps, double delta, int levels) {
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  std::uniform_int_distribution<int> level(-levels, levels);
  std::vector<double> b(jumps);
  for (auto& x : b) x = pos(rng);
  std::sort(b.begin(), b.end());
  std::vector<double> v{0.0};
  for (int i = 1; i < jumps; ++i) v.push_back(level(rng) * delta);
  v.push_back(0.0);
  return ScalarField(b, v);
}

}  // namespace

TEST_CASE("classify_jump examples") {
  CHECK(classify_jump(1.0, -1.0, 0.0).kind == JumpKind::kCompressive);
  CHECK(classify_jump(-1.0, 1.0, 0.0).kind == JumpKind::kRarefaction);
  CHECK(classify_jump(1.0, 2.0, 0.5).kind == JumpKind::kSlowUndercompressive);
  CHECK(classify_jump(1.0, 2.0, 2.5).kind == JumpKind::kFastUndercompressive);
  const auto tie = classify_jump(0.5, 0.5, 0.5);
  CHECK(tie.kind == JumpKind::kCompressive);
  CHECK(tie.degenerate);
  CHECK(classify_jump(1.0, -1.0, 0.0).margin == 1.0);
  CHECK_FALSE(classify_jump(1.0, -1.0, 0.0).degenerate);
  CHECK(classify_jump(1.0, -1.0, 1.0 - 1e-10).degenerate);
  CHECK(std::string(jump_kind_tag(JumpKind::kFastUndercompressive)) == "F");
}

TEST_CASE("classifier completeness and mirror symmetry") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int k = 0; k < 100000; ++k) {
    const double am = d(rng), ap = d(rng), lam = d(rng);
    const auto c = classify_jump(am, ap, lam);
    const bool is_l = am >= lam && lam >= ap;
    const bool is_s = lam < std::min(am, ap);
    const bool is_f = lam > std::max(am, ap);
    const bool is_r = am <= lam && lam <= ap;
    switch (c.kind) {
      case JumpKind::kCompressive:
        CHECK(is_l);
        break;
      case JumpKind::kSlowUndercompressive:
        CHECK((is_s && !is_l));
        break;
      case JumpKind::kFastUndercompressive:
        CHECK((is_f && !is_l && !is_s));
        break;
      case JumpKind::kRarefaction:
        CHECK((is_r && !is_l && !is_s && !is_f));
        break;
    }
    CHECK(c.margin >= 0.0);
    CHECK(classify_jump(-ap, -am, -lam).kind == mirrored(c.kind));
  }
}

TEST_CASE("omega_classify examples and errors") {
  const auto f = fluxes::burgers();
  CHECK(omega_value(1.0, -1.0, 2.0, f) == doctest::Approx(-2.0));
  CHECK(omega_classify(1.0, -1.0, 2.0, f).kind == JumpKind::kSlowUndercompressive);
  CHECK(classify_jump(1.5, 0.5, 0.0).kind == JumpKind::kSlowUndercompressive);
  CHECK(omega_value(1.0, -1.0, 0.0, f) == doctest::Approx(2.0));
  CHECK(omega_classify(1.0, -1.0, 0.0, f).kind == JumpKind::kCompressive);
  CHECK(omega_classify(1.0, -1.0, 10.0, f).kind == JumpKind::kSlowUndercompressive);
  CHECK(omega_classify(1.0, -1.0, -10.0, f).kind == JumpKind::kFastUndercompressive);
  CHECK_THROWS_AS(omega_classify(-1.0, 1.0, 0.0, f), EntropyViolation);
  CHECK_THROWS_AS(omega_classify(1.0, -1.0, 1.0, f), DegenerateState);
  CHECK_THROWS_AS(omega_classify(1.0, 1.0, 0.0, f), InvalidArgument);
}

TEST_CASE("omega classification agrees with direct classification") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  struct Case {
    ScalarFlux f;
    double (*abar)(double, double);
  };
  for (const auto& c : {Case{fluxes::burgers(), abar_burgers}, Case{fluxes::cubic(), abar_cubic}}) {
    int checked = 0, attempts = 0;
    while (checked < 10000 && attempts < 1000000) {
      ++attempts;
      double um = d(rng), up = d(rng);
      const double v = d(rng);
      if (std::abs(um - up) < 1e-6) continue;
      if (!oleinik_admissible(c.f, um, up, 256, 1e-12)) std::swap(um, up);
      if (!oleinik_admissible(c.f, um, up, 256, 1e-12)) continue;
      if (std::abs(v - um) < 1e-6 || std::abs(v - up) < 1e-6) continue;
      const auto direct = classify_jump(c.abar(um, v), c.abar(up, v), c.abar(um, up));
      if (direct.degenerate) continue;
      const auto omega = omega_classify(um, up, v, c.f);
      CHECK(omega.kind == direct.kind);
      // Entropy shocks are never rarefaction-shocks of the averaged speed.
      CHECK(direct.kind != JumpKind::kRarefaction);
      ++checked;
    }
    CHECK(checked == 10000);
  }
}

TEST_CASE("scan_rarefaction_free") {
  const auto f = fluxes::burgers();
  const double delta = 0.05;
  SUBCASE("constant v against a burgers shock") {
    ScalarField u0({0.0}, {1.0, -1.0});
    for (double c : {-2.0, 0.0, 0.3, 2.0}) {
      ScalarField v0(c);
      const auto g = shared_flux(f, delta, {&u0, &v0});
      const auto u = front_tracking_evolve(g, u0, 1.0);
      const auto v = front_tracking_evolve(g, v0, 1.0);
      const auto r = scan_rarefaction_free(u, v, f);
      CHECK(r.count(JumpKind::kRarefaction) == 0);
      CHECK(r.rarefaction_violations == 0);
      CHECK(r.count(JumpKind::kCompressive) + r.count(JumpKind::kSlowUndercompressive) +
                r.count(JumpKind::kFastUndercompressive) ==
            r.sampled_times);
    }
  }
  SUBCASE("u = v gives compressive jumps") {
    ScalarField u0({-1.0, 0.0, 1.0}, {2.0, 1.0, -1.0, 0.0});
    const auto u = front_tracking_evolve(f, u0, delta, 2.0);
    const auto r = scan_rarefaction_free(u, u, f);
    CHECK(r.count(JumpKind::kCompressive) > 0);
    CHECK(r.count(JumpKind::kSlowUndercompressive) == 0);
    CHECK(r.count(JumpKind::kFastUndercompressive) == 0);
    CHECK(r.count(JumpKind::kRarefaction) == 0);
  }
  SUBCASE("negative control: a non-entropy jump is flagged") {
    PiecewiseLinearFlux g(f, delta, -1.0, 1.0);
    Front bad;
    bad.id = 0;
    bad.left = -1.0;
    bad.right = 1.0;
    bad.speed = 0.0;
    bad.kind = FrontKind::kShock;
    const auto u = free_fronts_trajectory(g, -1.0, {bad}, 1.0);
    const auto v = front_tracking_evolve(g, ScalarField(0.2), 1.0);
    const auto r = scan_rarefaction_free(u, v, f);
    CHECK(r.rarefaction_violations >= 1);
    CHECK(r.worst_rarefaction_margin > 0.1);
  }
  SUBCASE("random entropy pairs are rarefaction-free") {
    std::mt19937_64 rng(8);
    for (const auto& flux : {fluxes::burgers(), fluxes::cubic()}) {
      for (int k = 0; k < 10; ++k) {
        const auto u0 = random_levels(rng, 6, delta, 20);
        const auto v0 = random_levels(rng, 6, delta, 20);
        const auto g = shared_flux(flux, delta, {&u0, &v0});
        const auto u = front_tracking_evolve(g, u0, 2.0);
        const auto v = front_tracking_evolve(g, v0, 2.0);
        const auto r = scan_rarefaction_free(u, v, flux);
        CHECK(r.rarefaction_violations == 0);
      }
    }
  }
}
