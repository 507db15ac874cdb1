// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "linstab/classification.hpp"
#include "linstab/front_tracking.hpp"
#include "linstab/harness.hpp"
#include "linstab/scalar_riemann.hpp"
#include "linstab/stability.hpp"
#include "linstab/systems.hpp"

using namespace linstab;
namespace fs = std::filesystem;

namespace {

int failures = 0;
fs::path out_root;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("criterion %2d %s: %s (%s)\n", id, ok ? "PASS" : "FAIL", title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Runs an inline scenario; returns pass and a compact summary of its assertions.
bool scenario(const std::string& text, std::string& detail) {
  const auto s = parse_scenario(text, "acceptance");
  const auto r = run_scenario(s, out_root / s.name);
  for (const auto& a : r.assertions) {
    if (!detail.empty()) detail += "; ";
    detail += a.name + (a.passed ? " ok " : " FAILED ") + fmt("%.3g", a.value);
  }
  if (!r.error.empty()) detail += "; error: " + r.error;
  return r.passed();
}

struct Pair {
  ScalarField u0, v0;
  FrontTrajectory u, v;
};

std::vector<Pair> ensemble(const ScalarFlux& f, std::uint64_t seed, int count, double amp,
                           double delta, double t_max) {
  std::mt19937_64 rng(SeedTree(seed).seed("pairs"));
  std::vector<Pair> out;
  for (int k = 0; k < count; ++k) {
    auto u0 = random_bv_field(rng, 6, amp);
    auto v0 = random_bv_field(rng, 6, amp);
    const auto g = shared_flux(f, delta, {&u0, &v0});
    auto u = front_tracking_evolve(g, u0, t_max);
    auto v = front_tracking_evolve(g, v0, t_max);
    out.push_back({std::move(u0), std::move(v0), std::move(u), std::move(v)});
  }
  return out;
}

double abar_burgers(double u, double v) { return 0.5 * (u + v); }
double abar_cubic(double u, double v) { return (u * u + u * v + v * v) / 3.0; }

void criteria_scalar() {
  const double delta = 1e-2, t_max = 2.0;
  double worst_excess = -INFINITY;
  std::size_t rare = 0, sampled = 0, checkpoints = 0;
  for (const auto& [name, f] : {std::pair{"burgers", fluxes::burgers()}, std::pair{"cubic", fluxes::cubic()}}) {
    for (const auto& p : ensemble(f, 1, 50, 1.0, delta, t_max)) {
      const double d0 = l1_distance(p.u0, p.v0);
      FrontCursor cu(p.u), cv(p.v);
      for (double t : union_event_times({&p.u, &p.v})) {
        const double d = l1_distance(cu.advance_to(t).to_field(), cv.advance_to(t).to_field());
        worst_excess = std::max(worst_excess, d - (d0 * (1.0 + 1e-8) + 5.0 * delta));
        ++checkpoints;
      }
      const auto r = scan_rarefaction_free(p.u, p.v, f);
      rare += r.rarefaction_violations;
      sampled += r.sampled_times;
    }
  }
  report(1, "L1 contraction, 50 pairs per flux", worst_excess <= 0.0,
         fmt("worst excess over bound %.3g at %.0f event times", worst_excess,
             static_cast<double>(checkpoints)));

  const auto f = fluxes::burgers();
  PiecewiseLinearFlux g(f, delta, -1.0, 1.0);
  Front bad;
  bad.id = 0;
  bad.left = -1.0;
  bad.right = 1.0;
  bad.speed = 0.0;
  bad.kind = FrontKind::kShock;
  const auto control = scan_rarefaction_free(free_fronts_trajectory(g, -1.0, {bad}, 1.0),
                                             front_tracking_evolve(g, ScalarField(0.2), 1.0), f);
  report(2, "no rarefaction-shock jumps", rare == 0 && control.rarefaction_violations >= 1,
         fmt("R count %.0f over %.0f scans; negative control %.0f", static_cast<double>(rare),
             static_cast<double>(sampled), static_cast<double>(control.rarefaction_violations)));

  double worst_k = 0.0;
  std::size_t breaks = 0;
  for (const auto& p : ensemble(f, 3, 50, 0.2, delta, t_max)) {
    DecayOptions opt;
    opt.itemize = false;
    const auto led = decay_terms_scalar(p.u, p.v, f, t_max, opt);
    if (led.trivial) continue;
    worst_k = std::max(worst_k, led.max_k());
    for (std::size_t i = 1; i < led.times.size(); ++i) {
      if (led.d2[i] < led.d2[i - 1] || led.d3[i] < led.d3[i - 1]) ++breaks;
    }
  }
  report(3, "stability ledger K <= 1 + 5 delta, D2 and D3 nondecreasing",
         worst_k <= 1.0 + 5.0 * delta && breaks == 0,
         fmt("K %.4f (bound %.2f), monotonicity breaks %.0f", worst_k, 1.0 + 5.0 * delta,
             static_cast<double>(breaks)));

  std::mt19937_64 rng(SeedTree(6).seed("triples"));
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::size_t agree = 0, checked = 0;
  for (const auto& [ff, abar] : {std::pair{fluxes::burgers(), abar_burgers}, std::pair{fluxes::cubic(), abar_cubic}}) {
    std::size_t n = 0;
    while (n < 10000) {
      double um = d(rng), up = d(rng);
      const double v = d(rng);
      if (std::abs(um - up) < 1e-6 || std::abs(v - um) < 1e-6 || std::abs(v - up) < 1e-6) continue;
      if (!oleinik_admissible(ff, um, up, 256, 1e-12)) std::swap(um, up);
      if (!oleinik_admissible(ff, um, up, 256, 1e-12)) continue;
      const auto direct = classify_jump(abar(um, v), abar(up, v), abar(um, up));
      if (direct.degenerate) continue;
      ++n;
      if (omega_classify(um, up, v, ff).kind == direct.kind) ++agree;
    }
    checked += n;
  }
  report(6, "omega classifier agrees with direct classification", agree == checked,
         fmt("%.0f of %.0f triples", static_cast<double>(agree), static_cast<double>(checked)));
}

void criterion_audits() {
  const auto f = fluxes::p_system(2.0);
  const auto m = HyperbolicModel::conservative(f);
  std::mt19937_64 rng(SeedTree(8).seed("lax-shocks"));
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI), unit(0.0, 1.0), eps(-0.12, -0.01);
  const Vec2 center(1.0, 0.0);
  auto ball = [&](const Vec2& c, double r) {
    const double th = ang(rng), s = r * std::sqrt(unit(rng));
    return Vec2(c + s * Vec2(std::cos(th), std::sin(th)));
  };
  std::size_t classified = 0, sign_fail = 0, rare = 0, dominant = 0, comp_fail = 0;
  for (int k = 0; k < 200; ++k) {
    const int fam = 1 + k % 2;
    const Vec2 um = ball(center, 0.1), v = ball(center, 0.15);
    const double e = eps(rng);
    auto hp = hugoniot_point(m, um, fam, e);
    if (!hp.lax_admissible) hp = hugoniot_point(m, um, fam, -e);
    if (!hp.lax_admissible) continue;
    const auto am = averaged_matrix(f, um, v), ap = averaged_matrix(f, hp.u_plus, v);
    Mat2 rp = ap.eig.r;
    for (int j = 0; j < 2; ++j) {
      if (rp.col(j).dot(am.eig.r.col(j)) < 0.0) rp.col(j) *= -1.0;
    }
    const auto cls = classify_jump(am.lambda(fam), ap.lambda(fam), hp.speed);
    if (cls.degenerate) continue;
    JumpCharacteristics j;
    j.family = fam;
    j.kind = cls.kind;
    j.alpha_minus = characteristic_components(um - v, am.eig.r);
    j.alpha_plus = characteristic_components(hp.u_plus - v, rp);
    j.lambda_minus = am.eig.lambda;
    j.lambda_plus = ap.eig.lambda;
    j.lambda_bar = hp.speed;
    const auto data = characteristic_flux(j);
    ++classified;
    if (cls.kind == JumpKind::kRarefaction) ++rare;
    if (!data.sign_pass) ++sign_fail;
    const auto dom = dominance_test(data, (ap.a - am.a).norm(),
                                    (rp.col(fam - 1) - am.eig.r.col(fam - 1)).norm(), 0.1);
    dominant += dom.checked;
    comp_fail += dom.violations;
  }
  report(8, "sign-lemma and dominance audits", classified > 0 && sign_fail == 0 && comp_fail == 0,
         fmt("sign failures %.0f of %.0f jumps; ", static_cast<double>(sign_fail),
             static_cast<double>(classified)) +
             fmt("component violations %.0f of %.0f dominant flags; R jumps %.0f",
                 static_cast<double>(comp_fail), static_cast<double>(dominant),
                 static_cast<double>(rare)));
}

const char* const kDelta = R"({"schema_version": 1, "name": "%s", "kind": "linear-transport",
  "initial": {"type": "transport-riemann", "psi_l": %g, "psi_r": %g, "a_minus": 1, "a_plus": -1,
              "lambda": 0}, "params": {"t_max": %g}})";

std::string delta_text(const char* name, double pl, double pr, double t) {
  char buf[512];
  std::snprintf(buf, sizeof buf, kDelta, name, pl, pr, t);
  return buf;
}

void criteria_scenarios() {
  std::string d4;
  bool ok4 = true;
  for (double t : {0.25, 1.0, 3.0}) {
    ok4 = scenario(delta_text(("delta-shock-" + std::to_string(static_cast<int>(100 * t))).c_str(),
                              1.0, 2.0, t),
                   d4) && ok4;
  }
  ok4 = scenario(delta_text("delta-shock-compatible", 1.0, -1.0, 1.0), d4) && ok4;
  report(4, "delta-shock atom, mass balance, compatible data", ok4, d4);

  std::string d5;
  const bool ok5 = scenario(R"({"schema_version": 1, "name": "nonuniqueness", "kind": "linear-transport",
    "initial": {"type": "transport-riemann", "psi_l": 1, "psi_r": 1, "a_minus": -1, "a_plus": 1, "lambda": 0},
    "params": {"phi_star": [0, 1], "test_functions": 20, "time_points": 10000}})", d5);
  report(5, "nonuniqueness witness", ok5, d5);

  std::string d7;
  const bool ok7 = scenario(R"({"schema_version": 1, "name": "monotonicity", "kind": "monotonicity",
    "flux": {"type": "p-system", "gamma": 2},
    "initial": {"type": "random-ball", "center": [1, 0], "radius": 0.3, "count": 100},
    "params": {"eps_max": 0.15, "grid_points": 41}, "seed": 7})", d7);
  report(7, "averaged-eigenvalue monotonicity", ok7, d7);

  std::string d9;
  bool ok9 = scenario(R"({"schema_version": 1, "name": "dlm", "kind": "dlm",
    "initial": {"type": "random-jumps", "count": 20}, "seed": 9})", d9);
  ok9 = scenario(R"({"schema_version": 1, "name": "superposition-conservative", "kind": "superposition",
    "initial": {"type": "triple", "a": 0.3}})", d9) && ok9;
  ok9 = scenario(R"({"schema_version": 1, "name": "superposition-nonconservative", "kind": "superposition",
    "initial": {"type": "witness", "u_l": [0, 0], "eps1": 1}})", d9) && ok9;
  report(9, "DLM calculus", ok9, d9);

  std::string d10;
  const bool ok10 = scenario(R"({"schema_version": 1, "name": "glimm", "kind": "glimm",
    "flux": {"type": "burgers"}, "initial": {"type": "riemann", "left": 1, "right": 0},
    "params": {"h_list": [0.04, 0.02, 0.01, 0.005], "t_max": 1, "cfl": 0.5}})", d10);
  report(10, "Glimm shock location", ok10, d10);
}

}  // namespace

int main(int argc, char** argv) {
  out_root = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_out");
  const auto t0 = std::chrono::steady_clock::now();
  try {
    criteria_scalar();
    criterion_audits();
    criteria_scenarios();
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 1;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d criteria failed, %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
