#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "linstab/classification.hpp"
#include "linstab/dlm.hpp"
#include "linstab/front_tracking.hpp"
#include "linstab/glimm.hpp"
#include "linstab/io.hpp"
#include "linstab/linear_transport.hpp"
#include "linstab/scalar_riemann.hpp"
#include "linstab/shock_path.hpp"
#include "linstab/stability.hpp"
#include "linstab/systems.hpp"

namespace linstab::detail {

using nlohmann::json;

void Context::check(const std::string& name, bool passed, double value, double bound,
                    const std::string& detail) {
  rep.assertions.push_back({name, passed, value, bound, detail});
}

std::filesystem::path Context::artifact(const std::string& file) {
  rep.artifacts.push_back(file);
  return out / file;
}

namespace {

const char* const kScalarFluxes[] = {"burgers", "cubic", "linear"};

bool is_scalar_flux(const json& flux) {
  const auto t = flux.at("type").get<std::string>();
  return std::find(std::begin(kScalarFluxes), std::end(kScalarFluxes), t) != std::end(kScalarFluxes);
}

ScalarFlux scalar_flux(const json& flux) {
  const auto t = flux.at("type").get<std::string>();
  if (t == "burgers") return fluxes::burgers();
  if (t == "cubic") return fluxes::cubic();
  if (t == "linear") return fluxes::linear(flux.value("speed", 1.0));
  throw KindError("flux " + t + " is not scalar", "flux");
}

SystemFlux system_flux(const json& flux) {
  const auto t = flux.at("type").get<std::string>();
  if (t == "p-system") return fluxes::p_system(flux.value("gamma", 2.0));
  if (t == "p-system-linear") return fluxes::p_system_linear();
  if (t == "p-system-inflection") return fluxes::p_system_inflection();
  if (t == "euler") return fluxes::euler(flux.value("gamma", 1.4), flux.value("kappa", 1.0));
  throw KindError("flux " + t + " is not a conservative 2x2 system", "flux");
}

HyperbolicModel system_model(const json& flux) {
  if (flux.at("type") == "model-nonconservative") return model_nc_system();
  return HyperbolicModel::conservative(system_flux(flux));
}

double scalar_state(const json& v, const char* key) {
  if (!v.is_number()) throw KindError(std::string("initial.") + key + " must be a number", key);
  return v.get<double>();
}

Vec2 system_state(const json& v, const char* key) {
  if (!v.is_array()) throw KindError(std::string("initial.") + key + " must be a pair", key);
  return Vec2(v[0].get<double>(), v[1].get<double>());
}

void require_keys(const json& obj, std::initializer_list<const char*> keys,
                  const std::string& section) {
  for (const char* k : keys) {
    if (!obj.contains(k)) throw KindError(section + "." + k + " is required", section);
  }
}

void allow_types(const Scenario& s, std::initializer_list<const char*> types) {
  const auto t = s.initial.at("type").get<std::string>();
  for (const char* x : types) {
    if (t == x) return;
  }
  throw KindError("initial.type \"" + t + "\" is not valid for kind " + s.kind, "type");
}

ScalarField scalar_initial(const Scenario& s, std::mt19937_64& rng) {
  const auto& in = s.initial;
  const auto t = in.at("type").get<std::string>();
  if (t == "riemann") {
    return ScalarField({in.value("x0", 0.0)},
                       {scalar_state(in.at("left"), "left"), scalar_state(in.at("right"), "right")});
  }
  if (t == "piecewise") {
    std::vector<double> vals;
    for (const auto& v : in.at("values")) vals.push_back(scalar_state(v, "values"));
    try {
      return ScalarField(in.at("breakpoints").get<std::vector<double>>(), vals);
    } catch (const InvalidArgument& e) {
      throw KindError(e.what(), "breakpoints");
    }
  }
  return random_bv_field(rng, in.value("jumps", 6), in.value("amplitude", 1.0));
}

// --- per-kind validation --------------------------------------------------------

void validate_scalar_flux(const Scenario& s) {
  if (s.flux.is_null()) throw KindError("kind " + s.kind + " needs a flux", "kind");
  if (!is_scalar_flux(s.flux)) throw KindError("kind " + s.kind + " needs a scalar flux", "flux");
}

}  // namespace

void validate_kind(const Scenario& s) {
  const auto& in = s.initial;
  const auto type = in.at("type").get<std::string>();
  if (s.kind == "riemann") {
    allow_types(s, {"riemann"});
    require_keys(in, {"left", "right"}, "initial");
    if (s.flux.is_null()) throw KindError("kind riemann needs a flux", "kind");
    if (is_scalar_flux(s.flux)) {
      scalar_state(in["left"], "left");
      scalar_state(in["right"], "right");
    } else {
      system_state(in["left"], "left");
      system_state(in["right"], "right");
    }
  } else if (s.kind == "front-tracking") {
    validate_scalar_flux(s);
    allow_types(s, {"riemann", "piecewise", "random-bv"});
    if (type == "riemann") require_keys(in, {"left", "right"}, "initial");
    if (type == "piecewise") require_keys(in, {"breakpoints", "values"}, "initial");
  } else if (s.kind == "glimm") {
    validate_scalar_flux(s);
    allow_types(s, {"riemann"});
    require_keys(in, {"left", "right"}, "initial");
    const double l = scalar_state(in["left"], "left"), r = scalar_state(in["right"], "right");
    if (l == r || !oleinik_admissible(scalar_flux(s.flux), l, r)) {
      throw KindError("glimm scenarios need an admissible shock datum", "initial");
    }
  } else if (s.kind == "linear-transport") {
    allow_types(s, {"transport-riemann"});
    require_keys(in, {"psi_l", "psi_r", "a_minus", "a_plus", "lambda"}, "initial");
    const auto cls = classify_jump(in["a_minus"].get<double>(), in["a_plus"].get<double>(),
                                   in["lambda"].get<double>());
    if (cls.kind != JumpKind::kRarefaction && s.params.contains("phi_star")) {
      throw KindError("params.phi_star applies to rarefaction jumps only", "phi_star");
    }
  } else if (s.kind == "classification-scan" || s.kind == "stability-ledger") {
    validate_scalar_flux(s);
    allow_types(s, {"random-bv"});
  } else if (s.kind == "monotonicity") {
    if (s.flux.is_null()) throw KindError("kind monotonicity needs a flux", "kind");
    system_flux(s.flux);
    allow_types(s, {"random-ball"});
    if (in.contains("center")) system_state(in["center"], "center");
    if (!(s.param("eps_max", 0.15) < in.value("radius", 0.3))) {
      throw KindError("params.eps_max must be below initial.radius", "eps_max");
    }
  } else if (s.kind == "dlm") {
    allow_types(s, {"random-jumps"});
  } else if (s.kind == "superposition") {
    allow_types(s, {"triple", "witness"});
    if (type == "witness" && in.contains("u_l")) system_state(in["u_l"], "u_l");
  }
}

namespace {

// --- experiments --------------------------------------------------------------

void run_riemann(Context& c) {
  const auto& in = c.s.initial;
  if (is_scalar_flux(c.s.flux)) {
    const auto f = scalar_flux(c.s.flux);
    const double ul = in["left"].get<double>(), ur = in["right"].get<double>();
    const auto fan = solve_riemann_scalar(f, ul, ur);
    CsvWriter w(c.artifact("waves.csv"), {"kind", "left", "right", "speed_lo", "speed_hi"});
    std::size_t bad = 0;
    for (const auto& wv : fan.waves) {
      const bool shock = wv.kind == WaveKind::kShock;
      w.row(std::vector<std::string>{shock ? "shock" : "rarefaction", format_number(wv.left),
                                     format_number(wv.right), format_number(wv.speed_lo),
                                     format_number(wv.speed_hi)});
      if (shock && !oleinik_admissible(f, wv.left, wv.right)) ++bad;
    }
    c.check("fan speeds nondecreasing", fan.speeds_monotone(), 0, 0);
    c.check("shocks satisfy the Oleinik condition", bad == 0, static_cast<double>(bad), 0);
    c.rep.measured["waves"] = fan.waves.size();
    return;
  }
  const auto m = system_model(c.s.flux);
  const Vec2 ul = system_state(in["left"], "left"), ur = system_state(in["right"], "right");
  const auto sol = solve_riemann_system(m, ul, ur);
  CsvWriter w(c.artifact("waves.csv"),
              {"family", "kind", "left1", "left2", "right1", "right2", "speed_lo", "speed_hi",
               "residual"});
  double worst = 0.0;
  bool lax = true;
  Vec2 state = ul;
  bool chained = true;
  for (const auto& wv : sol.waves) {
    w.row(std::vector<std::string>{
        std::to_string(wv.family), wv.shock ? "shock" : "rarefaction", format_number(wv.left(0)),
        format_number(wv.left(1)), format_number(wv.right(0)), format_number(wv.right(1)),
        format_number(wv.speed), format_number(wv.speed_hi), format_number(wv.residual)});
    chained = chained && (wv.left - state).norm() <= 1e-12;
    state = wv.right;
    if (wv.shock) {
      worst = std::max(worst, wv.residual);
      lax = lax && wv.lax;
    }
  }
  chained = chained && (state - ur).norm() <= 1e-12;
  c.check("shock residuals", worst <= 1e-10, worst, 1e-10);
  c.check("shocks are Lax admissible", lax, lax ? 1 : 0, 1);
  c.check("waves connect u_l to u_r", chained, 0, 0);
  c.rep.measured["u_m"] = to_json(sol.u_m);
}

void run_front_tracking(Context& c) {
  const auto f = scalar_flux(c.s.flux);
  auto rng = c.seeds.stream("initial");
  const auto u0 = scalar_initial(c.s, rng);
  const double delta = c.s.param("delta", 0.05), t_max = c.s.param("t_max", 1.0);
  const auto u = front_tracking_evolve(f, u0, delta, t_max);
  const double lo = *std::min_element(u0.values().begin(), u0.values().end());
  const double hi = *std::max_element(u0.values().begin(), u0.values().end());
  const double tv0 = total_variation(u0);
  CsvWriter w(c.artifact("history.csv"), {"t", "tv", "fronts", "min", "max"});
  FrontCursor cursor(u);
  double prev_tv = tv0, worst_tv = 0.0, range_excess = 0.0;
  for (double t : union_event_times({&u})) {
    const auto& st = cursor.advance_to(t);
    const auto field = st.to_field();
    const double tv = total_variation(field);
    const double mn = *std::min_element(field.values().begin(), field.values().end());
    const double mx = *std::max_element(field.values().begin(), field.values().end());
    w.row({t, tv, static_cast<double>(st.fronts.size()), mn, mx});
    worst_tv = std::max(worst_tv, tv - prev_tv);
    range_excess = std::max({range_excess, lo - mn, mx - hi});
    prev_tv = tv;
  }
  write_field_csv(c.artifact("final.csv"), u.final_state().to_field());
  c.check("total variation nonincreasing", worst_tv <= 1e-12, worst_tv, 1e-12);
  c.check("maximum principle", range_excess <= 0.0, range_excess, 0.0);
  c.rep.measured["tv0"] = tv0;
  c.rep.measured["interactions"] = u.interactions.size();
}

void run_glimm(Context& c) {
  const auto f = scalar_flux(c.s.flux);
  const double ul = c.s.initial["left"].get<double>(), ur = c.s.initial["right"].get<double>();
  const double x0 = c.s.initial.value("x0", 0.0);
  const double speed = (f(ul) - f(ur)) / (ul - ur);
  const double t_max = c.s.param("t_max", 1.0), cfl = c.s.param("cfl", 0.5);
  auto hs = c.s.param_list("h_list", {c.s.param("h", 0.01)});
  std::sort(hs.begin(), hs.end(), std::greater<>());
  const ScalarField u0({x0}, {ul, ur});
  const SpaceTimeWindow window{0.0, t_max, x0 - std::abs(speed) * t_max - 1.0,
                               x0 + std::abs(speed) * t_max + 1.0};
  std::vector<double> dev;
  json levels = json::array();
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const auto run = glimm_evolve(f, u0, hs[k], cfl, SamplingSequence::van_der_corput(), t_max);
    const auto path = track_shock_path(run.times, run.snapshots, window, 0.5 * std::abs(ul - ur));
    dev.push_back(path.max_deviation([&](double t) { return x0 + speed * t; }));
    CsvWriter w(c.artifact("path_" + std::to_string(k) + ".csv"), {"t", "x"});
    for (std::size_t i = 0; i < path.t.size(); ++i) w.row({path.t[i], path.x[i]});
    levels.push_back({{"h", hs[k]}, {"max_deviation", dev.back()}});
  }
  bool monotone = true;
  for (std::size_t k = 1; k < dev.size(); ++k) monotone = monotone && dev[k] <= dev[k - 1];
  c.check("deviation nonincreasing under refinement", monotone, dev.back(), dev.front());
  c.check("finest deviation within 5h", dev.back() <= 5.0 * hs.back(), dev.back(), 5.0 * hs.back());
  c.rep.measured["levels"] = levels;
}

void run_linear_transport(Context& c) {
  const auto& in = c.s.initial;
  const double pl = in["psi_l"].get<double>(), pr = in["psi_r"].get<double>();
  const double am = in["a_minus"].get<double>(), ap = in["a_plus"].get<double>();
  const double lam = in["lambda"].get<double>();
  const double t_max = c.s.param("t_max", 1.0);
  const int n_tests = static_cast<int>(c.s.param("test_functions", 20));
  const int points = static_cast<int>(c.s.param("time_points", 10000));
  const auto cls = classify_jump(am, ap, lam);
  std::vector<std::optional<double>> choices;
  if (cls.kind == JumpKind::kRarefaction) {
    for (double p : c.s.param_list("phi_star", {0.0})) choices.emplace_back(p);
  } else {
    choices.emplace_back();
  }
  const auto tests = standard_test_functions(n_tests, t_max);
  std::vector<LinearRiemannSolution> sols;
  json residuals = json::array();
  for (std::size_t k = 0; k < choices.size(); ++k) {
    const auto sol = riemann_linear(pl, pr, am, ap, lam, choices[k]);
    double worst = 0.0;
    for (const auto& th : tests) worst = std::max(worst, std::abs(weak_form_residual(sol, th, points)));
    residuals.push_back(worst);
    c.check("weak-form residual of solution " + std::to_string(k), worst < 1e-6, worst, 1e-6);
    write_measure_csv(c.artifact("solution_" + std::to_string(k) + ".csv"), sol.at(t_max));

    // Signed mass on [-R, R] changes by the boundary fluxes only.
    const double big = 10.0 + 2.0 * (std::abs(am) + std::abs(ap) + std::abs(lam)) * t_max;
    const auto m = sol.at(t_max);
    double mass = integral_over(m.bv, -big, big);
    for (const auto& a : m.atoms) mass += a.mass;
    const double expect = big * (pl + pr) + t_max * (am * pl - ap * pr);
    c.check("signed mass balance of solution " + std::to_string(k), std::abs(mass - expect) <= 1e-10,
            std::abs(mass - expect), 1e-10);
    if (cls.kind != JumpKind::kRarefaction) {
      const double cl = (lam - am) * pl, cr = (lam - ap) * pr;
      double atom = 0.0;
      for (const auto& a : m.atoms) {
        if (std::abs(a.x - lam * t_max) <= 1e-12) atom += a.mass;
      }
      c.check("atom equals t (C_r - C_l)", std::abs(atom - t_max * (cr - cl)) <= 1e-12,
              std::abs(atom - t_max * (cr - cl)), 1e-12);
      c.rep.measured["C_l"] = cl;
      c.rep.measured["C_r"] = cr;
    }
    sols.push_back(sol);
  }
  if (sols.size() > 1) {
    std::size_t distinct = 0;
    for (std::size_t k = 1; k < sols.size(); ++k) {
      const auto a = sols[0].at(t_max), b = sols[k].at(t_max);
      double diff = std::abs(static_cast<double>(a.atoms.size()) - static_cast<double>(b.atoms.size()));
      for (std::size_t i = 0; i < std::min(a.atoms.size(), b.atoms.size()); ++i) {
        diff += std::abs(a.atoms[i].mass - b.atoms[i].mass) + std::abs(a.atoms[i].x - b.atoms[i].x);
      }
      diff += integrate_pair(a.bv, b.bv, [](double x, double y) { return std::abs(x - y); });
      if (diff > 1e-9) ++distinct;
    }
    c.check("solutions are pairwise distinct from the first", distinct == sols.size() - 1,
            static_cast<double>(distinct), static_cast<double>(sols.size() - 1));
  }
  c.rep.measured["classification"] = jump_kind_tag(cls.kind);
  c.rep.measured["weak_residuals"] = residuals;
}

struct Pair {
  FrontTrajectory u, v;
};

std::vector<Pair> ensemble(Context& c, const ScalarFlux& f, double delta, double t_max) {
  auto rng = c.seeds.stream("pairs");
  const int count = c.s.initial.value("count", 10);
  const int jumps = c.s.initial.value("jumps", 6);
  const double amp = c.s.initial.value("amplitude", 1.0);
  std::vector<Pair> out;
  for (int k = 0; k < count; ++k) {
    const auto u0 = random_bv_field(rng, jumps, amp);
    const auto v0 = random_bv_field(rng, jumps, amp);
    const auto g = shared_flux(f, delta, {&u0, &v0});
    out.push_back({front_tracking_evolve(g, u0, t_max), front_tracking_evolve(g, v0, t_max)});
  }
  return out;
}

void run_classification_scan(Context& c) {
  const auto f = scalar_flux(c.s.flux);
  const double delta = c.s.param("delta", 0.01), t_max = c.s.param("t_max", 2.0);
  ScanReport total;
  total.worst_rarefaction_margin = -1.0;
  for (const auto& p : ensemble(c, f, delta, t_max)) {
    const auto r = scan_rarefaction_free(p.u, p.v, f);
    for (std::size_t k = 0; k < 4; ++k) total.counts[k] += r.counts[k];
    total.degenerate += r.degenerate;
    total.rarefaction_violations += r.rarefaction_violations;
    total.worst_rarefaction_margin = std::max(total.worst_rarefaction_margin, r.worst_rarefaction_margin);
    total.sampled_times += r.sampled_times;
    total.rarefaction_records.insert(total.rarefaction_records.end(), r.rarefaction_records.begin(),
                                     r.rarefaction_records.end());
  }
  write_json(c.artifact("scan.json"), to_json(total));
  c.check("no rarefaction-shock jumps", total.rarefaction_violations == 0,
          static_cast<double>(total.rarefaction_violations), 0);
  c.rep.measured["scan"] = to_json(total)["counts"];
}

void run_stability_ledger(Context& c) {
  const auto f = scalar_flux(c.s.flux);
  const double delta = c.s.param("delta", 0.01), t_max = c.s.param("t_max", 2.0);
  double worst_k = 0.0, worst_l1 = -INFINITY;
  std::size_t monotone_breaks = 0, rarefaction = 0;
  const auto pairs = ensemble(c, f, delta, t_max);
  char name[32];
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    DecayOptions opt;
    opt.itemize = false;
    const auto led = decay_terms_scalar(pairs[k].u, pairs[k].v, f, t_max, opt);
    std::snprintf(name, sizeof name, "ledger_%03zu.csv", k);
    write_ledger_csv(c.artifact(name), led);
    if (led.trivial) continue;
    worst_k = std::max(worst_k, led.max_k());
    rarefaction += led.rarefaction_windows;
    for (std::size_t i = 0; i < led.times.size(); ++i) {
      worst_l1 = std::max(worst_l1, led.l1[i] - (led.l1[0] * (1.0 + 1e-8) + 5.0 * delta));
      if (i > 0 && (led.d2[i] < led.d2[i - 1] || led.d3[i] < led.d3[i - 1])) ++monotone_breaks;
    }
  }
  c.check("K within 1 + 5 delta", worst_k <= 1.0 + 5.0 * delta, worst_k, 1.0 + 5.0 * delta);
  c.check("D2 and D3 nondecreasing", monotone_breaks == 0, static_cast<double>(monotone_breaks), 0);
  c.check("L1 contraction up to 5 delta", worst_l1 <= 0.0, worst_l1, 0.0);
  c.check("no rarefaction windows", rarefaction == 0, static_cast<double>(rarefaction), 0);
  c.rep.measured["K"] = worst_k;
}

void run_monotonicity(Context& c) {
  const auto f = system_flux(c.s.flux);
  const auto& in = c.s.initial;
  const Vec2 center = in.contains("center") ? system_state(in["center"], "center") : Vec2(1.0, 0.0);
  const double radius = in.value("radius", 0.3);
  const double eps_max = c.s.param("eps_max", 0.15);
  const int points = static_cast<int>(c.s.param("grid_points", 41));
  std::vector<double> grid;
  for (int k = 0; k < points; ++k) grid.push_back(-eps_max + 2.0 * eps_max * k / (points - 1));
  auto rng = c.seeds.stream("states");
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI), unit(0.0, 1.0);
  const int count = in.value("count", 100);
  CsvWriter w(c.artifact("monotonicity.csv"),
              {"sample", "family", "u1", "u2", "v1", "v2", "sign", "worst_margin", "lax_checks",
               "worst_lax_margin"});
  std::size_t sign_bad = 0, lax_bad = 0, lax_checks = 0;
  const double slack = 1e-12;
  for (int k = 0; k < count; ++k) {
    const double th1 = ang(rng), r1 = 0.5 * radius * std::sqrt(unit(rng));
    const Vec2 um = center + r1 * Vec2(std::cos(th1), std::sin(th1));
    const double th2 = ang(rng), r2 = (radius - eps_max - slack) * std::sqrt(unit(rng));
    const Vec2 v = um + r2 * Vec2(std::cos(th2), std::sin(th2));
    for (int fam = 1; fam <= 2; ++fam) {
      const auto rep = averaged_eigen_monotonicity(f, um, fam, v, grid, radius);
      if (rep.sign == 0) ++sign_bad;
      sign_bad += rep.sign_violations;
      lax_bad += rep.lax_violations;
      lax_checks += rep.lax_checks;
      w.row({static_cast<double>(k), static_cast<double>(fam), um(0), um(1), v(0), v(1),
             static_cast<double>(rep.sign), rep.worst_margin, static_cast<double>(rep.lax_checks),
             rep.worst_lax_margin});
    }
    if (k == 0) write_hugoniot_csv(c.artifact("hugoniot_1.csv"), hugoniot_curve(f, um, 1, grid));
  }
  c.check("constant derivative sign", sign_bad == 0, static_cast<double>(sign_bad), 0);
  c.check("Lax shocks decrease the averaged eigenvalue", lax_bad == 0, static_cast<double>(lax_bad), 0);
  c.rep.measured["lax_checks"] = lax_checks;
}

Mat2 dh_fn(const Vec2& u) {
  const double e = std::exp(0.5 * u(0) * u(1));
  Mat2 a;
  a << std::cos(u(0)) * u(1), std::sin(u(0)), 0.5 * u(1) * e, 0.5 * u(0) * e;
  return a;
}

void run_dlm(Context& c) {
  const int count = c.s.initial.value("count", 20);
  const double amp = c.s.initial.value("amplitude", 1.0);
  const int quad = static_cast<int>(c.s.param("quad_order", 32));
  auto rng = c.seeds.stream("jumps");
  std::uniform_real_distribution<double> d(-amp, amp);
  std::vector<PathFamily> paths{PathFamily::straightline()};
  for (auto& p : curved_test_paths()) paths.push_back(p);

  double grad_spread = 0.0;
  for (int k = 0; k < count; ++k) {
    const Vec2 a(d(rng), d(rng)), b(d(rng), d(rng));
    std::vector<Vec2> atoms;
    for (const auto& p : paths) atoms.push_back(path_integral(dh_fn, p, a, b, quad));
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      for (std::size_t j = i + 1; j < atoms.size(); ++j) {
        grad_spread = std::max(grad_spread, (atoms[i] - atoms[j]).norm());
      }
    }
  }
  c.check("gradient products are path independent", grad_spread <= 1e-10, grad_spread, 1e-10);

  const MatrixField non_gradient = [](const Vec2& u) -> Mat2 {
    Mat2 a;
    a << u(1), 0.0, 0.0, 0.0;
    return a;
  };
  const auto quadratic = PathFamily::user("quadratic-first", [](double s, const Vec2& l, const Vec2& r) {
    const Vec2 dd = r - l;
    return Vec2(l(0) + s * s * dd(0), l(1) + s * dd(1));
  });
  const SystemField jump({0.0}, {Vec2(0, 0), Vec2(1, 1)});
  const auto straight = nc_product(non_gradient, jump, PathFamily::straightline(), quad);
  const auto curved = nc_product(non_gradient, jump, quadratic, quad);
  const double witness = std::abs(curved.atoms[0].mass(0) - straight.atoms[0].mass(0));
  c.check("non-gradient path dependence", witness >= 0.1, witness, 0.1);
  write_json(c.artifact("products.json"),
             {{"straightline", to_json(straight)}, {"quadratic", to_json(curved)}});

  const auto f = fluxes::p_system(2.0);
  std::uniform_real_distribution<double> w(0.8, 1.3), v(-0.3, 0.3), lam(-2.0, 2.0);
  double rh = 0.0;
  for (int k = 0; k < count; ++k) {
    const Vec2 a(w(rng), v(rng));
    const Vec2 b = a + 0.2 * Vec2(v(rng), v(rng));
    const double l = lam(rng);
    const Vec2 classical = -l * (b - a) + f(b) - f(a);
    for (const auto& p : paths) {
      rh = std::max(rh, (generalized_hugoniot_residual(f.jacobian, p, a, b, l, quad) - classical).norm());
    }
  }
  c.check("conservative generalized Hugoniot equals Rankine-Hugoniot", rh <= 1e-10, rh, 1e-10);

  const auto m = model_nc_system();
  std::uniform_real_distribution<double> small(-0.2, 0.2);
  double worst = 0.0;
  std::size_t non_lax = 0;
  for (int k = 0; k < count; ++k) {
    const Vec2 ul(small(rng), small(rng)), ur(small(rng), small(rng));
    for (const auto& wv : solve_riemann_system(m, ul, ur).waves) {
      if (!wv.shock) continue;
      worst = std::max(worst, wv.residual);
      if (!wv.lax) ++non_lax;
    }
  }
  c.check("nonconservative Riemann shock residuals", worst <= 1e-10, worst, 1e-10);
  c.check("nonconservative Riemann shocks are Lax", non_lax == 0, static_cast<double>(non_lax), 0);
}

void run_superposition(Context& c) {
  const auto& in = c.s.initial;
  if (in["type"] == "triple") {
    const auto t = conservative_triple(in.value("a", 0.3), in.value("v_left", 0.0));
    const auto rep = superposition_check(fluxes::p_system_inflection(), t);
    write_json(c.artifact("superposition.json"), to_json(rep));
    c.check("conservative composite relation", rep.composite_residual <= 1e-12,
            rep.composite_residual, 1e-12);
    return;
  }
  const auto m = model_nc_system();
  const Vec2 ul = in.contains("u_l") ? system_state(in["u_l"], "u_l") : Vec2(0.0, 0.0);
  const auto t = nonconservative_triple(m, ul, in.value("eps1", 1.0));
  const auto rep = superposition_check(m, t);
  write_json(c.artifact("superposition.json"), to_json(rep));
  c.check("pairwise relations", std::max(rep.left_residual, rep.right_residual) <= 1e-10,
          std::max(rep.left_residual, rep.right_residual), 1e-10);
  c.check("nonconservative composite relation fails", rep.composite_residual > 1e-4,
          rep.composite_residual, 1e-4);
}

}  // namespace

void run_kind(Context& c) {
  const auto& k = c.s.kind;
  if (k == "riemann") return run_riemann(c);
  if (k == "front-tracking") return run_front_tracking(c);
  if (k == "glimm") return run_glimm(c);
  if (k == "linear-transport") return run_linear_transport(c);
  if (k == "classification-scan") return run_classification_scan(c);
  if (k == "stability-ledger") return run_stability_ledger(c);
  if (k == "monotonicity") return run_monotonicity(c);
  if (k == "dlm") return run_dlm(c);
  if (k == "superposition") return run_superposition(c);
  throw InvalidArgument("unknown kind " + k);
}

}  // namespace linstab::detail
