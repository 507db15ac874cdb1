#include "linstab/scalar_riemann.hpp"

#include <algorithm>
#include <cmath>

#include "linstab/envelope.hpp"

namespace linstab {
namespace {

double chord(const ScalarFlux& f, double a, double b) { return (f(b) - f(a)) / (b - a); }

Wave<double> shock(const ScalarFlux& f, double left, double right) {
  const double s = chord(f, left, right);
  return {WaveKind::kShock, left, right, s, s, 1};
}

Wave<double> fan(const ScalarFlux& f, double left, double right) {
  return {WaveKind::kRarefaction, left, right, f.df(left), f.df(right), 1};
}

// Root of h(u) = f'(u)(u - p) - (f(u) - f(p)) near `guess`, i.e. the point
// where the chord from p touches the graph. Falls back to the guess when the
// bracket shows no sign change.
double refine_tangency(const ScalarFlux& f, double p, double guess, double width) {
  auto h = [&](double u) { return f.df(u) * (u - p) - (f(u) - f(p)); };
  double a = guess - width, b = guess + width;
  // Keep the bracket on the guess's side of p.
  if (guess > p) a = std::max(a, p + 0.5 * (guess - p));
  if (guess < p) b = std::min(b, p + 0.5 * (guess - p));
  double ha = h(a), hb = h(b);
  if (!(ha * hb < 0.0)) return guess;
  for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    const double m = 0.5 * (a + b);
    const double hm = h(m);
    if (hm == 0.0) return m;
    if ((hm < 0.0) == (ha < 0.0)) {
      a = m;
      ha = hm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

ScalarFan general_solve(const ScalarFlux& f, double u_l, double u_r, int grid) {
  const bool increasing = u_l < u_r;
  const double lo = std::min(u_l, u_r), hi = std::max(u_l, u_r);
  const auto env = convex_envelope(f, lo, hi,
                                   increasing ? EnvelopeSide::kLower : EnvelopeSide::kUpper, grid);
  const double du = (hi - lo) / (grid - 1);
  // Hull vertices in traversal order (u_l first).
  std::vector<double> path = env.nodes;
  if (!increasing) std::reverse(path.begin(), path.end());

  struct Segment {
    bool is_shock;
    double a, b;
  };
  std::vector<Segment> segs;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const bool is_shock = std::abs(path[k] - path[k - 1]) > 1.5 * du;
    if (!is_shock && !segs.empty() && !segs.back().is_shock) {
      segs.back().b = path[k];
    } else {
      segs.push_back({is_shock, path[k - 1], path[k]});
    }
  }
  // Refine interior shock endpoints that touch a rarefaction segment.
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (!segs[k].is_shock) continue;
    const bool a_is_data = segs[k].a == u_l;
    const bool b_is_data = segs[k].b == u_r;
    if (a_is_data && !b_is_data) {
      const double t = refine_tangency(f, segs[k].a, segs[k].b, 2.0 * du);
      segs[k].b = t;
      if (k + 1 < segs.size()) segs[k + 1].a = t;
    } else if (b_is_data && !a_is_data) {
      const double t = refine_tangency(f, segs[k].b, segs[k].a, 2.0 * du);
      segs[k].a = t;
      if (k > 0) segs[k - 1].b = t;
    }
  }
  ScalarFan out;
  for (const auto& s : segs) {
    if (s.a == s.b) continue;
    out.waves.push_back(s.is_shock ? shock(f, s.a, s.b) : fan(f, s.a, s.b));
  }
  // Contact shocks share their speed with the neighbouring fan edge.
  for (std::size_t k = 1; k < out.waves.size(); ++k) {
    auto& a = out.waves[k - 1];
    auto& b = out.waves[k];
    if (a.kind == WaveKind::kShock && b.kind == WaveKind::kRarefaction) {
      b.speed_lo = std::max(b.speed_lo, a.speed_hi);
    } else if (a.kind == WaveKind::kRarefaction && b.kind == WaveKind::kShock) {
      a.speed_hi = std::min(a.speed_hi, b.speed_lo);
    }
  }
  return out;
}

}  // namespace

ScalarFan solve_riemann_scalar(const ScalarFlux& f, double u_l, double u_r, int grid) {
  ScalarFan out;
  if (u_l == u_r) return out;
  switch (f.convexity) {
    case Convexity::kConvex:
      out.waves.push_back(u_l > u_r ? shock(f, u_l, u_r) : fan(f, u_l, u_r));
      return out;
    case Convexity::kConcave:
      out.waves.push_back(u_l < u_r ? shock(f, u_l, u_r) : fan(f, u_l, u_r));
      return out;
    case Convexity::kGeneral:
      break;
  }
  return general_solve(f, u_l, u_r, grid);
}

double sample_fan(const ScalarFan& fan, const ScalarFlux& f, double u_l, double xi) {
  double state = u_l;
  for (const auto& w : fan.waves) {
    if (xi < w.speed_lo) return state;
    if (w.kind == WaveKind::kRarefaction && xi < w.speed_hi) {
      // f' is monotone across the fan; bisect f'(u) = xi.
      double a = w.left, b = w.right;
      const double fa = f.df(a) - xi;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f.df(m) - xi;
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
        } else {
          b = m;
        }
        if (std::abs(b - a) < 1e-15) break;
      }
      return 0.5 * (a + b);
    }
    state = w.right;
  }
  return state;
}

bool oleinik_admissible(const ScalarFlux& f, double u_minus, double u_plus, int samples,
                        double tol) {
  if (u_minus == u_plus) return true;
  const double s = chord(f, u_minus, u_plus);
  const double scale = 1.0 + std::abs(f(u_minus)) + std::abs(f(u_plus));
  for (int k = 1; k <= samples; ++k) {
    const double u = u_minus + (u_plus - u_minus) * k / (samples + 1.0);
    const double gap = f(u_minus) + s * (u - u_minus) - f(u);  // chord minus graph
    if (u_minus > u_plus && gap < -tol * scale) return false;
    if (u_minus < u_plus && gap > tol * scale) return false;
  }
  return true;
}

}  // namespace linstab
