#include "linstab/glimm.hpp"

#include <algorithm>
#include <cmath>

#include "linstab/scalar_riemann.hpp"

namespace linstab {

double van_der_corput(std::uint64_t n) {
  double q = 0.0, bk = 0.5;
  while (n > 0) {
    if (n & 1U) q += bk;
    n >>= 1U;
    bk *= 0.5;
  }
  return q;
}

double SamplingSequence::next() {
  ++index_;
  if (kind_ == Kind::kVanDerCorput) return linstab::van_der_corput(index_);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double a = 0.0;
  while (a <= 0.0 || a >= 1.0) a = dist(rng_);
  return a;
}

namespace {

ScalarField cells_to_field(const std::vector<double>& u, double x_lo, double h) {
  std::vector<double> b, v{u.front()};
  for (std::size_t j = 1; j < u.size(); ++j) {
    if (u[j] != u[j - 1]) {
      b.push_back(x_lo + static_cast<double>(j) * h);
      v.push_back(u[j]);
    }
  }
  return ScalarField(std::move(b), std::move(v));
}

}  // namespace

GlimmResult glimm_evolve(const ScalarFlux& f, const ScalarField& u0, double h, double cfl,
                         SamplingSequence seq, double t_max) {
  if (!(h > 0.0)) throw InvalidArgument("glimm: h must be positive");
  if (!(cfl > 0.0 && cfl <= 0.5)) throw InvalidArgument("glimm: cfl must lie in (0, 1/2]");
  GlimmResult out;
  out.h = h;
  const auto [lo_it, hi_it] = std::minmax_element(u0.values().begin(), u0.values().end());
  double max_speed = 0.0;
  for (int k = 0; k <= 256; ++k) {
    const double u = *lo_it + (*hi_it - *lo_it) * k / 256.0;
    max_speed = std::max(max_speed, std::abs(f.df(u)));
  }
  out.dt = max_speed > 0.0 ? cfl * h / max_speed : cfl * h;
  out.times.push_back(0.0);
  out.snapshots.push_back(u0);
  if (u0.jumps() == 0) {
    for (double t = out.dt; t < t_max + 0.5 * out.dt; t += out.dt) {
      out.times.push_back(std::min(t, t_max));
      out.snapshots.push_back(u0);
    }
    return out;
  }
  const double margin = max_speed * t_max + 4.0 * h;
  const double x_lo = std::floor((u0.breakpoints().front() - margin) / h) * h;
  const double x_hi = std::ceil((u0.breakpoints().back() + margin) / h) * h;
  const auto cells = static_cast<std::size_t>(std::llround((x_hi - x_lo) / h));
  std::vector<double> u(cells), next(cells);
  for (std::size_t j = 0; j < cells; ++j) u[j] = u0(x_lo + (static_cast<double>(j) + 0.5) * h);

  double t = 0.0;
  while (t < t_max) {
    const double dt = std::min(out.dt, t_max - t);
    const double a = seq.next();
    next.front() = u.front();
    next.back() = u.back();
    for (std::size_t j = 1; j + 1 < cells; ++j) {
      const double ul = a <= 0.5 ? u[j - 1] : u[j];
      const double ur = a <= 0.5 ? u[j] : u[j + 1];
      if (ul == ur) {
        next[j] = ul;
        continue;
      }
      const double xi = a <= 0.5 ? a * h / dt : (a - 1.0) * h / dt;
      next[j] = sample_fan(solve_riemann_scalar(f, ul, ur), f, ul, xi);
    }
    std::swap(u, next);
    t = std::min(t + dt, t_max);
    if (t_max - t < 1e-14 * (1.0 + t_max)) t = t_max;
    out.times.push_back(t);
    out.snapshots.push_back(cells_to_field(u, x_lo, h));
  }
  return out;
}

}  // namespace linstab
