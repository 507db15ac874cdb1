#ifndef LINSTAB_FIELD_HPP_
#define LINSTAB_FIELD_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "linstab/errors.hpp"
#include "linstab/flux.hpp"

namespace linstab {

// Absolute tolerance below which adjacent field values count as equal.
inline constexpr double kValueTolerance = 1e-14;

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Vec2& x) { return x.norm(); }

template <class T>
T zero_state();
template <>
inline double zero_state<double>() { return 0.0; }
template <>
inline Vec2 zero_state<Vec2>() { return Vec2::Zero(); }

template <class T>
int state_dimension();
template <>
inline int state_dimension<double>() { return 1; }
template <>
inline int state_dimension<Vec2>() { return 2; }

// Piecewise-constant function on R. With breakpoints b_0 < ... < b_{n-1}
// there are n + 1 values: values[0] on (-inf, b_0), values[i] on
// (b_{i-1}, b_i), values[n] on (b_{n-1}, +inf).
template <class T>
class PiecewiseConstant {
 public:
  enum class Merge { kYes, kNo };

  PiecewiseConstant() : values_{zero_state<T>()} {}
  explicit PiecewiseConstant(T constant) : values_{constant} {}

  PiecewiseConstant(std::vector<double> breakpoints, std::vector<T> values,
                    Merge merge = Merge::kYes)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (values_.size() != breakpoints_.size() + 1) {
      throw InvalidArgument("piecewise field needs one more value than breakpoints");
    }
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
      if (!(breakpoints_[i] > breakpoints_[i - 1])) {
        throw InvalidArgument("breakpoints must be strictly increasing");
      }
    }
    for (double b : breakpoints_) {
      if (!std::isfinite(b)) throw InvalidArgument("breakpoints must be finite");
    }
    if (merge == Merge::kYes) merge_equal_neighbors();
  }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<T>& values() const { return values_; }
  std::size_t jumps() const { return breakpoints_.size(); }
  const T& far_left() const { return values_.front(); }
  const T& far_right() const { return values_.back(); }

  // Value on the open interval containing x; at a breakpoint, the right value.
  const T& operator()(double x) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
  }
  const T& left_limit(double x) const {
    const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
  }

  template <class Fn>
  auto map(Fn&& fn) const {
    using R = decltype(fn(values_.front()));
    std::vector<R> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(fn(v));
    return PiecewiseConstant<R>(breakpoints_, std::move(out));
  }

 private:
  void merge_equal_neighbors() {
    std::vector<double> b;
    std::vector<T> v{values_.front()};
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
      if (magnitude(values_[i + 1] - v.back()) > kValueTolerance) {
        b.push_back(breakpoints_[i]);
        v.push_back(values_[i + 1]);
      }
    }
    breakpoints_ = std::move(b);
    values_ = std::move(v);
  }

  std::vector<double> breakpoints_;
  std::vector<T> values_;
};

using ScalarField = PiecewiseConstant<double>;
using SystemField = PiecewiseConstant<Vec2>;

// Sorted union of breakpoints of several fields.
template <class... Fields>
std::vector<double> merged_breakpoints(const Fields&... fields) {
  std::vector<double> all;
  (all.insert(all.end(), fields.breakpoints().begin(), fields.breakpoints().end()), ...);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

// Exact integral of g(u(x), v(x)) over R on the merged partition; the
// integrand must vanish on both far fields.
template <class T, class Fn>
double integrate_pair(const PiecewiseConstant<T>& u, const PiecewiseConstant<T>& v,
                      Fn&& g) {
  const auto cuts = merged_breakpoints(u, v);
  double sum = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i - 1] + cuts[i]);
    sum += g(u(mid), v(mid)) * (cuts[i] - cuts[i - 1]);
  }
  return sum;
}

template <class T>
double l1_distance(const PiecewiseConstant<T>& u, const PiecewiseConstant<T>& v) {
  if (magnitude(u.far_left() - v.far_left()) > kValueTolerance ||
      magnitude(u.far_right() - v.far_right()) > kValueTolerance) {
    throw DivergentIntegral("l1_distance: far-field values differ");
  }
  return integrate_pair(u, v, [](const T& a, const T& b) { return magnitude(a - b); });
}

template <class T>
double total_variation(const PiecewiseConstant<T>& u) {
  double tv = 0.0;
  for (std::size_t i = 1; i < u.values().size(); ++i) {
    tv += magnitude(u.values()[i] - u.values()[i - 1]);
  }
  return tv;
}

// Integral of u over [a, b].
inline double integral_over(const ScalarField& u, double a, double b) {
  std::vector<double> cuts{a};
  for (double x : u.breakpoints()) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  double sum = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    sum += u(0.5 * (cuts[i - 1] + cuts[i])) * (cuts[i] - cuts[i - 1]);
  }
  return sum;
}

inline double sup_norm(const ScalarField& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

template <class T>
struct Atom {
  double x = 0.0;
  T mass = zero_state<T>();
  // Set when the atom sits exactly on a jump of the coefficient field.
  bool on_jump = false;
};

// Bounded measure: piecewise-constant density plus Dirac atoms.
template <class T>
struct Measure {
  PiecewiseConstant<T> bv;
  std::vector<Atom<T>> atoms;

  // int |bv| + sum |mass|; requires bv to vanish at infinity.
  double mass_norm() const {
    if (magnitude(bv.far_left()) > kValueTolerance ||
        magnitude(bv.far_right()) > kValueTolerance) {
      throw DivergentIntegral("measure density does not vanish at infinity");
    }
    const PiecewiseConstant<T> zero;
    double total = integrate_pair(bv, zero, [](const T& a, const T&) { return magnitude(a); });
    for (const auto& a : atoms) total += magnitude(a.mass);
    return total;
  }

  T total_mass() const {
    T total = zero_state<T>();
    const auto& b = bv.breakpoints();
    for (std::size_t i = 1; i < b.size(); ++i) total += bv.values()[i] * (b[i] - b[i - 1]);
    for (const auto& a : atoms) total += a.mass;
    return total;
  }
};

using ScalarMeasure = Measure<double>;

}  // namespace linstab

#endif  // LINSTAB_FIELD_HPP_
