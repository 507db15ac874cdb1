#ifndef LINSTAB_WAVE_FAN_HPP_
#define LINSTAB_WAVE_FAN_HPP_

#include <vector>

#include "linstab/flux.hpp"

namespace linstab {

enum class WaveKind { kShock, kRarefaction };

// One wave of a Riemann fan. For shocks speed_lo == speed_hi.
template <class T>
struct Wave {
  WaveKind kind = WaveKind::kShock;
  T left{};
  T right{};
  double speed_lo = 0.0;
  double speed_hi = 0.0;
  int family = 1;

  double speed() const { return speed_lo; }
};

// Waves ordered left to right with weakly increasing speeds.
template <class T>
struct WaveFan {
  std::vector<Wave<T>> waves;

  bool empty() const { return waves.empty(); }
  bool speeds_monotone() const {
    for (std::size_t k = 0; k < waves.size(); ++k) {
      if (waves[k].speed_hi < waves[k].speed_lo) return false;
      if (k > 0 && waves[k].speed_lo < waves[k - 1].speed_hi) return false;
    }
    return true;
  }
};

using ScalarFan = WaveFan<double>;
using SystemFan = WaveFan<Vec2>;

}  // namespace linstab

#endif  // LINSTAB_WAVE_FAN_HPP_
