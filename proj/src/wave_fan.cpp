#include "linstab/wave_fan.hpp"

namespace linstab {

template struct WaveFan<double>;
template struct WaveFan<Vec2>;

}  // namespace linstab
