#ifndef LINSTAB_GLIMM_HPP_
#define LINSTAB_GLIMM_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "linstab/field.hpp"
#include "linstab/flux.hpp"

namespace linstab {

// Equidistributed sampling values a_n in (0,1) for the random-choice step.
class SamplingSequence {
 public:
  enum class Kind { kVanDerCorput, kSeededUniform };

  static SamplingSequence van_der_corput() { return SamplingSequence(Kind::kVanDerCorput, 0); }
  static SamplingSequence seeded_uniform(std::uint64_t seed) {
    return SamplingSequence(Kind::kSeededUniform, seed);
  }

  Kind kind() const { return kind_; }
  double next();

 private:
  SamplingSequence(Kind kind, std::uint64_t seed) : kind_(kind), rng_(seed) {}

  Kind kind_;
  std::uint64_t index_ = 0;
  std::mt19937_64 rng_;
};

// Base-2 radical inverse of n (n >= 1 gives values in (0,1)).
double van_der_corput(std::uint64_t n);

struct GlimmResult {
  double h = 0.0;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<ScalarField> snapshots;
};

// Random-choice scheme on cells of width h aligned so that x = 0 is a cell
// interface. The grid covers the data support padded by the domain of
// dependence; boundary cells hold their far-field values.
GlimmResult glimm_evolve(const ScalarFlux& f, const ScalarField& u0, double h, double cfl,
                         SamplingSequence seq, double t_max);

}  // namespace linstab

#endif  // LINSTAB_GLIMM_HPP_
