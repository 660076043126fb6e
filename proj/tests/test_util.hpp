#pragma once

#include <random>
#include <string>
#include <vector>

#include <lri/halfint.hpp>
#include <lri/spectrum.hpp>

namespace testutil {

inline std::mt19937& rng() {
  static std::mt19937 gen(20260809u);
  return gen;
}

// random half-integer magnitude in [0, jmax] (step 1/2)
inline lri::HalfInt random_j(int jmax_twice, std::mt19937& gen = rng()) {
  std::uniform_int_distribution<int> d(0, jmax_twice);
  return lri::half(d(gen));
}

// random valid projection for magnitude j
inline lri::HalfInt random_m(lri::HalfInt j, std::mt19937& gen = rng()) {
  std::uniform_int_distribution<int> d(0, j.twice());
  return lri::half(-j.twice() + 2 * d(gen));
}

inline double urand(double lo, double hi, std::mt19937& gen = rng()) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(gen);
}

inline int irand(int lo, int hi, std::mt19937& gen = rng()) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(gen);
}

struct RandomTableSpec {
  int levels = 5;
  int jmax_twice = 4;      // J magnitudes drawn from 0..jmax (doubled)
  bool half_integers = false;
  bool quadrupoles = false;
  bool polar = true;       // permanent (diagonal) dipoles where allowed
  double gap_lo = 0.25, gap_hi = 0.6;
};

/// Small random species table: ground level "g" at zero energy plus excited
/// levels with random reduced elements on every triangle-allowed pair.
inline lri::SpectrumTable random_table(const RandomTableSpec& spec,
                                       std::mt19937& gen = rng()) {
  using namespace lri;
  SpectrumTable t;
  t.name = "random";
  std::vector<LevelKey> keys;
  double energy = 0.0;
  for (int i = 0; i < spec.levels; ++i) {
    int tj = irand(0, spec.jmax_twice / 2, gen) * 2;
    if (spec.half_integers && irand(0, 1, gen)) tj += 1;
    LevelKey key{i == 0 ? "g" : "e" + std::to_string(i), half(tj)};
    t.add_level(key, energy);
    keys.push_back(key);
    energy += urand(spec.gap_lo, spec.gap_hi, gen);
  }
  std::vector<int> ranks{1};
  if (spec.quadrupoles) ranks.push_back(2);
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i; j < keys.size(); ++j)
      for (int l : ranks) {
        if (!triangle_ok(keys[i].J, l, keys[j].J)) continue;
        if (i == j && !spec.polar) continue;
        if (irand(0, 9, gen) == 0) continue; // leave a few elements off file
        double v = urand(0.2, 1.2, gen) * (irand(0, 1, gen) ? 1 : -1);
        t.add_reduced(keys[i], keys[j], l, v);
      }
  return t;
}

} // namespace testutil
