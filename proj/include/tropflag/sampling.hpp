#pragma once

#include <random>
#include <vector>

#include "tropflag/semifield.hpp"

namespace tropflag {

using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Small random elements; `radius` bounds exponents and integer magnitudes.
template <Semifield K>
K random_element(Rng& rng, long radius = 3);

template <>
inline TropicalInt random_element<TropicalInt>(Rng& rng, long radius) {
  return TropicalInt(uniform_int(rng, -radius, radius));
}

template <>
inline PosRational random_element<PosRational>(Rng& rng, long radius) {
  long hi = std::max(2L, 3 * radius);
  return PosRational(mpq_class(uniform_int(rng, 1, hi), uniform_int(rng, 1, hi)));
}

template <>
inline PosRatFun random_element<PosRatFun>(Rng& rng, long radius) {
  long r = std::max(1L, radius);
  std::vector<mpq_class> num{mpq_class(uniform_int(rng, 1, 4)), mpq_class(uniform_int(rng, -2, 3))};
  std::vector<mpq_class> den{mpq_class(uniform_int(rng, 1, 4)), mpq_class(uniform_int(rng, 0, 2))};
  return PosRatFun(RationalFunction::from_parts(uniform_int(rng, -r, r), Polynomial(std::move(num)), Polynomial(std::move(den))));
}

template <Semifield K>
Ext<K> random_ext(Rng& rng, long radius = 3, double absent_prob = 0.2) {
  if (std::bernoulli_distribution(absent_prob)(rng)) return Ext<K>();
  return random_element<K>(rng, radius);
}

}  // namespace tropflag
