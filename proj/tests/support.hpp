#pragma once

#include <random>
#include <vector>

#include <gmpxx.h>

#include "halfint/qseries.hpp"

namespace support {

inline std::vector<mpq_class> rationals_of(const halfint::QExpansion& f) {
  std::vector<mpq_class> out;
  for (std::size_t n = 0; n < f.prec(); ++n) out.push_back(f.coeff(n).rational());
  return out;
}

inline halfint::QExpansion from_ints(const halfint::CoeffRing& R, std::vector<long> v) {
  std::vector<mpz_class> z(v.begin(), v.end());
  return halfint::QExpansion::from_integers(R, std::move(z));
}

// Random series with entries num/den, |num| < 2^bits, optionally sparse.
inline halfint::QExpansion random_series(const halfint::CoeffRing& R, std::size_t prec, std::mt19937_64& rng,
                                         unsigned bits = 40, double density = 1.0, long den = 1) {
  std::vector<mpz_class> z(prec);
  std::uniform_real_distribution<double> u(0, 1);
  for (auto& x : z) {
    if (u(rng) > density) continue;
    mpz_class v = static_cast<unsigned long>(rng() >> (64 - std::min(bits, 63u)));
    if (bits > 63) v = (v << 40) + static_cast<unsigned long>(rng() >> 24);
    x = rng() % 2 ? v : mpz_class(-v);
  }
  return halfint::QExpansion::from_integers(R, std::move(z), den);
}

}  // namespace support
