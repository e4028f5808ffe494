#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "halfint/coeff_ring.hpp"

namespace halfint {

// Bernoulli numbers with B_1 = -1/2.
mpq_class bernoulli(unsigned k);

// Generalised Bernoulli number B_k^chi for the primitive character mod 4,
// from sum_{a=1}^{4} chi(a) t e^{at} / (e^{4t} - 1) = sum_k B_k^chi t^k / k!.
mpq_class gen_bernoulli_chi4(unsigned k);

// Primitive Dirichlet character mod 4.
int chi4(std::int64_t n);

// Legendre symbol (a|p) for an odd prime p.
int legendre(std::int64_t a, std::uint64_t p);
// Kronecker symbol (a|p) for a prime p; for p = 2 this is (a|2) = 0 for even
// a, 1 for a = +-1 mod 8 and -1 for a = +-3 mod 8.
int kronecker_prime(std::int64_t a, std::uint64_t p);

// Generalised binomial coefficient x (x-1) ... (x-m+1) / m!.
mpq_class half_binomial(const mpq_class& x, unsigned m);

// sigma_r(n) = sum_{d | n} d^r, by trial division.
mpz_class sigma(unsigned r, std::uint64_t n);

enum class Character { Trivial, Chi4 };

inline int char_value(Character c, std::int64_t n) {
  return c == Character::Trivial ? 1 : chi4(n);
}

// Table t[n] = sum_{d | n} chi_d(d) chi_e(n/d) d^r for 1 <= n < count, with
// t[0] = 0, filled by a single pass over all (d, e) with d e < count.
std::vector<mpz_class> divisor_sum_table(unsigned r, std::size_t count, Character chi_d = Character::Trivial,
                                         Character chi_e = Character::Trivial);
// Same table reduced into a modular ring.
std::vector<std::uint64_t> divisor_sum_table_mod(unsigned r, std::size_t count, const CoeffRing& ring,
                                                 Character chi_d = Character::Trivial,
                                                 Character chi_e = Character::Trivial);

}  // namespace halfint
