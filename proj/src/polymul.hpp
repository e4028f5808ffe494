#pragma once

// Truncated polynomial products used by ps_mul. All routines return the
// first n coefficients of a*b.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "halfint/coeff_ring.hpp"

namespace halfint::polymul {

std::vector<mpz_class> schoolbook(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                  std::size_t n);
// Iterates only over the nonzero entries of `sparse`.
std::vector<mpz_class> sparse(std::span<const mpz_class> sparse, std::span<const mpz_class> dense,
                              std::size_t n);
// Kronecker substitution: evaluate both operands at 2^s for a slot width s
// large enough to hold every product coefficient, multiply the two integers
// with GMP, and read the coefficients back off the bit slots.
std::vector<mpz_class> kronecker(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                 std::size_t n);

std::vector<std::uint64_t> schoolbook(std::span<const std::uint64_t> a,
                                      std::span<const std::uint64_t> b, std::size_t n,
                                      const CoeffRing& ring);
std::vector<std::uint64_t> sparse(std::span<const std::uint64_t> sparse,
                                  std::span<const std::uint64_t> dense, std::size_t n,
                                  const CoeffRing& ring);
std::vector<std::uint64_t> kronecker(std::span<const std::uint64_t> a,
                                     std::span<const std::uint64_t> b, std::size_t n,
                                     const CoeffRing& ring);

}  // namespace halfint::polymul
