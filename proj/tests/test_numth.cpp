#include <doctest.h>

#include <random>

#include "halfint/numth.hpp"
#include "oracles.hpp"

using namespace halfint;

TEST_SUITE("numth") {
  TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == mpq_class(-1, 2));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli(4) == mpq_class(-1, 30));
    CHECK(bernoulli(12) == mpq_class(-691, 2730));
    for (unsigned k = 0; k <= 30; ++k) CHECK(bernoulli(k) == oracle::bernoulli(k));
  }

  TEST_CASE("generalised Bernoulli numbers for the character mod 4") {
    CHECK(gen_bernoulli_chi4(1) == mpq_class(-1, 2));
    CHECK(gen_bernoulli_chi4(3) == mpq_class(3, 2));
    CHECK(gen_bernoulli_chi4(5) == mpq_class(-25, 2));
    for (unsigned k = 1; k <= 20; ++k) {
      CHECK(gen_bernoulli_chi4(k) == oracle::gen_bernoulli_mod4(k));
      if (k % 2 == 0) CHECK(gen_bernoulli_chi4(k) == 0);
    }
  }

  TEST_CASE("divisor sums") {
    CHECK(sigma(1, 1) == 1);
    CHECK(sigma(1, 6) == 12);
    CHECK(sigma(3, 2) == 9);
    const auto t = divisor_sum_table(3, 10000);
    for (std::uint64_t n = 1; n < 10000; ++n) REQUIRE(t[n] == sigma(3, n));
    for (std::uint64_t n = 1; n < 300; ++n) CHECK(sigma(5, n) == oracle::sigma(5, n));
  }

  TEST_CASE("twisted divisor sums") {
    const auto t = divisor_sum_table(2, 200, Character::Chi4, Character::Trivial);
    const auto u = divisor_sum_table(2, 200, Character::Trivial, Character::Chi4);
    for (std::int64_t n = 1; n < 200; ++n) {
      mpz_class a = 0, b = 0;
      for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0) {
          a += chi4(d) * d * d;
          b += chi4(n / d) * d * d;
        }
      CHECK(t[n] == a);
      CHECK(u[n] == b);
    }
    const auto F = CoeffRing::prime_field(10007);
    const auto m = divisor_sum_table_mod(2, 200, F, Character::Chi4, Character::Trivial);
    for (std::size_t n = 1; n < 200; ++n) CHECK(m[n] == F.reduce(t[n]));
  }

  TEST_CASE("characters and symbols") {
    CHECK(chi4(1) == 1);
    CHECK(chi4(3) == -1);
    CHECK(chi4(2) == 0);
    CHECK(chi4(-1) == -1);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
      const std::int64_t a = static_cast<std::int64_t>(rng() % 2001) - 1000;
      const std::int64_t b = static_cast<std::int64_t>(rng() % 2001) - 1000;
      REQUIRE(chi4(a * b) == chi4(a) * chi4(b));
    }
    CHECK(legendre(1, 3) == 1);
    CHECK(legendre(3, 5) == -1);
    CHECK(legendre(10, 5) == 0);
    for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u, 101u})
      for (std::int64_t a = -30; a <= 30; ++a) CHECK(legendre(a, p) == oracle::legendre(a, p));
    for (std::int64_t a = -30; a <= 30; ++a) CHECK(kronecker_prime(a, 2) == oracle::kronecker(a, 2));
  }

  TEST_CASE("generalised binomials") {
    CHECK(half_binomial(5, 2) == 10);
    CHECK(half_binomial(mpq_class(1, 2), 1) == mpq_class(1, 2));
    CHECK(half_binomial(mpq_class(-1, 2), 2) == mpq_class(3, 8));
    CHECK(half_binomial(mpq_class(7, 3), 0) == 1);
    for (unsigned n = 0; n < 20; ++n)
      for (unsigned m = 0; m <= n; ++m) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), n, m);
        CHECK(half_binomial(n, m) == b);
      }
  }
}
