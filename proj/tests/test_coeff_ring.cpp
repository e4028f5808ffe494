#include <doctest.h>

#include "halfint/coeff_ring.hpp"
#include "halfint/errors.hpp"

using namespace halfint;

TEST_SUITE("coeff_ring") {
  TEST_CASE("embedding reduces fractions and inverts denominators") {
    const auto Q = CoeffRing::rationals();
    CHECK(ring_embed(Q, mpq_class(2, 4)).to_string() == "1/2");
    CHECK(ring_embed(CoeffRing::prime_field(5), mpq_class(1, 2)).residue() == 3);
    CHECK(ring_embed(CoeffRing::fixed_padic(5, 2), mpq_class(1, 2)).residue() == 13);
    CHECK_THROWS_AS(ring_embed(CoeffRing::prime_field(5), mpq_class(1, 10)), NonInvertibleDenominator);
  }

  TEST_CASE("arithmetic") {
    const auto Q = CoeffRing::rationals();
    CHECK(ring_add(RingElem(Q, mpq_class(1, 3)), RingElem(Q, mpq_class(1, 6))) == RingElem(Q, mpq_class(1, 2)));
    const auto F7 = CoeffRing::prime_field(7);
    CHECK(ring_mul(RingElem(F7, 3L), RingElem(F7, 5L)).residue() == 1);
    const auto Z27 = CoeffRing::fixed_padic(3, 3);
    CHECK_THROWS_AS(ring_inv(RingElem(Z27, 9L)), NonInvertibleElement);
    CHECK(ring_mul(ring_inv(RingElem(Z27, 2L)), RingElem(Z27, 2L)).is_one());
    CHECK(ring_neg(RingElem(F7, 3L)).residue() == 4);
    CHECK_THROWS_AS(ring_add(RingElem(F7, 1L), RingElem(Q, 1L)), RingMismatch);
  }

  TEST_CASE("construction checks") {
    CHECK_THROWS_AS(CoeffRing::prime_field(9), InvalidRing);
    CHECK_THROWS_AS(CoeffRing::prime_field(2), InvalidRing);
    CHECK_THROWS_AS(CoeffRing::fixed_padic(3, 40), InvalidRing);
    CHECK_NOTHROW(CoeffRing::prime_field(2147483647));
    CHECK_FALSE(CoeffRing::fixed_padic(3, 2).is_field());
  }

  TEST_CASE("descriptors round-trip") {
    for (const char* d : {"q", "fp:101", "padic:3:5"}) CHECK(CoeffRing::parse(d).descriptor() == d);
    CHECK_THROWS_AS(CoeffRing::parse("fp:x"), InvalidRing);
    CHECK_THROWS_AS(CoeffRing::parse("zz"), InvalidRing);
  }

  TEST_CASE("element text round-trips and rejects non-canonical input") {
    const auto Q = CoeffRing::rationals();
    const auto F = CoeffRing::prime_field(101);
    CHECK(RingElem::parse(Q, "-7/12") == RingElem(Q, mpq_class(-7, 12)));
    CHECK_THROWS_AS(RingElem::parse(Q, "2/4"), ParseError);
    CHECK(RingElem::parse(F, "100").residue() == 100);
    CHECK_THROWS_AS(RingElem::parse(F, "101"), ParseError);
    CHECK_THROWS_AS(RingElem::parse(F, "1/2"), ParseError);
  }

  TEST_CASE("mod-p arithmetic matches rational arithmetic then reduction") {
    const auto Q = CoeffRing::rationals();
    const auto F = CoeffRing::prime_field(1000003);
    for (long a = -20; a <= 20; a += 3)
      for (long b = 1; b <= 30; b += 7) {
        const mpq_class x(a, b), y(b, 7);
        const RingElem rq = RingElem(Q, mpq_class(x)) * RingElem(Q, mpq_class(y)) + RingElem(Q, mpq_class(x));
        const RingElem rf = RingElem(F, mpq_class(x)) * RingElem(F, mpq_class(y)) + RingElem(F, mpq_class(x));
        CHECK(ring_embed(F, rq.rational()) == rf);
      }
  }
}
