#include <doctest.h>

#include "halfint/bases.hpp"
#include "halfint/errors.hpp"
#include "halfint/forms.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace halfint;
using support::from_ints;

namespace {

// theta^{2w - 4b} F2^b for 0 <= b <= w/2: spans the forms of integral
// weight w on Gamma0(4) with character chi^w.
std::vector<QExpansion> integral_weight_span(unsigned w, std::size_t prec, const CoeffRing& R) {
  std::vector<QExpansion> out;
  for (unsigned b = 0; 4 * b <= 2 * w; ++b)
    out.push_back(ps_mul(ps_pow(theta(prec, R), 2 * w - 4 * b), ps_pow(f2(prec, R), b)));
  return out;
}

bool in_span(std::vector<QExpansion> span, const QExpansion& f, std::size_t prec) {
  const std::size_t r = span_rank(span, prec);
  span.push_back(f);
  return span_rank(span, prec) == r;
}

}  // namespace

TEST_SUITE("forms") {
  const auto Q = CoeffRing::rationals();

  TEST_CASE("weights") {
    CHECK(HalfWeight::parse("13/2").k == 6);
    CHECK(HalfWeight::parse("1/2").k == 0);
    CHECK(HalfWeight{6}.to_string() == "13/2");
    CHECK(HalfWeight{6}.value() == mpq_class(13, 2));
    CHECK_THROWS_AS(HalfWeight::parse("6/2"), InvalidWeight);
    CHECK_THROWS_AS(HalfWeight::parse("6"), InvalidWeight);
    CHECK_THROWS_AS(HalfWeight::parse("13/4"), InvalidWeight);
    CHECK_THROWS_AS(HalfWeight::parse("x/2"), InvalidWeight);
  }

  TEST_CASE("theta and F2") {
    CHECK(theta(10, Q) == from_ints(Q, {1, 2, 0, 0, 2, 0, 0, 0, 0, 2}));
    CHECK(theta(1, Q) == from_ints(Q, {1}));
    const auto f = f2(30, Q);
    CHECK(f.coeff(0).is_zero());
    CHECK(f.coeff(1).rational() == 1);
    CHECK(f.coeff(2).is_zero());
    CHECK(f.coeff(3).rational() == 4);
    CHECK(f.coeff(5).rational() == 6);
    for (std::uint64_t n = 1; n < 30; ++n)
      CHECK(f.coeff(n).rational() == (n % 2 ? mpq_class(oracle::sigma(1, n)) : mpq_class(0)));
  }

  TEST_CASE("level one Eisenstein series") {
    const auto e4 = eis_level1(4, 10, Q, false);
    CHECK(e4.coeff(0).rational() == mpq_class(1, 240));
    CHECK(e4.coeff(1).rational() == 1);
    CHECK(e4.coeff(2).rational() == 9);
    CHECK(ps_truncate(eis_level1(4, 10, Q, true), 3) == from_ints(Q, {1, 240, 2160}));
    CHECK(ps_truncate(eis_level1(6, 10, Q, true), 3) == from_ints(Q, {1, -504, -16632}));
    CHECK_THROWS_AS(eis_level1(5, 10, Q, true), InvalidWeight);
    CHECK_THROWS_AS(eis_level1(2, 10, Q, true), InvalidWeight);
    const auto e12 = eis_level1(12, 50, Q, false);
    CHECK(e12.coeff(0).rational() == -oracle::bernoulli(12) / 24);
    for (std::uint64_t n = 1; n < 50; ++n) CHECK(e12.coeff(n).rational() == oracle::sigma(11, n));
  }

  TEST_CASE("Eisenstein series with the character mod 4") {
    const auto a = eis_char(1, CharSlot::OneChi, 10, Q);
    CHECK(a.coeff(0).rational() == mpq_class(1, 4));
    CHECK(a.coeff(1).rational() == 1);
    CHECK(a.coeff(2).rational() == 1);
    CHECK(a.coeff(5).rational() == 2);
    const auto b = eis_char(3, CharSlot::ChiOne, 10, Q);
    CHECK(b.coeff(0).is_zero());
    CHECK(b.coeff(1).rational() == 1);
    CHECK(b.coeff(2).rational() == 4);
    CHECK(b.coeff(3).rational() == 8);
    for (unsigned k : {1u, 3u, 5u, 7u}) CHECK(eis_char(k, CharSlot::ChiOne, 5, Q).coeff(0).is_zero());
    CHECK_THROWS_AS(eis_char(4, CharSlot::OneChi, 10, Q), InvalidWeight);
  }

  TEST_CASE("theta^6 from the two weight 3 Eisenstein series") {
    const std::size_t D = 300;
    const auto e1 = eis_char(3, CharSlot::OneChi, D, Q);
    const auto e2 = eis_char(3, CharSlot::ChiOne, D, Q);
    const auto r6 = oracle::square_reps(6, D);
    for (std::size_t n = 0; n < D; ++n)
      REQUIRE(16 * e2.coeff(n).rational() - 4 * e1.coeff(n).rational() == r6[n]);
  }

  TEST_CASE("character Eisenstein series lie in the span of theta and F2 products") {
    const std::size_t D = 120;
    for (unsigned k : {3u, 5u, 7u, 9u, 11u}) {
      const auto span = integral_weight_span(k, D, Q);
      CHECK(in_span(span, eis_char(k, CharSlot::OneChi, D, Q), D));
      CHECK(in_span(span, eis_char(k, CharSlot::ChiOne, D, Q), D));
    }
  }

  TEST_CASE("Cohen-Eisenstein series") {
    const auto h = cohen_eisenstein(2, 20, Q);
    CHECK(h.coeff(0).rational() == mpq_class(1, 120));
    for (unsigned k : {2u, 3u, 5u}) {
      const std::size_t D = 80;
      const auto H = cohen_eisenstein(k, D, Q);
      for (std::uint64_t n = 0; n < D; ++n) REQUIRE(H.coeff(n).rational() == oracle::cohen_h(k, n));
      CHECK(ps_truncate(cohen_eisenstein(k, 2 * D, Q), D) == H);
      const auto span = cohen_basis(HalfWeight{k}, D, Q).series();
      std::vector<QExpansion> s(span.begin(), span.end());
      CHECK(in_span(s, H, D));
    }
    const auto F = CoeffRing::prime_field(1000003);
    CHECK(cohen_eisenstein(5, 60, F) == ps_reduce(cohen_eisenstein(5, 60, Q), F));
    CHECK_THROWS_AS(cohen_eisenstein(4, 10, Q), InvalidWeight);
  }
}
