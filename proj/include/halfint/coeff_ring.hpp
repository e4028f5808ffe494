#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace halfint {

// Coefficient domain shared by series and matrices.
//
// Modular rings keep residues in a machine word, so the modulus (p or p^m)
// must stay below 2^62.
class CoeffRing {
 public:
  enum class Kind { ExactRational, PrimeField, FixedPadic };

  static CoeffRing rationals() { return CoeffRing(); }
  static CoeffRing prime_field(std::uint64_t p);
  static CoeffRing fixed_padic(std::uint64_t p, unsigned m);

  // "q", "fp:<p>" or "padic:<p>:<m>".
  static CoeffRing parse(std::string_view text);
  std::string descriptor() const;

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::ExactRational; }
  bool is_modular() const { return kind_ != Kind::ExactRational; }
  bool is_field() const { return kind_ != Kind::FixedPadic; }

  std::uint64_t prime() const { return p_; }
  unsigned exponent() const { return m_; }
  // p^m for modular rings, 0 for the rationals.
  std::uint64_t modulus() const { return modulus_; }

  friend bool operator==(const CoeffRing&, const CoeffRing&) = default;

  // Residue arithmetic on canonical representatives in [0, modulus).
  std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + modulus_ - b;
  }
  std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % modulus_);
  }
  std::uint64_t neg_mod(std::uint64_t a) const {
    return a == 0 ? 0 : modulus_ - a;
  }
  // Throws NonInvertibleElement when a shares a factor with the modulus.
  std::uint64_t inv_mod(std::uint64_t a) const;
  std::uint64_t reduce(const mpz_class& x) const;
  // Image of a rational; throws NonInvertibleDenominator if p | den.
  std::uint64_t reduce(const mpq_class& x) const;

 private:
  CoeffRing() = default;

  Kind kind_ = Kind::ExactRational;
  std::uint64_t p_ = 0;
  unsigned m_ = 0;
  std::uint64_t modulus_ = 0;
};

bool is_prime(std::uint64_t n);

// An element of a CoeffRing in canonical form: a reduced fraction with
// positive denominator, or the least nonnegative residue.
class RingElem {
 public:
  RingElem(const CoeffRing& ring, const mpq_class& value);
  RingElem(const CoeffRing& ring, long value)
      : RingElem(ring, mpq_class(value)) {}
  static RingElem from_residue(const CoeffRing& ring, std::uint64_t residue);
  static RingElem zero(const CoeffRing& ring) { return RingElem(ring, 0L); }
  static RingElem one(const CoeffRing& ring) { return RingElem(ring, 1L); }

  const CoeffRing& ring() const { return ring_; }
  const mpq_class& rational() const { return rat_; }
  std::uint64_t residue() const { return res_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;

  // "num/den", "num" or the residue in decimal.
  std::string to_string() const;
  static RingElem parse(const CoeffRing& ring, std::string_view text);

  friend bool operator==(const RingElem& a, const RingElem& b);

 private:
  RingElem(const CoeffRing& ring) : ring_(ring) {}

  CoeffRing ring_;
  mpq_class rat_;          // used by ExactRational
  std::uint64_t res_ = 0;  // used by modular rings
};

RingElem ring_embed(const CoeffRing& ring, const mpq_class& x);
RingElem ring_add(const RingElem& a, const RingElem& b);
RingElem ring_sub(const RingElem& a, const RingElem& b);
RingElem ring_mul(const RingElem& a, const RingElem& b);
RingElem ring_neg(const RingElem& a);
RingElem ring_inv(const RingElem& a);

inline RingElem operator+(const RingElem& a, const RingElem& b) { return ring_add(a, b); }
inline RingElem operator-(const RingElem& a, const RingElem& b) { return ring_sub(a, b); }
inline RingElem operator*(const RingElem& a, const RingElem& b) { return ring_mul(a, b); }
inline RingElem operator-(const RingElem& a) { return ring_neg(a); }

}  // namespace halfint
