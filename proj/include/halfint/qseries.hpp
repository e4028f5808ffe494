#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "halfint/coeff_ring.hpp"

namespace halfint {

// Algorithm dispatch for series multiplication. Defaults are tuned on a
// single x86-64 core; the CLI exposes both knobs.
struct MulConfig {
  // Schoolbook convolution when the shorter operand has at most this many
  // coefficients.
  std::size_t schoolbook_max = 32;
  // Sparse path when an operand's fraction of nonzero coefficients is at most
  // this value.
  double sparse_density = 0.0005;
};

MulConfig mul_config();
void set_mul_config(const MulConfig& config);

// Counts series-by-series multiplications performed since construction.
// Backed by one process-wide atomic tally, so nested and concurrent scopes
// each see every multiplication issued while they are alive.
class MultCounter {
 public:
  MultCounter();
  std::uint64_t count() const;

 private:
  std::uint64_t start_;
};

// Truncated q-expansion a_0 + a_1 q + ... + a_{D-1} q^{D-1}.
//
// Over the rationals the coefficients are stored as an integer numerator
// vector over one positive common denominator, with gcd(den, content) = 1;
// modular rings store residues. Either way the representation is canonical.
class QExpansion {
 public:
  static QExpansion zero(const CoeffRing& ring, std::size_t prec);
  static QExpansion one(const CoeffRing& ring, std::size_t prec);
  // Coefficients nums[n] / den; den must be nonzero (and a unit for modular
  // rings).
  static QExpansion from_integers(const CoeffRing& ring, std::vector<mpz_class> nums,
                                  const mpz_class& den = 1);
  static QExpansion from_residues(const CoeffRing& ring, std::vector<std::uint64_t> residues);
  static QExpansion from_elems(const CoeffRing& ring, std::span<const RingElem> coeffs);

  const CoeffRing& ring() const { return ring_; }
  std::size_t prec() const { return prec_; }
  RingElem coeff(std::size_t n) const;
  std::vector<RingElem> coeffs() const;
  std::size_t nonzero_count() const { return nnz_; }
  bool is_zero() const { return nnz_ == 0; }
  bool coeff_is_zero(std::size_t n) const;

  // Raw storage. numerators()/denominator() are meaningful for the rationals,
  // residues() for modular rings.
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  const std::vector<std::uint64_t>& residues() const { return res_; }

  friend bool operator==(const QExpansion& a, const QExpansion& b);

 private:
  explicit QExpansion(const CoeffRing& ring) : ring_(ring) {}
  void canonicalize();
  void count_nonzero();

  CoeffRing ring_;
  std::size_t prec_ = 0;
  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
  std::vector<std::uint64_t> res_;
  std::size_t nnz_ = 0;

};

QExpansion ps_add(const QExpansion& f, const QExpansion& g);
QExpansion ps_sub(const QExpansion& f, const QExpansion& g);
QExpansion ps_neg(const QExpansion& f);
QExpansion ps_scale(const QExpansion& f, const RingElem& c);
QExpansion ps_mul(const QExpansion& f, const QExpansion& g);
QExpansion ps_inv(const QExpansion& f);
// q d/dq: a_n -> n a_n.
QExpansion ps_derive(const QExpansion& f);
// f(q^m); the result has precision m * prec(f).
QExpansion ps_vshift(const QExpansion& f, std::size_t m);
QExpansion ps_pow(const QExpansion& f, std::uint64_t e);
QExpansion ps_reduce(const QExpansion& f, const CoeffRing& ring);
QExpansion ps_truncate(const QExpansion& f, std::size_t prec);
// sum_j c[j] * f[j] at the minimum precision of the inputs.
QExpansion ps_linear_combination(std::span<const RingElem> c, std::span<const QExpansion> f);

}  // namespace halfint
