#include "polymul.hpp"

#include <algorithm>
#include <bit>

#include <gmp.h>

namespace halfint::polymul {

namespace {

constexpr std::size_t kLimbBits = GMP_NUMB_BITS;

std::size_t ceil_log2(std::size_t x) {
  return x <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(x - 1));
}

std::size_t limbs_for(std::size_t bits) { return (bits + kLimbBits - 1) / kLimbBits; }

// ORs xn limbs of x into buf starting at bit `off`. Slots never overlap, so
// OR is addition here.
void put_bits(mp_limb_t* buf, std::size_t off, const mp_limb_t* x, std::size_t xn) {
  const std::size_t w = off / kLimbBits;
  const unsigned s = off % kLimbBits;
  if (s == 0) {
    for (std::size_t j = 0; j < xn; ++j) buf[w + j] |= x[j];
  } else {
    for (std::size_t j = 0; j < xn; ++j) {
      buf[w + j] |= x[j] << s;
      buf[w + j + 1] |= x[j] >> (kLimbBits - s);
    }
  }
}

// Copies `nbits` bits starting at bit `off` of buf (length bufn) into out.
void get_bits(const mp_limb_t* buf, std::size_t bufn, std::size_t off, std::size_t nbits,
              mp_limb_t* out) {
  const std::size_t w = off / kLimbBits;
  const unsigned s = off % kLimbBits;
  const std::size_t nl = limbs_for(nbits);
  for (std::size_t j = 0; j < nl; ++j) {
    mp_limb_t lo = (w + j < bufn) ? buf[w + j] : 0;
    if (s == 0) {
      out[j] = lo;
    } else {
      mp_limb_t hi = (w + j + 1 < bufn) ? buf[w + j + 1] : 0;
      out[j] = (lo >> s) | (hi << (kLimbBits - s));
    }
  }
  if (nbits % kLimbBits) out[nl - 1] &= (mp_limb_t{1} << (nbits % kLimbBits)) - 1;
}

std::size_t max_bits(std::span<const mpz_class> a) {
  std::size_t b = 0;
  for (const auto& x : a)
    if (x != 0) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
  return b;
}

// Evaluates sum a_i 2^(slot*i) as a signed integer.
mpz_class pack_signed(std::span<const mpz_class> a, std::size_t slot) {
  const std::size_t nl = limbs_for(a.size() * slot) + 1;
  mpz_class pos, neg;
  mp_limb_t* p = mpz_limbs_write(pos.get_mpz_t(), nl);
  mp_limb_t* q = mpz_limbs_write(neg.get_mpz_t(), nl);
  std::fill(p, p + nl, 0);
  std::fill(q, q + nl, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const mpz_srcptr z = a[i].get_mpz_t();
    const int sg = mpz_sgn(z);
    if (sg == 0) continue;
    put_bits(sg > 0 ? p : q, i * slot, mpz_limbs_read(z), mpz_size(z));
    any_neg |= sg < 0;
  }
  mpz_limbs_finish(pos.get_mpz_t(), static_cast<mp_size_t>(nl));
  mpz_limbs_finish(neg.get_mpz_t(), static_cast<mp_size_t>(nl));
  if (any_neg) pos -= neg;
  return pos;
}

mpz_class pack_unsigned(std::span<const std::uint64_t> a, std::size_t slot) {
  static_assert(sizeof(mp_limb_t) == sizeof(std::uint64_t));
  const std::size_t nl = limbs_for(a.size() * slot) + 1;
  mpz_class out;
  mp_limb_t* p = mpz_limbs_write(out.get_mpz_t(), nl);
  std::fill(p, p + nl, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    mp_limb_t x = a[i];
    put_bits(p, i * slot, &x, 1);
  }
  mpz_limbs_finish(out.get_mpz_t(), static_cast<mp_size_t>(nl));
  return out;
}

std::span<const mpz_class> head(std::span<const mpz_class> a, std::size_t n) {
  return a.first(std::min(a.size(), n));
}

std::span<const std::uint64_t> head(std::span<const std::uint64_t> a, std::size_t n) {
  return a.first(std::min(a.size(), n));
}

}  // namespace

std::vector<mpz_class> schoolbook(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                  std::size_t n) {
  std::vector<mpz_class> c(n);
  a = head(a, n);
  b = head(b, n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const std::size_t lim = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < lim; ++j)
      mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return c;
}

std::vector<mpz_class> sparse(std::span<const mpz_class> sp, std::span<const mpz_class> dense,
                              std::size_t n) {
  return schoolbook(sp, dense, n);
}

std::vector<mpz_class> kronecker(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                 std::size_t n) {
  a = head(a, n);
  b = head(b, n);
  std::vector<mpz_class> c(n);
  const std::size_t ba = max_bits(a), bb = max_bits(b);
  if (ba == 0 || bb == 0) return c;
  // |c_i| < 2^(ba+bb+log2(min len)); one extra bit for the sign offset.
  const std::size_t slot = ba + bb + ceil_log2(std::min(a.size(), b.size())) + 2;
  const std::size_t out_len = std::min(n, a.size() + b.size() - 1);

  mpz_class prod = pack_signed(a, slot);
  {
    mpz_class pb = pack_signed(b, slot);
    prod *= pb;
  }
  const std::size_t total_bits = out_len * slot;
  mpz_fdiv_r_2exp(prod.get_mpz_t(), prod.get_mpz_t(), total_bits);
  {
    // Shift every digit by 2^(slot-1) so all slots are nonnegative.
    const std::size_t nl = limbs_for(total_bits) + 1;
    mpz_class offset;
    mp_limb_t* p = mpz_limbs_write(offset.get_mpz_t(), nl);
    std::fill(p, p + nl, 0);
    for (std::size_t i = 0; i < out_len; ++i) {
      const std::size_t bit = i * slot + slot - 1;
      p[bit / kLimbBits] |= mp_limb_t{1} << (bit % kLimbBits);
    }
    mpz_limbs_finish(offset.get_mpz_t(), static_cast<mp_size_t>(nl));
    prod += offset;
    mpz_fdiv_r_2exp(prod.get_mpz_t(), prod.get_mpz_t(), total_bits);
  }

  const mp_limb_t* buf = mpz_limbs_read(prod.get_mpz_t());
  const std::size_t bufn = mpz_size(prod.get_mpz_t());
  const std::size_t dl = limbs_for(slot);
  mpz_class half;
  mpz_setbit(half.get_mpz_t(), slot - 1);
  for (std::size_t i = 0; i < out_len; ++i) {
    mpz_ptr z = c[i].get_mpz_t();
    mp_limb_t* out = mpz_limbs_write(z, static_cast<mp_size_t>(dl));
    get_bits(buf, bufn, i * slot, slot, out);
    mpz_limbs_finish(z, static_cast<mp_size_t>(dl));
    mpz_sub(z, z, half.get_mpz_t());
  }
  return c;
}

std::vector<std::uint64_t> schoolbook(std::span<const std::uint64_t> a,
                                      std::span<const std::uint64_t> b, std::size_t n,
                                      const CoeffRing& ring) {
  a = head(a, n);
  b = head(b, n);
  const std::uint64_t m = ring.modulus();
  // Accumulate in 128 bits and fold back before the sum can overflow.
  std::vector<unsigned __int128> acc(n, 0);
  const unsigned __int128 fold = ~static_cast<unsigned __int128>(0) >> 2;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const std::size_t lim = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < lim; ++j) {
      auto& s = acc[i + j];
      s += static_cast<unsigned __int128>(a[i]) * b[j];
      if (s > fold) s %= m;
    }
  }
  std::vector<std::uint64_t> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<std::uint64_t>(acc[i] % m);
  return c;
}

std::vector<std::uint64_t> sparse(std::span<const std::uint64_t> sp,
                                  std::span<const std::uint64_t> dense, std::size_t n,
                                  const CoeffRing& ring) {
  return schoolbook(sp, dense, n, ring);
}

std::vector<std::uint64_t> kronecker(std::span<const std::uint64_t> a,
                                     std::span<const std::uint64_t> b, std::size_t n,
                                     const CoeffRing& ring) {
  a = head(a, n);
  b = head(b, n);
  std::vector<std::uint64_t> c(n, 0);
  if (a.empty() || b.empty()) return c;
  const std::size_t rb = static_cast<std::size_t>(std::bit_width(ring.modulus() - 1));
  const std::size_t slot = 2 * rb + ceil_log2(std::min(a.size(), b.size())) + 1;
  const std::size_t out_len = std::min(n, a.size() + b.size() - 1);

  mpz_class prod = pack_unsigned(a, slot);
  {
    mpz_class pb = pack_unsigned(b, slot);
    prod *= pb;
  }
  const mp_limb_t* buf = mpz_limbs_read(prod.get_mpz_t());
  const std::size_t bufn = mpz_size(prod.get_mpz_t());
  const std::size_t dl = limbs_for(slot);
  const std::uint64_t m = ring.modulus();
  std::vector<mp_limb_t> digit(dl);
  for (std::size_t i = 0; i < out_len; ++i) {
    get_bits(buf, bufn, i * slot, slot, digit.data());
    unsigned __int128 r = 0;
    for (std::size_t j = dl; j-- > 0;) r = ((r << 64) | digit[j]) % m;
    c[i] = static_cast<std::uint64_t>(r);
  }
  return c;
}

}  // namespace halfint::polymul
