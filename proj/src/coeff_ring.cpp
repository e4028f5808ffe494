#include "halfint/coeff_ring.hpp"

#include <charconv>
#include <limits>
#include <string>

#include "halfint/errors.hpp"

namespace halfint {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InvalidRing("bad " + std::string(what) + " in ring descriptor: '" +
                      std::string(s) + "'");
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit n.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

CoeffRing CoeffRing::prime_field(std::uint64_t p) {
  if (p == 2 || !is_prime(p))
    throw InvalidRing("prime field needs an odd prime, got " + std::to_string(p));
  if (p >= kMaxModulus) throw InvalidRing("modulus must be below 2^62");
  CoeffRing r;
  r.kind_ = Kind::PrimeField;
  r.p_ = p;
  r.m_ = 1;
  r.modulus_ = p;
  return r;
}

CoeffRing CoeffRing::fixed_padic(std::uint64_t p, unsigned m) {
  if (p == 2 || !is_prime(p))
    throw InvalidRing("p-adic ring needs an odd prime, got " + std::to_string(p));
  if (m == 0) throw InvalidRing("p-adic precision must be positive");
  std::uint64_t mod = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (mod > (kMaxModulus - 1) / p) throw InvalidRing("p^m must be below 2^62");
    mod *= p;
  }
  CoeffRing r;
  r.kind_ = Kind::FixedPadic;
  r.p_ = p;
  r.m_ = m;
  r.modulus_ = mod;
  return r;
}

CoeffRing CoeffRing::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.starts_with("fp:")) return prime_field(parse_u64(text.substr(3), "prime"));
  if (text.starts_with("padic:")) {
    auto rest = text.substr(6);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw InvalidRing("expected padic:<p>:<m>, got '" + std::string(text) + "'");
    std::uint64_t p = parse_u64(rest.substr(0, colon), "prime");
    std::uint64_t m = parse_u64(rest.substr(colon + 1), "precision");
    if (m > 64) throw InvalidRing("p-adic precision too large");
    return fixed_padic(p, static_cast<unsigned>(m));
  }
  throw InvalidRing("unknown ring '" + std::string(text) + "' (use q, fp:<p> or padic:<p>:<m>)");
}

std::string CoeffRing::descriptor() const {
  switch (kind_) {
    case Kind::ExactRational:
      return "q";
    case Kind::PrimeField:
      return "fp:" + std::to_string(p_);
    case Kind::FixedPadic:
      return "padic:" + std::to_string(p_) + ":" + std::to_string(m_);
  }
  return "?";
}

std::uint64_t CoeffRing::inv_mod(std::uint64_t a) const {
  // Extended Euclid on signed 128-bit values.
  __int128 t = 0, new_t = 1;
  __int128 r = modulus_, new_r = a % modulus_;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1)
    throw NonInvertibleElement(std::to_string(a) + " is not a unit modulo " +
                               std::to_string(modulus_));
  if (t < 0) t += modulus_;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t CoeffRing::reduce(const mpz_class& x) const {
  if (x.fits_slong_p() && x >= 0) return static_cast<std::uint64_t>(x.get_si()) % modulus_;
  mpz_class r;
  return mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(modulus_));
}

std::uint64_t CoeffRing::reduce(const mpq_class& x) const {
  std::uint64_t num = reduce(x.get_num());
  if (x.get_den() == 1) return num;
  std::uint64_t den = reduce(x.get_den());
  if (den % p_ == 0)
    throw NonInvertibleDenominator("denominator of " + x.get_str() + " is divisible by " +
                                   std::to_string(p_));
  return mul_mod(num, inv_mod(den));
}

RingElem::RingElem(const CoeffRing& ring, const mpq_class& value) : ring_(ring) {
  if (ring.is_rational()) {
    rat_ = value;
    rat_.canonicalize();
  } else {
    res_ = ring.reduce(value);
  }
}

RingElem RingElem::from_residue(const CoeffRing& ring, std::uint64_t residue) {
  RingElem e(ring);
  if (ring.is_rational()) {
    e.rat_ = mpq_class(static_cast<unsigned long>(residue));
  } else {
    e.res_ = residue % ring.modulus();
  }
  return e;
}

bool RingElem::is_zero() const {
  return ring_.is_rational() ? rat_ == 0 : res_ == 0;
}

bool RingElem::is_one() const {
  return ring_.is_rational() ? rat_ == 1 : res_ == 1 % ring_.modulus();
}

bool RingElem::is_unit() const {
  return ring_.is_rational() ? rat_ != 0 : res_ % ring_.prime() != 0;
}

std::string RingElem::to_string() const {
  if (ring_.is_rational()) return rat_.get_str();
  return std::to_string(res_);
}

RingElem RingElem::parse(const CoeffRing& ring, std::string_view text) {
  std::string s(text);
  mpq_class v;
  if (s.empty() || v.set_str(s, 10) != 0)
    throw ParseError("cannot parse ring element '" + s + "'");
  if (v.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  v.canonicalize();
  if (ring.is_modular()) {
    if (v.get_den() != 1 || v < 0 || v >= mpq_class(static_cast<unsigned long>(ring.modulus())))
      throw ParseError("'" + s + "' is not a canonical residue for " + ring.descriptor());
  } else if (v.get_str() != s) {
    throw ParseError("'" + s + "' is not in lowest terms");
  }
  return RingElem(ring, v);
}

bool operator==(const RingElem& a, const RingElem& b) {
  if (!(a.ring_ == b.ring_)) return false;
  return a.ring_.is_rational() ? a.rat_ == b.rat_ : a.res_ == b.res_;
}

namespace {

void check_same(const RingElem& a, const RingElem& b) {
  if (!(a.ring() == b.ring())) throw RingMismatch();
}

}  // namespace

RingElem ring_embed(const CoeffRing& ring, const mpq_class& x) { return RingElem(ring, x); }

RingElem ring_add(const RingElem& a, const RingElem& b) {
  check_same(a, b);
  const auto& R = a.ring();
  if (R.is_rational()) return RingElem(R, mpq_class(a.rational() + b.rational()));
  return RingElem::from_residue(R, R.add_mod(a.residue(), b.residue()));
}

RingElem ring_sub(const RingElem& a, const RingElem& b) {
  check_same(a, b);
  const auto& R = a.ring();
  if (R.is_rational()) return RingElem(R, mpq_class(a.rational() - b.rational()));
  return RingElem::from_residue(R, R.sub_mod(a.residue(), b.residue()));
}

RingElem ring_mul(const RingElem& a, const RingElem& b) {
  check_same(a, b);
  const auto& R = a.ring();
  if (R.is_rational()) return RingElem(R, mpq_class(a.rational() * b.rational()));
  return RingElem::from_residue(R, R.mul_mod(a.residue(), b.residue()));
}

RingElem ring_neg(const RingElem& a) {
  const auto& R = a.ring();
  if (R.is_rational()) return RingElem(R, mpq_class(-a.rational()));
  return RingElem::from_residue(R, R.neg_mod(a.residue()));
}

RingElem ring_inv(const RingElem& a) {
  const auto& R = a.ring();
  if (R.is_rational()) {
    if (a.rational() == 0) throw NonInvertibleElement("0 has no inverse");
    return RingElem(R, mpq_class(1 / a.rational()));
  }
  return RingElem::from_residue(R, R.inv_mod(a.residue()));
}

}  // namespace halfint
