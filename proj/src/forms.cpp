#include "halfint/forms.hpp"

#include <array>
#include <charconv>
#include <mutex>
#include <optional>

#include "halfint/bases.hpp"
#include "halfint/errors.hpp"
#include "halfint/exactlinalg.hpp"
#include "halfint/numth.hpp"

namespace halfint {

HalfWeight HalfWeight::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos || text.substr(slash + 1) != "2")
    throw InvalidWeight("weight must be written as <odd>/2, got '" + std::string(text) + "'");
  unsigned num = 0;
  const auto head = text.substr(0, slash);
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), num);
  if (ec != std::errc() || ptr != head.data() + head.size() || head.empty())
    throw InvalidWeight("bad weight numerator in '" + std::string(text) + "'");
  if (num % 2 == 0)
    throw InvalidWeight("'" + std::string(text) + "' is an integral weight; expected <odd>/2");
  return HalfWeight{(num - 1) / 2};
}

namespace {

// a_0 = a0 and a_n = scale * sum_{d|n} chi_d(d) chi_e(n/d) d^r for n >= 1.
QExpansion divisor_series(const CoeffRing& ring, std::size_t prec, const mpq_class& a0,
                          const mpq_class& scale, unsigned r, Character chi_d, Character chi_e,
                          bool odd_only = false) {
  if (prec == 0) return QExpansion::zero(ring, 0);
  if (ring.is_rational()) {
    std::vector<mpz_class> t = divisor_sum_table(r, prec, chi_d, chi_e);
    mpz_class den;
    mpz_lcm(den.get_mpz_t(), a0.get_den_mpz_t(), scale.get_den_mpz_t());
    const mpz_class s = scale.get_num() * (den / scale.get_den());
    for (std::size_t n = 1; n < prec; ++n) {
      if (odd_only && n % 2 == 0)
        t[n] = 0;
      else if (s != 1)
        t[n] *= s;
    }
    t[0] = a0.get_num() * (den / a0.get_den());
    return QExpansion::from_integers(ring, std::move(t), den);
  }
  std::vector<std::uint64_t> t = divisor_sum_table_mod(r, prec, ring, chi_d, chi_e);
  const std::uint64_t s = ring.reduce(scale);
  for (std::size_t n = 1; n < prec; ++n)
    t[n] = (odd_only && n % 2 == 0) ? 0 : ring.mul_mod(t[n], s);
  t[0] = ring.reduce(a0);
  return QExpansion::from_residues(ring, std::move(t));
}

}  // namespace

QExpansion theta(std::size_t prec, const CoeffRing& ring) {
  std::vector<std::uint64_t> r(prec, 0);
  if (prec > 0) r[0] = 1;
  for (std::size_t m = 1; m * m < prec; ++m) r[m * m] = 2;
  return QExpansion::from_residues(ring, std::move(r));
}

QExpansion f2(std::size_t prec, const CoeffRing& ring) {
  return divisor_series(ring, prec, 0, 1, 1, Character::Trivial, Character::Trivial, true);
}

QExpansion eis_level1(unsigned k, std::size_t prec, const CoeffRing& ring, bool normalized) {
  if (k < 4 || k % 2 != 0)
    throw InvalidWeight("level 1 Eisenstein series needs even k >= 4, got " + std::to_string(k));
  const mpq_class c0 = -bernoulli(k) / mpq_class(2 * k);
  if (normalized) return divisor_series(ring, prec, 1, 1 / c0, k - 1, Character::Trivial, Character::Trivial);
  return divisor_series(ring, prec, c0, 1, k - 1, Character::Trivial, Character::Trivial);
}

QExpansion eis_char(unsigned k, CharSlot slot, std::size_t prec, const CoeffRing& ring) {
  if (k % 2 == 0)
    throw InvalidWeight("Eisenstein series with the odd character mod 4 need odd weight, got " +
                        std::to_string(k));
  if (slot == CharSlot::OneChi) {
    const mpq_class c0 = -gen_bernoulli_chi4(k) / mpq_class(2 * k);
    return divisor_series(ring, prec, c0, 1, k - 1, Character::Chi4, Character::Trivial);
  }
  return divisor_series(ring, prec, 0, 1, k - 1, Character::Trivial, Character::Chi4);
}

namespace {

// Coefficients of H_{k+1/2} in the Cohen basis of weight k + 1/2, computed
// once over the rationals.
const std::vector<mpq_class>& cohen_eisenstein_combination(unsigned k) {
  static std::mutex mutex;
  static std::array<std::optional<std::vector<mpq_class>>, 6> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[k];
  if (slot) return *slot;

  const HalfWeight w{k};
  const std::size_t lin_prec = 4 * k + 40;
  const CoeffRing Q = CoeffRing::rationals();
  const FormBasis full = cohen_basis(w, lin_prec, Q);
  const auto combos = plus_kernel(full, lin_prec);
  if (combos.size() != 1)
    throw NotStable("plus space of weight " + w.to_string() + " is not one-dimensional");
  std::vector<QExpansion> series;
  for (const auto& f : full.forms) series.push_back(f.series);
  const QExpansion g = ps_linear_combination(combos[0], series);
  const mpq_class target = -bernoulli(2 * k) / mpq_class(2 * k);
  const mpq_class scale = target / g.coeff(0).rational();
  std::vector<mpq_class> c;
  for (const auto& x : combos[0]) c.push_back(x.rational() * scale);
  slot = std::move(c);
  return *slot;
}

}  // namespace

QExpansion cohen_eisenstein(unsigned k, std::size_t prec, const CoeffRing& ring) {
  if (k != 2 && k != 3 && k != 5)
    throw InvalidWeight("Cohen-Eisenstein series are provided for k in {2, 3, 5}, got " +
                        std::to_string(k));
  const auto& c = cohen_eisenstein_combination(k);
  const FormBasis basis = cohen_basis(HalfWeight{k}, prec, ring);
  std::vector<RingElem> coeffs;
  for (const auto& x : c) coeffs.emplace_back(ring, x);
  std::vector<QExpansion> series;
  for (const auto& f : basis.forms) series.push_back(f.series);
  return ps_linear_combination(coeffs, series);
}

}  // namespace halfint
