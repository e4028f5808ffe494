#include "halfint/numth.hpp"

#include <mutex>

#include "halfint/errors.hpp"

namespace halfint {

namespace {

std::mutex g_bernoulli_mutex;
std::vector<mpq_class> g_bernoulli{mpq_class(1)};

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

mpq_class bernoulli(unsigned k) {
  std::lock_guard lock(g_bernoulli_mutex);
  // sum_{j=0}^{n} C(n+1, j) B_j = 0.
  while (g_bernoulli.size() <= k) {
    const unsigned n = static_cast<unsigned>(g_bernoulli.size());
    mpq_class s = 0;
    for (unsigned j = 0; j < n; ++j) s += mpq_class(binomial(n + 1, j)) * g_bernoulli[j];
    mpq_class b = -s / mpq_class(n + 1);
    b.canonicalize();
    g_bernoulli.push_back(b);
  }
  return g_bernoulli[k];
}

mpq_class gen_bernoulli_chi4(unsigned k) {
  // t (e^t - e^{3t}) / (e^{4t} - 1) = (e^t - e^{3t}) / ((e^{4t} - 1)/t),
  // expanded to order t^k by exact series division.
  const unsigned len = k + 1;
  std::vector<mpq_class> num(len), den(len);
  mpz_class fact = 1;
  for (unsigned i = 0; i < len + 1; ++i) {
    if (i > 0) fact *= i;
    mpz_class p1, p3, p4;
    mpz_ui_pow_ui(p3.get_mpz_t(), 3, i);
    mpz_ui_pow_ui(p4.get_mpz_t(), 4, i);
    if (i < len) {
      num[i] = mpq_class(1 - p3, fact);
      num[i].canonicalize();
    }
    if (i >= 1) {
      den[i - 1] = mpq_class(p4, fact);
      den[i - 1].canonicalize();
    }
  }
  std::vector<mpq_class> quo(len);
  for (unsigned i = 0; i < len; ++i) {
    mpq_class s = num[i];
    for (unsigned j = 0; j < i; ++j) s -= quo[j] * den[i - j];
    quo[i] = s / den[0];
  }
  mpq_class r = quo[k] * mpq_class(fact / (k + 1));
  r.canonicalize();
  return r;
}

int chi4(std::int64_t n) {
  const std::int64_t r = ((n % 4) + 4) % 4;
  return r == 1 ? 1 : r == 3 ? -1 : 0;
}

int legendre(std::int64_t a, std::uint64_t p) {
  if (p == 2 || !is_prime(p)) throw Error("legendre symbol needs an odd prime");
  std::int64_t r = a % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  if (r == 0) return 0;
  // Euler's criterion.
  unsigned __int128 base = static_cast<std::uint64_t>(r), acc = 1;
  std::uint64_t e = (p - 1) / 2;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

int kronecker_prime(std::int64_t a, std::uint64_t p) {
  if (p != 2) return legendre(a, p);
  const std::int64_t r = ((a % 8) + 8) % 8;
  if (r % 2 == 0) return 0;
  return (r == 1 || r == 7) ? 1 : -1;
}

mpq_class half_binomial(const mpq_class& x, unsigned m) {
  mpq_class r = 1;
  for (unsigned i = 0; i < m; ++i) r *= (x - i) / mpq_class(i + 1);
  r.canonicalize();
  return r;
}

mpz_class sigma(unsigned r, std::uint64_t n) {
  mpz_class s = 0, t;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    mpz_ui_pow_ui(t.get_mpz_t(), d, r);
    s += t;
    const std::uint64_t e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(t.get_mpz_t(), e, r);
      s += t;
    }
  }
  return s;
}

std::vector<mpz_class> divisor_sum_table(unsigned r, std::size_t count, Character chi_d,
                                         Character chi_e) {
  std::vector<mpz_class> t(count);
  mpz_class dr;
  for (std::size_t d = 1; d < count; ++d) {
    const int cd = char_value(chi_d, static_cast<std::int64_t>(d));
    if (cd == 0) continue;
    mpz_ui_pow_ui(dr.get_mpz_t(), d, r);
    if (cd < 0) dr = -dr;
    std::size_t e = 1;
    for (std::size_t n = d; n < count; n += d, ++e) {
      const int ce = char_value(chi_e, static_cast<std::int64_t>(e));
      if (ce > 0)
        t[n] += dr;
      else if (ce < 0)
        t[n] -= dr;
    }
  }
  return t;
}

std::vector<std::uint64_t> divisor_sum_table_mod(unsigned r, std::size_t count, const CoeffRing& ring,
                                                 Character chi_d, Character chi_e) {
  if (!ring.is_modular()) throw UnsupportedRing("divisor_sum_table_mod needs a modular ring");
  std::vector<std::uint64_t> t(count, 0);
  for (std::size_t d = 1; d < count; ++d) {
    const int cd = char_value(chi_d, static_cast<std::int64_t>(d));
    if (cd == 0) continue;
    std::uint64_t dr = 1 % ring.modulus(), base = d % ring.modulus();
    for (unsigned e = r; e; e >>= 1) {
      if (e & 1) dr = ring.mul_mod(dr, base);
      base = ring.mul_mod(base, base);
    }
    if (cd < 0) dr = ring.neg_mod(dr);
    const std::uint64_t ndr = ring.neg_mod(dr);
    std::size_t e = 1;
    for (std::size_t n = d; n < count; n += d, ++e) {
      const int ce = char_value(chi_e, static_cast<std::int64_t>(e));
      if (ce > 0)
        t[n] = ring.add_mod(t[n], dr);
      else if (ce < 0)
        t[n] = ring.add_mod(t[n], ndr);
    }
  }
  return t;
}

}  // namespace halfint
