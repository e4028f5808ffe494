#include "oracles.hpp"

#include <cstdlib>
#include <utility>
#include <set>
#include <stdexcept>

namespace oracle {

namespace {

mpz_class binom(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

std::vector<mpz_class> square_reps(unsigned a, std::size_t count) {
  // Add one coordinate x at a time: r_a(n) = sum_x r_{a-1}(n - x^2).
  std::vector<mpz_class> cur(count);
  if (count) cur[0] = 1;
  for (unsigned i = 0; i < a; ++i) {
    std::vector<mpz_class> next(count);
    for (std::size_t n = 0; n < count; ++n) {
      if (cur[n] == 0) continue;
      for (std::int64_t x = 0; n + static_cast<std::size_t>(x * x) < count; ++x)
        next[n + static_cast<std::size_t>(x * x)] += x == 0 ? cur[n] : mpz_class(2 * cur[n]);
    }
    cur = std::move(next);
  }
  return cur;
}

mpz_class sigma(unsigned r, std::uint64_t n) {
  mpz_class s = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) {
      mpz_class t;
      mpz_ui_pow_ui(t.get_mpz_t(), d, r);
      s += t;
    }
  return s;
}

std::vector<mpq_class> convolve(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b, std::size_t n) {
  std::vector<mpq_class> c(n);
  for (std::size_t i = 0; i < a.size() && i < n; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<mpz_class> delta(std::size_t count) {
  std::vector<mpz_class> c(count);
  if (count > 1) c[1] = 1;
  for (std::size_t n = 1; n < count; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t i = count; i-- > n;) c[i] -= c[i - n];
  return c;
}

mpq_class bernoulli(unsigned k) {
  // Akiyama-Tanigawa gives B_1 = +1/2.
  std::vector<mpq_class> a(k + 1);
  for (unsigned m = 0; m <= k; ++m) {
    a[m] = mpq_class(1, m + 1);
    for (unsigned j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
  }
  return k == 1 ? mpq_class(-1, 2) : a[0];
}

mpq_class bernoulli_poly(unsigned k, const mpq_class& x) {
  mpq_class s = 0, xp = 1;
  // sum_j C(k, j) B_{k-j} x^j
  for (unsigned j = 0; j <= k; ++j) {
    s += mpq_class(binom(k, j)) * bernoulli(k - j) * xp;
    xp *= x;
  }
  return s;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("kronecker: n must be positive");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    const std::int64_t r = ((a % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (a | n) for odd n.
  std::int64_t x = ((a % n) + n) % n, m = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      if (m % 8 == 3 || m % 8 == 5) result = -result;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

mpq_class gen_bernoulli(std::int64_t D, unsigned k) {
  const std::int64_t f = std::llabs(D);
  mpq_class s = 0;
  for (std::int64_t a = 1; a <= f; ++a) {
    const int chi = f == 1 ? 1 : kronecker(D, a);
    if (chi) s += chi * bernoulli_poly(k, mpq_class(a, f));
  }
  mpz_class fp;
  mpz_ui_pow_ui(fp.get_mpz_t(), f, k - 1);
  return s * fp;
}

mpq_class gen_bernoulli_mod4(unsigned k) {
  const int chi[5] = {0, 1, 0, -1, 0};
  mpq_class s = 0;
  for (int a = 1; a <= 4; ++a)
    if (chi[a]) s += chi[a] * bernoulli_poly(k, mpq_class(a, 4));
  mpz_class fp;
  mpz_ui_pow_ui(fp.get_mpz_t(), 4, k - 1);
  return s * fp;
}

namespace {

bool fundamental(std::int64_t D) {
  if (D == 1) return true;
  auto squarefree = [](std::int64_t n) {
    n = std::llabs(n);
    for (std::int64_t p = 2; p * p <= n; ++p)
      if (n % (p * p) == 0) return false;
    return true;
  };
  const std::int64_t r = ((D % 4) + 4) % 4;
  if (r == 1) return squarefree(D);
  if (r == 0) {
    const std::int64_t m = D / 4, rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && squarefree(m);
  }
  return false;
}

int mobius(std::uint64_t n) {
  int m = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  return n > 1 ? -m : m;
}

}  // namespace

mpq_class cohen_h(unsigned r, std::uint64_t N) {
  if (N == 0) return -bernoulli(2 * r) / mpq_class(2 * r);
  const std::int64_t s = (r % 2 ? -1 : 1) * static_cast<std::int64_t>(N);
  const std::int64_t sr = ((s % 4) + 4) % 4;
  if (sr == 2 || sr == 3) return 0;
  // s = D f^2 with D fundamental and f maximal.
  std::int64_t D = s;
  std::uint64_t f = 1;
  for (std::uint64_t g = 1; g * g <= N; ++g) {
    const std::int64_t gg = static_cast<std::int64_t>(g * g);
    if (s % gg == 0 && fundamental(s / gg)) {
      D = s / gg;
      f = g;
    }
  }
  const mpq_class L = -gen_bernoulli(D, r) / mpq_class(r);  // L(1 - r, chi_D)
  mpq_class sum = 0;
  for (std::uint64_t d = 1; d <= f; ++d) {
    if (f % d) continue;
    const int mu = mobius(d);
    if (!mu) continue;
    const int chi = D == 1 ? 1 : kronecker(D, static_cast<std::int64_t>(d));
    mpz_class dp;
    mpz_ui_pow_ui(dp.get_mpz_t(), d, r - 1);
    sum += mu * chi * mpq_class(dp) * mpq_class(sigma(2 * r - 1, f / d));
  }
  return L * sum;
}

std::size_t dim_level1(unsigned w) {
  std::size_t c = 0;
  for (unsigned a = 0; 4 * a <= w; ++a)
    if ((w - 4 * a) % 6 == 0) ++c;
  return c;
}

int legendre(std::int64_t a, std::uint64_t p) {
  const std::int64_t P = static_cast<std::int64_t>(p);
  const std::int64_t r = ((a % P) + P) % P;
  if (r == 0) return 0;
  std::set<std::int64_t> squares;
  for (std::int64_t x = 1; x < P; ++x) squares.insert(x * x % P);
  return squares.count(r) ? 1 : -1;
}

std::uint64_t pow_mod(std::uint64_t x, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1 % m;
  for (std::uint64_t i = 0; i < e; ++i) r = r * x % m;
  return static_cast<std::uint64_t>(r);
}

}  // namespace oracle
