#include "halfint/qseries.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>

#include "halfint/errors.hpp"
#include "polymul.hpp"

namespace halfint {

namespace {

std::atomic<std::uint64_t> g_mult_total{0};

std::mutex g_config_mutex;
MulConfig g_config;

void check_same(const QExpansion& f, const QExpansion& g) {
  if (!(f.ring() == g.ring())) throw RingMismatch();
}

template <typename T>
std::size_t count_nonzero_in(std::span<const T> v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const T& x) { return x != 0; }));
}

bool is_sparse(std::size_t nnz, std::size_t len, double threshold) {
  return len > 0 && static_cast<double>(nnz) <= threshold * static_cast<double>(len);
}

}  // namespace

MulConfig mul_config() {
  std::lock_guard lock(g_config_mutex);
  return g_config;
}

void set_mul_config(const MulConfig& config) {
  std::lock_guard lock(g_config_mutex);
  g_config = config;
}

MultCounter::MultCounter() : start_(g_mult_total.load()) {}

std::uint64_t MultCounter::count() const { return g_mult_total.load() - start_; }

QExpansion QExpansion::zero(const CoeffRing& ring, std::size_t prec) {
  QExpansion f(ring);
  f.prec_ = prec;
  if (ring.is_rational())
    f.num_.assign(prec, 0);
  else
    f.res_.assign(prec, 0);
  return f;
}

QExpansion QExpansion::one(const CoeffRing& ring, std::size_t prec) {
  QExpansion f = zero(ring, prec);
  if (prec > 0) {
    if (ring.is_rational())
      f.num_[0] = 1;
    else
      f.res_[0] = 1 % ring.modulus();
  }
  f.count_nonzero();
  return f;
}

QExpansion QExpansion::from_integers(const CoeffRing& ring, std::vector<mpz_class> nums,
                                     const mpz_class& den) {
  if (den == 0) throw Error("zero denominator");
  QExpansion f(ring);
  f.prec_ = nums.size();
  if (ring.is_rational()) {
    f.num_ = std::move(nums);
    f.den_ = den;
    f.canonicalize();
  } else {
    const std::uint64_t dinv_src = ring.reduce(den);
    if (dinv_src % ring.prime() == 0)
      throw NonInvertibleDenominator("series denominator " + den.get_str() +
                                     " is divisible by " + std::to_string(ring.prime()));
    const std::uint64_t dinv = ring.inv_mod(dinv_src);
    f.res_.resize(nums.size());
    for (std::size_t i = 0; i < nums.size(); ++i) f.res_[i] = ring.mul_mod(ring.reduce(nums[i]), dinv);
  }
  f.count_nonzero();
  return f;
}

QExpansion QExpansion::from_residues(const CoeffRing& ring, std::vector<std::uint64_t> residues) {
  if (ring.is_rational()) {
    std::vector<mpz_class> nums(residues.size());
    for (std::size_t i = 0; i < residues.size(); ++i) nums[i] = static_cast<unsigned long>(residues[i]);
    return from_integers(ring, std::move(nums));
  }
  QExpansion f(ring);
  f.prec_ = residues.size();
  f.res_ = std::move(residues);
  for (auto& r : f.res_) r %= ring.modulus();
  f.count_nonzero();
  return f;
}

QExpansion QExpansion::from_elems(const CoeffRing& ring, std::span<const RingElem> coeffs) {
  for (const auto& c : coeffs)
    if (!(c.ring() == ring)) throw RingMismatch();
  if (ring.is_modular()) {
    std::vector<std::uint64_t> res(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) res[i] = coeffs[i].residue();
    return from_residues(ring, std::move(res));
  }
  mpz_class den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> nums(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const mpq_class& q = coeffs[i].rational();
    nums[i] = q.get_num() * (den / q.get_den());
  }
  return from_integers(ring, std::move(nums), den);
}

void QExpansion::canonicalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& x : num_) x = -x;
  }
  if (den_ == 1) return;
  mpz_class g = den_;
  for (const auto& x : num_) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  // g == den_ when every coefficient is zero, which resets den_ to 1.
  for (auto& x : num_)
    if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

void QExpansion::count_nonzero() {
  nnz_ = ring_.is_rational() ? count_nonzero_in<mpz_class>(num_)
                             : count_nonzero_in<std::uint64_t>(res_);
}

RingElem QExpansion::coeff(std::size_t n) const {
  if (n >= prec_) throw Error("coefficient index " + std::to_string(n) + " beyond precision " +
                              std::to_string(prec_));
  if (ring_.is_rational()) return RingElem(ring_, mpq_class(num_[n], den_));
  return RingElem::from_residue(ring_, res_[n]);
}

std::vector<RingElem> QExpansion::coeffs() const {
  std::vector<RingElem> out;
  out.reserve(prec_);
  for (std::size_t n = 0; n < prec_; ++n) out.push_back(coeff(n));
  return out;
}

bool QExpansion::coeff_is_zero(std::size_t n) const {
  return ring_.is_rational() ? num_[n] == 0 : res_[n] == 0;
}

bool operator==(const QExpansion& a, const QExpansion& b) {
  return a.ring_ == b.ring_ && a.prec_ == b.prec_ && a.den_ == b.den_ && a.num_ == b.num_ &&
         a.res_ == b.res_;
}

namespace {

// Scales two rational series to a common denominator: returns (L/da, L/db, L).
struct CommonDen {
  mpz_class fa, fb, den;
};

CommonDen common_den(const mpz_class& da, const mpz_class& db) {
  CommonDen c;
  mpz_lcm(c.den.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
  c.fa = c.den / da;
  c.fb = c.den / db;
  return c;
}

QExpansion add_impl(const QExpansion& f, const QExpansion& g, bool subtract) {
  check_same(f, g);
  const auto& R = f.ring();
  const std::size_t n = std::min(f.prec(), g.prec());
  if (R.is_modular()) {
    std::vector<std::uint64_t> r(n);
    for (std::size_t i = 0; i < n; ++i)
      r[i] = subtract ? R.sub_mod(f.residues()[i], g.residues()[i])
                      : R.add_mod(f.residues()[i], g.residues()[i]);
    return QExpansion::from_residues(R, std::move(r));
  }
  const auto cd = common_den(f.denominator(), g.denominator());
  std::vector<mpz_class> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_ptr z = r[i].get_mpz_t();
    mpz_mul(z, f.numerators()[i].get_mpz_t(), cd.fa.get_mpz_t());
    if (subtract)
      mpz_submul(z, g.numerators()[i].get_mpz_t(), cd.fb.get_mpz_t());
    else
      mpz_addmul(z, g.numerators()[i].get_mpz_t(), cd.fb.get_mpz_t());
  }
  return QExpansion::from_integers(R, std::move(r), cd.den);
}

}  // namespace

QExpansion ps_add(const QExpansion& f, const QExpansion& g) { return add_impl(f, g, false); }

QExpansion ps_sub(const QExpansion& f, const QExpansion& g) { return add_impl(f, g, true); }

QExpansion ps_neg(const QExpansion& f) {
  return ps_scale(f, RingElem(f.ring(), -1L));
}

QExpansion ps_scale(const QExpansion& f, const RingElem& c) {
  const auto& R = f.ring();
  if (!(c.ring() == R)) throw RingMismatch();
  if (R.is_modular()) {
    std::vector<std::uint64_t> r(f.prec());
    for (std::size_t i = 0; i < f.prec(); ++i) r[i] = R.mul_mod(f.residues()[i], c.residue());
    return QExpansion::from_residues(R, std::move(r));
  }
  const mpq_class& q = c.rational();
  std::vector<mpz_class> r(f.prec());
  for (std::size_t i = 0; i < f.prec(); ++i)
    if (f.numerators()[i] != 0) r[i] = f.numerators()[i] * q.get_num();
  return QExpansion::from_integers(R, std::move(r), f.denominator() * q.get_den());
}

QExpansion ps_mul(const QExpansion& f, const QExpansion& g) {
  check_same(f, g);
  g_mult_total.fetch_add(1);
  const auto& R = f.ring();
  const std::size_t n = std::min(f.prec(), g.prec());
  const MulConfig cfg = mul_config();

  // Work on the n-term heads; order so that `a` is the sparser operand.
  const QExpansion* a = &f;
  const QExpansion* b = &g;
  if (b->nonzero_count() * a->prec() < a->nonzero_count() * b->prec()) std::swap(a, b);
  const std::size_t la = std::min(a->prec(), n), lb = std::min(b->prec(), n);

  enum class Algo { Schoolbook, Sparse, Kronecker };
  Algo algo = Algo::Kronecker;
  if (std::min(la, lb) <= cfg.schoolbook_max)
    algo = Algo::Schoolbook;
  else if (is_sparse(a->nonzero_count(), a->prec(), cfg.sparse_density))
    algo = Algo::Sparse;

  if (R.is_modular()) {
    std::span<const std::uint64_t> sa(a->residues()), sb(b->residues());
    std::vector<std::uint64_t> r;
    switch (algo) {
      case Algo::Schoolbook: r = polymul::schoolbook(sa, sb, n, R); break;
      case Algo::Sparse: r = polymul::sparse(sa, sb, n, R); break;
      case Algo::Kronecker: r = polymul::kronecker(sa, sb, n, R); break;
    }
    return QExpansion::from_residues(R, std::move(r));
  }
  std::span<const mpz_class> sa(a->numerators()), sb(b->numerators());
  std::vector<mpz_class> r;
  switch (algo) {
    case Algo::Schoolbook: r = polymul::schoolbook(sa, sb, n); break;
    case Algo::Sparse: r = polymul::sparse(sa, sb, n); break;
    case Algo::Kronecker: r = polymul::kronecker(sa, sb, n); break;
  }
  return QExpansion::from_integers(R, std::move(r), a->denominator() * b->denominator());
}

namespace {

// Same coefficients, padded with zeros up to `prec`.
QExpansion zero_pad(const QExpansion& f, std::size_t prec) {
  const auto& R = f.ring();
  if (R.is_modular()) {
    std::vector<std::uint64_t> r(f.residues());
    r.resize(prec, 0);
    return QExpansion::from_residues(R, std::move(r));
  }
  std::vector<mpz_class> r(f.numerators());
  r.resize(prec);
  return QExpansion::from_integers(R, std::move(r), f.denominator());
}

}  // namespace

QExpansion ps_inv(const QExpansion& f) {
  const auto& R = f.ring();
  const std::size_t D = f.prec();
  if (D == 0) return f;
  const RingElem a0 = f.coeff(0);
  if (!a0.is_unit()) throw NonInvertibleLeadingCoefficient();
  // Newton iteration g <- g (2 - f g), doubling the precision each step.
  const std::vector<RingElem> start{ring_inv(a0)};
  QExpansion g = QExpansion::from_elems(R, start);
  const RingElem two(R, 2L);
  while (g.prec() < D) {
    const std::size_t next = std::min(2 * g.prec(), D);
    const QExpansion wide = zero_pad(g, next);
    const QExpansion fg = ps_mul(ps_truncate(f, next), wide);
    g = ps_mul(wide, ps_sub(ps_scale(QExpansion::one(R, next), two), fg));
  }
  return g;
}

QExpansion ps_derive(const QExpansion& f) {
  const auto& R = f.ring();
  if (R.is_modular()) {
    std::vector<std::uint64_t> r(f.prec());
    for (std::size_t i = 0; i < f.prec(); ++i)
      r[i] = R.mul_mod(f.residues()[i], static_cast<std::uint64_t>(i) % R.modulus());
    return QExpansion::from_residues(R, std::move(r));
  }
  std::vector<mpz_class> r(f.prec());
  for (std::size_t i = 1; i < f.prec(); ++i)
    if (f.numerators()[i] != 0)
      mpz_mul_ui(r[i].get_mpz_t(), f.numerators()[i].get_mpz_t(), static_cast<unsigned long>(i));
  return QExpansion::from_integers(R, std::move(r), f.denominator());
}

QExpansion ps_vshift(const QExpansion& f, std::size_t m) {
  if (m == 0) throw Error("vshift factor must be positive");
  if (m == 1) return f;
  const auto& R = f.ring();
  const std::size_t D = f.prec();
  if (R.is_modular()) {
    std::vector<std::uint64_t> r(m * D, 0);
    for (std::size_t i = 0; i < D; ++i) r[m * i] = f.residues()[i];
    return QExpansion::from_residues(R, std::move(r));
  }
  std::vector<mpz_class> r(m * D);
  for (std::size_t i = 0; i < D; ++i) r[m * i] = f.numerators()[i];
  return QExpansion::from_integers(R, std::move(r), f.denominator());
}

QExpansion ps_pow(const QExpansion& f, std::uint64_t e) {
  if (e == 0) return QExpansion::one(f.ring(), f.prec());
  QExpansion r = f;
  int top = 63;
  while (!((e >> top) & 1)) --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    r = ps_mul(r, r);
    if ((e >> bit) & 1) r = ps_mul(r, f);
  }
  return r;
}

QExpansion ps_reduce(const QExpansion& f, const CoeffRing& ring) {
  if (!f.ring().is_rational()) {
    if (f.ring() == ring) return f;
    throw UnsupportedRing("ps_reduce expects a series over the rationals");
  }
  if (ring.is_rational()) return f;
  const mpz_class& den = f.denominator();
  if (ring.reduce(den) % ring.prime() == 0) {
    // Locate the first coefficient whose reduced denominator keeps p.
    for (std::size_t i = 0; i < f.prec(); ++i) {
      mpq_class c(f.numerators()[i], den);
      c.canonicalize();
      if (mpz_divisible_ui_p(c.get_den_mpz_t(), static_cast<unsigned long>(ring.prime())))
        throw NonInvertibleDenominator("coefficient " + std::to_string(i) + " (" + c.get_str() +
                                           ") has denominator divisible by " +
                                           std::to_string(ring.prime()),
                                       static_cast<std::ptrdiff_t>(i));
    }
  }
  // Individual coefficients may still be p-integral even if den is not.
  std::vector<std::uint64_t> r(f.prec());
  for (std::size_t i = 0; i < f.prec(); ++i) {
    if (f.numerators()[i] == 0) continue;
    r[i] = ring.reduce(mpq_class(f.numerators()[i], den));
  }
  return QExpansion::from_residues(ring, std::move(r));
}

QExpansion ps_truncate(const QExpansion& f, std::size_t prec) {
  if (prec >= f.prec()) return f;
  const auto& R = f.ring();
  if (R.is_modular())
    return QExpansion::from_residues(
        R, std::vector<std::uint64_t>(f.residues().begin(), f.residues().begin() + prec));
  return QExpansion::from_integers(
      R, std::vector<mpz_class>(f.numerators().begin(), f.numerators().begin() + prec),
      f.denominator());
}

QExpansion ps_linear_combination(std::span<const RingElem> c, std::span<const QExpansion> f) {
  if (c.size() != f.size() || f.empty()) throw Error("linear combination needs matching, nonempty inputs");
  const auto& R = f[0].ring();
  std::size_t n = f[0].prec();
  for (const auto& g : f) {
    if (!(g.ring() == R)) throw RingMismatch();
    n = std::min(n, g.prec());
  }
  for (const auto& x : c)
    if (!(x.ring() == R)) throw RingMismatch();
  if (R.is_modular()) {
    std::vector<std::uint64_t> r(n, 0);
    for (std::size_t j = 0; j < f.size(); ++j) {
      const std::uint64_t cj = c[j].residue();
      if (cj == 0) continue;
      for (std::size_t i = 0; i < n; ++i) r[i] = R.add_mod(r[i], R.mul_mod(cj, f[j].residues()[i]));
    }
    return QExpansion::from_residues(R, std::move(r));
  }
  // Common denominator of all c_j / den(f_j).
  mpz_class den = 1;
  std::vector<mpz_class> den_j(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    den_j[j] = c[j].rational().get_den() * f[j].denominator();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), den_j[j].get_mpz_t());
  }
  std::vector<mpz_class> r(n);
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (c[j].is_zero()) continue;
    const mpz_class scale = c[j].rational().get_num() * (den / den_j[j]);
    const auto& nums = f[j].numerators();
    for (std::size_t i = 0; i < n; ++i)
      if (nums[i] != 0) mpz_addmul(r[i].get_mpz_t(), nums[i].get_mpz_t(), scale.get_mpz_t());
  }
  return QExpansion::from_integers(R, std::move(r), den);
}

}  // namespace halfint
