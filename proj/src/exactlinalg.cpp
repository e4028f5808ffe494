#include "halfint/exactlinalg.hpp"

#include <algorithm>
#include <functional>

#include "halfint/errors.hpp"

namespace halfint {

ExactMatrix::ExactMatrix(const CoeffRing& ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), entries_(rows * cols, RingElem::zero(ring)) {}

ExactMatrix ExactMatrix::from_rows(const CoeffRing& ring, const std::vector<Vector>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  ExactMatrix m(ring, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

ExactMatrix ExactMatrix::from_rationals(const CoeffRing& ring,
                                        const std::vector<std::vector<mpq_class>>& rows) {
  std::vector<Vector> r;
  for (const auto& row : rows) {
    Vector v;
    for (const auto& x : row) v.emplace_back(ring, x);
    r.push_back(std::move(v));
  }
  return from_rows(ring, r);
}

ExactMatrix ExactMatrix::identity(const CoeffRing& ring, std::size_t n) {
  ExactMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, RingElem::one(ring));
  return m;
}

void ExactMatrix::set(std::size_t i, std::size_t j, const RingElem& v) {
  if (!(v.ring() == ring_)) throw RingMismatch();
  entries_[i * cols_ + j] = v;
}

Vector ExactMatrix::row(std::size_t i) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.entries_[j * rows_ + i] = at(i, j);
  return t;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (!(a.ring() == b.ring())) throw RingMismatch();
  if (a.cols() != b.rows()) throw Error("matrix dimension mismatch");
  ExactMatrix c(a.ring(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      RingElem s = RingElem::zero(a.ring());
      for (std::size_t k = 0; k < a.cols(); ++k) s = s + a.at(i, k) * b.at(k, j);
      c.set(i, j, s);
    }
  return c;
}

Vector operator*(const Vector& v, const ExactMatrix& m) {
  if (v.size() != m.rows()) throw Error("vector/matrix dimension mismatch");
  Vector out(m.cols(), RingElem::zero(m.ring()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = out[j] + v[i] * m.at(i, j);
  }
  return out;
}

namespace {

void require_field(const CoeffRing& ring, const char* op) {
  if (!ring.is_field())
    throw UnsupportedRing(std::string(op) + " needs a field; " + ring.descriptor() + " is not one");
}

// Row echelon form built one row at a time.
//
// Over the rationals rows are kept as primitive integer vectors and reduced
// fraction-free: r <- p[c] r - r[c] p, followed by removal of the content.
// Every stored row is zero in the pivot columns of the rows stored before it,
// so reducing a new row against the stored rows in order clears all pivots.
class Echelon {
 public:
  Echelon(const CoeffRing& ring, std::size_t cols) : ring_(ring), cols_(cols) {}

  // Returns true if the row was independent of the rows seen so far.
  bool add(const Vector& row) {
    if (ring_.is_rational()) {
      std::vector<mpz_class> r = to_integer(row);
      for (std::size_t k = 0; k < zrows_.size(); ++k) {
        const std::size_t c = pivots_[k];
        if (r[c] == 0) continue;
        const mpz_class a = zrows_[k][c], b = r[c];
        for (std::size_t j = 0; j < cols_; ++j) r[j] = a * r[j] - b * zrows_[k][j];
        make_primitive(r);
      }
      auto it = std::find_if(r.begin(), r.end(), [](const mpz_class& x) { return x != 0; });
      if (it == r.end()) return false;
      pivots_.push_back(static_cast<std::size_t>(it - r.begin()));
      zrows_.push_back(std::move(r));
      return true;
    }
    std::vector<std::uint64_t> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = row[j].residue();
    for (std::size_t k = 0; k < mrows_.size(); ++k) {
      const std::size_t c = pivots_[k];
      if (r[c] == 0) continue;
      const std::uint64_t f = r[c];  // stored rows have pivot entry 1
      for (std::size_t j = 0; j < cols_; ++j)
        if (mrows_[k][j]) r[j] = ring_.sub_mod(r[j], ring_.mul_mod(f, mrows_[k][j]));
    }
    auto it = std::find_if(r.begin(), r.end(), [](std::uint64_t x) { return x != 0; });
    if (it == r.end()) return false;
    const std::size_t c = static_cast<std::size_t>(it - r.begin());
    const std::uint64_t inv = ring_.inv_mod(r[c]);
    for (auto& x : r) x = ring_.mul_mod(x, inv);
    pivots_.push_back(c);
    mrows_.push_back(std::move(r));
    return true;
  }

  std::size_t rank() const { return pivots_.size(); }

  // Reduced row echelon form: rows sorted by pivot column, pivot entries 1,
  // zeros above and below every pivot.
  std::vector<Vector> rref(std::vector<std::size_t>* pivot_cols = nullptr) const {
    const std::size_t r = rank();
    std::vector<std::size_t> order(r);
    for (std::size_t i = 0; i < r; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    std::vector<Vector> rows;
    std::vector<std::size_t> piv;
    for (std::size_t idx : order) {
      Vector v;
      v.reserve(cols_);
      if (ring_.is_rational()) {
        const mpz_class& lead = zrows_[idx][pivots_[idx]];
        for (std::size_t j = 0; j < cols_; ++j) {
          mpq_class q(zrows_[idx][j], lead);
          q.canonicalize();
          v.emplace_back(ring_, q);
        }
      } else {
        for (std::size_t j = 0; j < cols_; ++j) v.push_back(RingElem::from_residue(ring_, mrows_[idx][j]));
      }
      rows.push_back(std::move(v));
      piv.push_back(pivots_[idx]);
    }
    // Back substitution from the last pivot up.
    for (std::size_t i = r; i-- > 0;) {
      for (std::size_t k = 0; k < r; ++k) {
        if (k == i) continue;
        const RingElem f = rows[k][piv[i]];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < cols_; ++j)
          if (!rows[i][j].is_zero()) rows[k][j] = rows[k][j] - f * rows[i][j];
      }
    }
    if (pivot_cols) *pivot_cols = piv;
    return rows;
  }

 private:
  std::vector<mpz_class> to_integer(const Vector& row) const {
    mpz_class den = 1;
    for (const auto& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.rational().get_den_mpz_t());
    std::vector<mpz_class> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      const mpq_class& q = row[j].rational();
      r[j] = q.get_num() * (den / q.get_den());
    }
    make_primitive(r);
    return r;
  }

  static void make_primitive(std::vector<mpz_class>& r) {
    mpz_class g = 0;
    for (const auto& x : r) {
      if (x == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) return;
    }
    if (g <= 1) return;
    for (auto& x : r)
      if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }

  CoeffRing ring_;
  std::size_t cols_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<mpz_class>> zrows_;
  std::vector<std::vector<std::uint64_t>> mrows_;
};

// Right null space of the system described by `ech` (cols unknowns).
std::vector<Vector> null_space(const Echelon& ech, const CoeffRing& ring, std::size_t cols) {
  std::vector<std::size_t> piv;
  const auto rows = ech.rref(&piv);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols, RingElem::zero(ring));
    v[f] = RingElem::one(ring);
    for (std::size_t i = 0; i < rows.size(); ++i) v[piv[i]] = -rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::vector<Vector> kernel(const ExactMatrix& m) {
  require_field(m.ring(), "kernel");
  // v M = 0  <=>  M^T v^T = 0: one equation per column of M.
  Echelon ech(m.ring(), m.rows());
  for (std::size_t j = 0; j < m.cols() && ech.rank() < m.rows(); ++j) {
    Vector eq(m.rows(), RingElem::zero(m.ring()));
    for (std::size_t i = 0; i < m.rows(); ++i) eq[i] = m.at(i, j);
    ech.add(eq);
  }
  const auto raw = null_space(ech, m.ring(), m.rows());
  Echelon canon(m.ring(), m.rows());
  for (const auto& v : raw) canon.add(v);
  return canon.rref();
}

std::size_t rank(const ExactMatrix& m) {
  require_field(m.ring(), "rank");
  Echelon ech(m.ring(), m.cols());
  for (std::size_t i = 0; i < m.rows() && ech.rank() < m.cols(); ++i) ech.add(m.row(i));
  return ech.rank();
}

std::optional<Vector> solve(const ExactMatrix& a, const Vector& b) {
  require_field(a.ring(), "solve");
  if (b.size() != a.cols()) throw Error("solve: right-hand side has wrong length");
  // x A = b  <=>  A^T x^T = b^T; rows of the augmented system are columns of A.
  const std::size_t n = a.rows();
  Echelon ech(a.ring(), n + 1);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Vector eq(n + 1, RingElem::zero(a.ring()));
    for (std::size_t i = 0; i < n; ++i) eq[i] = a.at(i, j);
    eq[n] = b[j];
    ech.add(eq);
  }
  std::vector<std::size_t> piv;
  const auto rows = ech.rref(&piv);
  Vector x(n, RingElem::zero(a.ring()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (piv[i] == n) return std::nullopt;
    x[piv[i]] = rows[i][n];
  }
  return x;
}

namespace {

void trim(RationalPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RationalPoly make_monic(RationalPoly p) {
  trim(p);
  if (p.empty()) return p;
  const mpq_class lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

RationalPoly derivative(const RationalPoly& p) {
  RationalPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

// Quotient and remainder of a / b, b nonzero.
std::pair<RationalPoly, RationalPoly> divmod(RationalPoly a, RationalPoly b) {
  trim(a);
  trim(b);
  if (b.empty()) throw Error("polynomial division by zero");
  if (a.size() < b.size()) return {RationalPoly{}, a};
  RationalPoly q(a.size() - b.size() + 1);
  for (std::size_t shift = q.size(); shift-- > 0;) {
    const mpq_class f = a[shift + b.size() - 1] / b.back();
    q[shift] = f;
    if (f != 0)
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

mpq_class evaluate(const RationalPoly& p, const mpq_class& x) {
  mpq_class r = 0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

int sign_changes(const std::vector<RationalPoly>& chain, const mpq_class& x) {
  int changes = 0, prev = 0;
  for (const auto& p : chain) {
    const int s = sgn(evaluate(p, x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

// Integer roots of a square-free monic polynomial with integer coefficients,
// isolated by Sturm-sequence bisection over half-integer endpoints (which
// can never be roots).
std::vector<mpz_class> integer_roots_squarefree(const RationalPoly& s) {
  std::vector<RationalPoly> chain{s, derivative(s)};
  while (chain.back().size() > 1) {
    auto r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  mpz_class bound = 1;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    mpz_class a = abs(s[i].get_num());
    if (a + 1 > bound) bound = a + 1;
  }
  std::vector<mpz_class> roots;
  const mpq_class half(1, 2);
  // Interval (lo + 1/2, hi + 1/2) with integer lo < hi.
  std::function<void(const mpz_class&, const mpz_class&, int, int)> search =
      [&](const mpz_class& lo, const mpz_class& hi, int v_lo, int v_hi) {
        if (v_lo - v_hi <= 0) return;
        if (hi - lo == 1) {
          if (evaluate(s, mpq_class(hi)) == 0) roots.push_back(hi);
          return;
        }
        mpz_class mid;
        mpz_fdiv_q_2exp(mid.get_mpz_t(), mpz_class(lo + hi).get_mpz_t(), 1);
        const int v_mid = sign_changes(chain, mpq_class(mid) + half);
        search(lo, mid, v_lo, v_mid);
        search(mid, hi, v_mid, v_hi);
      };
  const mpz_class lo = -bound - 1, hi = bound;
  search(lo, hi, sign_changes(chain, mpq_class(lo) + half), sign_changes(chain, mpq_class(hi) + half));
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::vector<mpq_class> rational_roots(const RationalPoly& p_in) {
  RationalPoly p = p_in;
  trim(p);
  if (p.empty()) throw Error("rational_roots of the zero polynomial");
  std::vector<mpq_class> roots;
  // Strip x^k first so the constant term is nonzero.
  std::size_t low = 0;
  while (p[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(low));
  if (p.size() <= 1) return roots;

  // Integer primitive form with leading coefficient L; then
  // Q(y) = L^(n-1) P(y / L) is monic over Z and P(r) = 0 iff Q(L r) = 0.
  mpz_class den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> z(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) z[i] = p[i].get_num() * (den / p[i].get_den());
  const std::size_t n = z.size() - 1;
  const mpz_class lc = z[n];
  RationalPoly q(n + 1);
  mpz_class pw = 1;  // lc^(n-1-i) built from the top down
  q[n] = 1;
  for (std::size_t i = n; i-- > 0;) {
    q[i] = mpq_class(z[i] * pw);
    pw *= lc;
  }
  const RationalPoly sq = make_monic(divmod(q, poly_gcd(q, derivative(q))).first);
  for (const auto& y : integer_roots_squarefree(sq)) {
    mpq_class r(y, lc);
    r.canonicalize();
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

RationalPoly charpoly(const ExactMatrix& t) {
  if (!t.ring().is_rational()) throw UnsupportedRing("charpoly is implemented over the rationals");
  if (t.rows() != t.cols()) throw Error("charpoly of a non-square matrix");
  const std::size_t n = t.rows();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = t.at(i, j).rational();
  // Faddeev-LeVerrier: M_1 = I, c_{n-k} = -tr(A M_k)/k, M_{k+1} = A M_k + c_{n-k} I.
  RationalPoly c(n + 1);
  c[n] = 1;
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<mpq_class>> am(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) am[i][j] += a[i][l] * m[l][j];
      }
    mpq_class tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
    c[n - k] = -tr / mpq_class(static_cast<unsigned long>(k));
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k];
    m = std::move(am);
  }
  return c;
}

EigenSplit eigen_split(const ExactMatrix& t) {
  EigenSplit out;
  out.charpoly = charpoly(t);
  const std::size_t n = t.rows();
  RationalPoly rest = out.charpoly;
  for (const auto& lambda : rational_roots(out.charpoly)) {
    RationalEigenspace es;
    es.eigenvalue = lambda;
    const RationalPoly lin{-lambda, mpq_class(1)};
    while (true) {
      auto [q, r] = divmod(rest, lin);
      if (!r.empty()) break;
      rest = std::move(q);
      ++es.multiplicity;
    }
    ExactMatrix shifted = t;
    for (std::size_t i = 0; i < n; ++i)
      shifted.set(i, i, t.at(i, i) - RingElem(t.ring(), lambda));
    es.basis = kernel(shifted);
    out.rational.push_back(std::move(es));
  }
  // Yun's square-free decomposition of what is left.
  rest = make_monic(rest);
  if (rest.size() > 1) {
    RationalPoly a = rest;
    RationalPoly b = poly_gcd(a, derivative(a));
    RationalPoly c = divmod(a, b).first;
    RationalPoly d = RationalPoly(divmod(derivative(a), b).first);
    {
      auto cd = derivative(c);
      trim(d);
      RationalPoly diff(std::max(d.size(), cd.size()));
      for (std::size_t i = 0; i < d.size(); ++i) diff[i] += d[i];
      for (std::size_t i = 0; i < cd.size(); ++i) diff[i] -= cd[i];
      d = std::move(diff);
      trim(d);
    }
    unsigned mult = 1;
    while (c.size() > 1) {
      RationalPoly g = d.empty() ? make_monic(c) : poly_gcd(c, d);
      if (g.size() > 1) out.unsplit.push_back({g, mult});
      RationalPoly c_next = divmod(c, g).first;
      RationalPoly dd = divmod(d, g).first;
      auto cnd = derivative(c_next);
      RationalPoly diff(std::max(dd.size(), cnd.size()));
      for (std::size_t i = 0; i < dd.size(); ++i) diff[i] += dd[i];
      for (std::size_t i = 0; i < cnd.size(); ++i) diff[i] -= cnd[i];
      trim(diff);
      c = make_monic(c_next);
      d = std::move(diff);
      ++mult;
    }
  }
  return out;
}

}  // namespace halfint
