#include "halfint/hecke.hpp"

#include "halfint/errors.hpp"
#include "halfint/numth.hpp"

namespace halfint {

QExpansion hecke_tp2(const QExpansion& f, HalfWeight w, std::uint64_t p, std::size_t out_prec) {
  if (!is_prime(p)) throw Error("T_{p^2} needs a prime p, got " + std::to_string(p));
  const std::size_t p2 = p * p;
  if (f.prec() < p2 * out_prec)
    throw PrecisionTooLow("T_" + std::to_string(p2) + " to precision " + std::to_string(out_prec) +
                          " needs input precision " + std::to_string(p2 * out_prec) + ", got " +
                          std::to_string(f.prec()));
  const CoeffRing& R = f.ring();
  const bool odd_k = w.k % 2 == 1;
  // For p = 2 only indices with (-1)^k n = 0, 1 mod 4 are defined.
  auto skip = [&](std::size_t n) {
    if (p != 2) return false;
    const unsigned r = static_cast<unsigned>(odd_k ? (4 - n % 4) % 4 : n % 4);
    return r == 2 || r == 3;
  };
  auto symbol = [&](std::size_t n) {
    const auto s = static_cast<std::int64_t>(n % (4 * p));
    return kronecker_prime(odd_k ? -s : s, p);
  };
  if (R.is_rational()) {
    const mpz_class mid = [&] { mpz_class r; mpz_ui_pow_ui(r.get_mpz_t(), p, w.k - 1); return r; }();
    mpz_class top;
    mpz_ui_pow_ui(top.get_mpz_t(), p, 2 * w.k - 1);
    const auto& a = f.numerators();
    std::vector<mpz_class> b(out_prec);
    for (std::size_t n = 0; n < out_prec; ++n) {
      if (skip(n)) continue;
      b[n] = a[p2 * n];
      if (const int s = symbol(n); s > 0)
        b[n] += mid * a[n];
      else if (s < 0)
        b[n] -= mid * a[n];
      if (n % p2 == 0) b[n] += top * a[n / p2];
    }
    return QExpansion::from_integers(R, std::move(b), f.denominator());
  }
  std::uint64_t mid = 1, top = 1;
  const std::uint64_t pm = p % R.modulus();
  for (unsigned i = 0; i + 1 < w.k; ++i) mid = R.mul_mod(mid, pm);
  for (unsigned i = 0; i + 1 < 2 * w.k; ++i) top = R.mul_mod(top, pm);
  const auto& a = f.residues();
  std::vector<std::uint64_t> b(out_prec);
  for (std::size_t n = 0; n < out_prec; ++n) {
    if (skip(n)) continue;
    std::uint64_t v = a[p2 * n];
    if (const int s = symbol(n); s > 0)
      v = R.add_mod(v, R.mul_mod(mid, a[n]));
    else if (s < 0)
      v = R.sub_mod(v, R.mul_mod(mid, a[n]));
    if (n % p2 == 0) v = R.add_mod(v, R.mul_mod(top, a[n / p2]));
    b[n] = v;
  }
  return QExpansion::from_residues(R, std::move(b));
}

ExactMatrix hecke_matrix(const FormBasis& space, std::uint64_t p, std::size_t low_prec) {
  const std::size_t d = space.size();
  if (d == 0) throw Error("Hecke matrix of an empty basis");
  const CoeffRing& R = space.forms[0].series.ring();
  if (low_prec < independence_threshold(space.weight))
    throw PrecisionTooLow("Hecke matrix in weight " + space.weight.to_string() + " needs low precision >= " +
                          std::to_string(independence_threshold(space.weight)) + ", got " +
                          std::to_string(low_prec));
  ExactMatrix a(R, d, low_prec);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t n = 0; n < low_prec; ++n) a.set(i, n, space.forms[i].series.coeff(n));
  if (rank(a) != d)
    throw IndependenceFailure("basis of weight " + space.weight.to_string() +
                              " is dependent at precision " + std::to_string(low_prec));
  ExactMatrix m(R, d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const QExpansion t = hecke_tp2(space.forms[i].series, space.weight, p, low_prec);
    const auto x = solve(a, t.coeffs());
    if (!x)
      throw NotStable("T_" + std::to_string(p * p) + " image of '" + space.forms[i].label +
                      "' is not in the span of the basis");
    for (std::size_t j = 0; j < d; ++j) m.set(i, j, (*x)[j]);
  }
  return m;
}

EigenData eigenforms(const FormBasis& space, std::uint64_t p, std::size_t low_prec) {
  if (space.forms.empty()) throw Error("eigenforms of an empty basis");
  if (!space.forms[0].series.ring().is_rational())
    throw UnsupportedRing("eigenforms are computed over the rationals; map the combinations afterwards");
  const std::size_t need = p * p * low_prec;
  FormBasis trimmed{space.weight, space.flavor, space.construction, {}};
  for (const auto& f : space.forms) {
    if (f.series.prec() < need)
      throw PrecisionTooLow("eigenforms at low precision " + std::to_string(low_prec) +
                            " need the basis to precision " + std::to_string(need) + ", got " +
                            std::to_string(f.series.prec()));
    trimmed.forms.push_back({ps_truncate(f.series, need), f.weight, f.label});
  }
  ExactMatrix m = hecke_matrix(trimmed, p, low_prec);
  EigenSplit split = eigen_split(m);
  EigenData data{std::move(trimmed), p, low_prec, std::move(m), std::move(split.charpoly),
                 std::move(split.rational), std::move(split.unsplit)};

  // Check T g = lambda g on the low-precision prefix.
  const auto series = data.space.series();
  const CoeffRing& R = series[0].ring();
  for (const auto& es : data.rational) {
    for (const auto& v : es.basis) {
      const QExpansion g = ps_linear_combination(v, series);
      const QExpansion tg = hecke_tp2(g, data.space.weight, p, low_prec);
      if (!(tg == ps_scale(ps_truncate(g, low_prec), RingElem(R, es.eigenvalue))))
        throw NotStable("eigenvector for " + es.eigenvalue.get_str() + " fails T g = lambda g");
    }
  }
  return data;
}

std::vector<std::vector<mpq_class>> eigen_combinations(const EigenData& data) {
  std::vector<std::vector<mpq_class>> out;
  for (const auto& es : data.rational)
    for (const auto& v : es.basis) {
      std::vector<mpq_class> row;
      for (const auto& x : v) row.push_back(x.rational());
      out.push_back(std::move(row));
    }
  return out;
}

FormBasis apply_eigenforms(const EigenData& data, const FormBasis& basis) {
  if (basis.size() != data.space.size() || !(basis.weight == data.space.weight))
    throw Error("eigenform combinations do not match this basis");
  FormBasis out = combine(basis, eigen_combinations(data), basis.flavor, basis.construction);
  std::size_t idx = 0;
  for (const auto& es : data.rational)
    for (std::size_t j = 0; j < es.basis.size(); ++j, ++idx) {
      std::string label = "eigen_T" + std::to_string(data.p * data.p) + "=" + es.eigenvalue.get_str();
      if (es.basis.size() > 1) label += "_" + std::to_string(j);
      out.forms[idx].label = std::move(label);
    }
  return out;
}

}  // namespace halfint
