#include "halfint/bases.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>

#include "halfint/errors.hpp"
#include "halfint/numth.hpp"
#include "ordered_runner.hpp"

namespace halfint {

namespace {

std::atomic<unsigned> g_threads{1};

using SharedSeries = std::shared_ptr<const QExpansion>;

SharedSeries share(QExpansion f) { return std::make_shared<const QExpansion>(std::move(f)); }

std::string power_label(const std::string& base, std::uint64_t e) {
  return base + "^" + std::to_string(e);
}

bool forbidden_index(std::size_t n, HalfWeight w) {
  // (-1)^k n mod 4 in {2, 3}.
  const unsigned r = static_cast<unsigned>(n % 4);
  const unsigned signed_r = (w.k % 2 == 0) ? r : (4 - r) % 4;
  return signed_r == 2 || signed_r == 3;
}

void require_prec(std::size_t prec, HalfWeight w, const char* what) {
  if (prec < independence_threshold(w))
    throw PrecisionTooLow(std::string(what) + " in weight " + w.to_string() + " needs precision >= " +
                          std::to_string(independence_threshold(w)) + ", got " + std::to_string(prec));
}

FormBasis collect(HalfWeight w, Flavor flavor, Construction c,
                  const std::function<void(const FormSink&)>& producer) {
  FormBasis b{w, flavor, c, {}};
  producer([&](LabeledForm&& f) { b.forms.push_back(std::move(f)); });
  return b;
}

// Raises IndependenceFailure unless the series are linearly independent,
// looking at successively longer prefixes up to the full precision.
void check_independent(const std::vector<QExpansion>& prefixes, HalfWeight w, const char* what) {
  if (prefixes.empty()) return;
  const std::size_t full = prefixes[0].prec();
  std::size_t len = std::min(full, 2 * independence_threshold(w));
  while (true) {
    if (span_rank(prefixes, len) == prefixes.size()) return;
    if (len >= full) break;
    len = std::min(full, 4 * len);
  }
  throw IndependenceFailure(std::string(what) + " of weight " + w.to_string() +
                            " are linearly dependent at precision " + std::to_string(full));
}

}  // namespace

void set_worker_threads(unsigned n) { g_threads.store(std::max(1u, n)); }
unsigned worker_threads() { return g_threads.load(); }

std::string to_string(Flavor f) { return f == Flavor::Full ? "full" : "plus"; }

std::string to_string(Construction c) {
  switch (c) {
    case Construction::Cohen: return "cohen";
    case Construction::Kohnen: return "kohnen";
    case Construction::RankinCohen: return "rankin-cohen";
    case Construction::Projected: return "projected";
  }
  return "?";
}

std::vector<QExpansion> FormBasis::series() const {
  std::vector<QExpansion> out;
  out.reserve(forms.size());
  for (const auto& f : forms) out.push_back(f.series);
  return out;
}

std::size_t dim_full(HalfWeight w) { return w.k / 2 + 1; }

std::size_t dim_plus(HalfWeight w) {
  if (w.k < 2) throw InvalidWeight("dim_plus needs k >= 2, got " + std::to_string(w.k));
  const unsigned two_k = 2 * w.k;
  return two_k / 12 + (two_k % 12 == 2 ? 0 : 1);
}

std::size_t independence_threshold(HalfWeight w) { return w.k + 10; }

bool is_plus(const QExpansion& f, HalfWeight w) {
  for (std::size_t n = 0; n < f.prec(); ++n)
    if (forbidden_index(n, w) && !f.coeff_is_zero(n)) return false;
  return true;
}

std::size_t span_rank(std::span<const QExpansion> forms, std::size_t prec) {
  if (forms.empty()) return 0;
  const CoeffRing& R = forms[0].ring();
  std::vector<Vector> rows;
  for (const auto& f : forms) {
    if (f.prec() < prec) throw PrecisionTooLow("span_rank: series shorter than requested prefix");
    Vector v;
    v.reserve(prec);
    for (std::size_t n = 0; n < prec; ++n) v.push_back(f.coeff(n));
    rows.push_back(std::move(v));
  }
  return rank(ExactMatrix::from_rows(R, rows));
}

// --- Cohen standard basis ----------------------------------------------------

void cohen_forms(HalfWeight w, std::size_t prec, const CoeffRing& ring, const FormSink& sink) {
  const unsigned twice = 2 * w.k + 1;  // a + 4b = 2k + 1
  const unsigned bmax = twice / 4;
  const unsigned amin = twice - 4 * bmax;  // 1 or 3
  const mpq_class weight = w.value();

  const QExpansion th = theta(prec, ring);
  std::vector<SharedSeries> f2pow(bmax + 1);
  if (bmax >= 1) {
    f2pow[1] = share(f2(prec, ring));
    for (unsigned b = 2; b <= bmax; ++b) f2pow[b] = share(ps_mul(*f2pow[b - 1], *f2pow[1]));
  }
  // theta^a for a = amin, amin + 4, ..., built upwards while b goes down.
  const QExpansion th2 = (amin == 3 || bmax >= 1) ? ps_mul(th, th) : th;
  SharedSeries tha = share(amin == 1 ? th : ps_mul(th2, th));
  const QExpansion th4 = bmax >= 1 ? ps_mul(th2, th2) : th;

  OrderedRunner runner(sink);
  for (unsigned b = bmax + 1; b-- > 0;) {
    const unsigned a = twice - 4 * b;
    std::string label = power_label("theta", a) + "*" + power_label("F2", b);
    if (b == 0) {
      runner.submit([tha, weight, label] { return LabeledForm{*tha, weight, label}; });
    } else {
      SharedSeries fb = std::move(f2pow[b]);
      runner.submit([tha, fb, weight, label] { return LabeledForm{ps_mul(*tha, *fb), weight, label}; });
    }
    if (b > 0) tha = share(ps_mul(*tha, th4));
  }
  runner.flush();
}

FormBasis cohen_basis(HalfWeight w, std::size_t prec, const CoeffRing& ring) {
  FormBasis b = collect(w, Flavor::Full, Construction::Cohen,
                        [&](const FormSink& s) { cohen_forms(w, prec, ring, s); });
  std::reverse(b.forms.begin(), b.forms.end());
  return b;
}

// --- Plus space projection ---------------------------------------------------

std::vector<Vector> plus_kernel(const FormBasis& basis, std::size_t lin_prec) {
  if (basis.forms.empty()) return {};
  const CoeffRing& R = basis.forms[0].series.ring();
  if (!R.is_field()) throw UnsupportedRing("plus-space projection needs a field, got " + R.descriptor());
  std::vector<std::size_t> cols;
  for (std::size_t n = 0; n < lin_prec; ++n)
    if (forbidden_index(n, basis.weight)) cols.push_back(n);
  ExactMatrix m(R, basis.size(), cols.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& f = basis.forms[i].series;
    if (f.prec() < lin_prec) throw PrecisionTooLow("basis precision below linear-algebra precision");
    for (std::size_t j = 0; j < cols.size(); ++j) m.set(i, j, f.coeff(cols[j]));
  }
  return kernel(m);
}

FormBasis combine(const FormBasis& basis, const std::vector<std::vector<mpq_class>>& combos,
                  Flavor flavor, Construction construction) {
  FormBasis out{basis.weight, flavor, construction, {}};
  if (basis.forms.empty()) return out;
  const CoeffRing& R = basis.forms[0].series.ring();
  const auto series = basis.series();
  for (std::size_t i = 0; i < combos.size(); ++i) {
    if (combos[i].size() != basis.size()) throw Error("combination length does not match basis size");
    std::vector<RingElem> c;
    for (const auto& x : combos[i]) c.emplace_back(R, x);
    out.forms.push_back({ps_linear_combination(c, series), basis.weight.value(),
                         "plus_" + std::to_string(i)});
  }
  return out;
}

FormBasis plus_project(const FormBasis& basis, std::size_t lin_prec) {
  require_prec(lin_prec, basis.weight, "plus-space projection");
  FormBasis out{basis.weight, Flavor::Plus, Construction::Projected, {}};
  if (basis.forms.empty()) return out;
  lin_prec = std::min(lin_prec, basis.forms[0].series.prec());
  const auto kern = plus_kernel(basis, lin_prec);
  const auto series = basis.series();
  for (std::size_t i = 0; i < kern.size(); ++i) {
    QExpansion g = ps_linear_combination(kern[i], series);
    if (!is_plus(g, basis.weight))
      throw PrecisionTooLow("projection found at precision " + std::to_string(lin_prec) +
                            " leaves the plus space at higher indices; raise the precision");
    out.forms.push_back({std::move(g), basis.weight.value(), "plus_" + std::to_string(i)});
  }
  return out;
}

// --- Kohnen basis --------------------------------------------------------------

namespace {

struct KohnenTerm {
  unsigned e4, e6;
  int partner;  // index into {theta, H_{5/2}} (even k) or {H_{7/2}, H_{11/2}} (odd k)
};

std::vector<KohnenTerm> kohnen_terms(unsigned k) {
  std::vector<KohnenTerm> t;
  const int a0 = static_cast<int>(k % 3);
  const int K = static_cast<int>(k);
  if (k % 2 == 0) {
    // partner 0 = theta, 1 = H_{5/2}
    const int m = (K - 4 * a0) / 6 - 1;
    for (int a = 0; 2 * a <= m; ++a) {
      t.push_back({unsigned(a0 + 3 * a + 1), unsigned(m - 2 * a), 1});
      t.push_back({unsigned(a0 + 3 * a), unsigned(m - 2 * a + 1), 0});
    }
    if (k % 4 == 0) t.push_back({k / 4, 0, 0});
    if ((k - 2) % 6 == 0) t.push_back({0, (k - 2) / 6, 1});
  } else {
    // partner 0 = H_{7/2}, 1 = H_{11/2}
    const int m = (K - 4 * a0 - 9) / 6;
    for (int a = 0; 2 * a <= m; ++a) {
      t.push_back({unsigned(a0 + 3 * a + 1), unsigned(m - 2 * a), 1});
      t.push_back({unsigned(a0 + 3 * a), unsigned(m - 2 * a + 1), 0});
    }
    if ((k - 3) % 4 == 0) t.push_back({(k - 3) / 4, 0, 0});
    if (k >= 5 && (k - 5) % 6 == 0) t.push_back({0, (k - 5) / 6, 1});
  }
  return t;
}

std::string kohnen_label(const KohnenTerm& t, bool even) {
  static const char* even_names[] = {"theta", "H5/2"};
  static const char* odd_names[] = {"H7/2", "H11/2"};
  std::string s = power_label("E4", t.e4) + "(4z)*" + power_label("E6", t.e6) + "(4z)*";
  return s + (even ? even_names[t.partner] : odd_names[t.partner]);
}

}  // namespace

void kohnen_forms(HalfWeight w, std::size_t prec, const CoeffRing& ring, const FormSink& sink) {
  if (w.k < 2) throw InvalidWeight("Kohnen basis needs k >= 2, got " + std::to_string(w.k));
  const bool even = w.k % 2 == 0;
  const auto terms = kohnen_terms(w.k);
  const std::size_t quarter = (prec + 3) / 4;
  const mpq_class weight = w.value();

  unsigned max4 = 0, max6 = 0;
  bool need[2] = {false, false};
  for (const auto& t : terms) {
    max4 = std::max(max4, t.e4);
    max6 = std::max(max6, t.e6);
    need[t.partner] = true;
  }
  // Powers of E4 and E6 at a quarter of the precision; q -> q^4 afterwards.
  std::vector<SharedSeries> p4(max4 + 1), p6(max6 + 1);
  if (max4 >= 1) {
    p4[1] = share(eis_level1(4, quarter, ring, true));
    for (unsigned i = 2; i <= max4; ++i) p4[i] = share(ps_mul(*p4[i - 1], *p4[1]));
  }
  if (max6 >= 1) {
    p6[1] = share(eis_level1(6, quarter, ring, true));
    for (unsigned i = 2; i <= max6; ++i) p6[i] = share(ps_mul(*p6[i - 1], *p6[1]));
  }
  SharedSeries partners[2];
  if (even) {
    if (need[0]) partners[0] = share(theta(prec, ring));
    if (need[1]) partners[1] = share(cohen_eisenstein(2, prec, ring));
  } else {
    if (need[0]) partners[0] = share(cohen_eisenstein(3, prec, ring));
    if (need[1]) partners[1] = share(cohen_eisenstein(5, prec, ring));
  }

  OrderedRunner runner(sink);
  for (const auto& t : terms) {
    SharedSeries a = t.e4 ? p4[t.e4] : nullptr;
    SharedSeries b = t.e6 ? p6[t.e6] : nullptr;
    SharedSeries partner = partners[t.partner];
    runner.submit([=] {
      LabeledForm out{*partner, weight, kohnen_label(t, even)};
      if (!a && !b) return out;
      QExpansion mono = (a && b) ? ps_mul(*a, *b) : (a ? *a : *b);
      out.series = ps_mul(ps_truncate(ps_vshift(mono, 4), prec), *partner);
      return out;
    });
  }
  runner.flush();
}

FormBasis kohnen_basis(HalfWeight w, std::size_t prec, const CoeffRing& ring) {
  return collect(w, Flavor::Plus, Construction::Kohnen,
                 [&](const FormSink& s) { kohnen_forms(w, prec, ring, s); });
}

// --- Rankin-Cohen basis --------------------------------------------------------

QExpansion rc_bracket(const QExpansion& f, const mpq_class& kf, const QExpansion& g,
                      const mpq_class& kg, unsigned n) {
  if (!(f.ring() == g.ring())) throw RingMismatch();
  const CoeffRing& R = f.ring();
  const bool scale_g = g.nonzero_count() * f.prec() <= f.nonzero_count() * g.prec();
  // g^{(j)} for j = 0..n, and f^{(i)} built on the fly.
  std::vector<QExpansion> gd{g};
  for (unsigned j = 1; j <= n; ++j) gd.push_back(ps_derive(gd.back()));
  std::optional<QExpansion> acc;
  QExpansion fd = f;
  for (unsigned i = 0; i <= n; ++i) {
    const unsigned j = n - i;  // term f^{(n-j)} g^{(j)}
    mpq_class c = half_binomial(n + kf - 1, j) * half_binomial(n + kg - 1, i);
    if (j % 2) c = -c;
    if (c != 0) {
      const RingElem ce(R, c);
      QExpansion term = scale_g ? ps_mul(fd, ps_scale(gd[j], ce)) : ps_mul(ps_scale(fd, ce), gd[j]);
      acc = acc ? ps_add(*acc, term) : std::move(term);
    }
    if (i < n) fd = ps_derive(fd);
  }
  if (!acc) return QExpansion::zero(R, std::min(f.prec(), g.prec()));
  return *acc;
}

void rankin_cohen_forms(HalfWeight w, std::size_t prec, const CoeffRing& ring, const FormSink& sink) {
  const unsigned k = w.k;
  const bool even = k % 2 == 0;
  if (even && k < 4) throw InvalidWeight("even-k Rankin-Cohen basis needs k >= 4, got " + std::to_string(k));
  if (!even && k < 3) throw InvalidWeight("odd-k Rankin-Cohen basis needs k >= 3, got " + std::to_string(k));
  require_prec(prec, w, "Rankin-Cohen basis");

  struct Spec {
    unsigned n;
    unsigned eis_weight;
    int slot;  // -1 for level 1, else CharSlot
  };
  std::vector<Spec> specs;
  if (even) {
    const std::size_t d = dim_plus(w);
    for (unsigned n = 0; n < d; ++n) {
      if (k < 2 * n + 4)
        throw InvalidWeight("Rankin-Cohen basis of weight " + w.to_string() +
                            " needs an Eisenstein series of weight < 4");
      specs.push_back({n, k - 2 * n, -1});
    }
  } else {
    const std::size_t d = dim_full(w);
    for (unsigned n = 0; specs.size() < d; ++n) {
      if (k < 2 * n + 1)
        throw InvalidWeight("Rankin-Cohen basis of weight " + w.to_string() +
                            " runs out of Eisenstein weights");
      specs.push_back({n, k - 2 * n, static_cast<int>(CharSlot::OneChi)});
      if (specs.size() < d) specs.push_back({n, k - 2 * n, static_cast<int>(CharSlot::ChiOne)});
    }
  }

  const auto th = share(theta(prec, ring));
  const std::size_t check_len = std::min(prec, 4 * independence_threshold(w));
  std::vector<QExpansion> prefixes;
  const mpq_class weight = w.value();
  const mpq_class half(1, 2);
  OrderedRunner runner([&](LabeledForm&& f) {
    prefixes.push_back(ps_truncate(f.series, check_len));
    sink(std::move(f));
  });
  for (const auto& s : specs) {
    runner.submit([=] {
      std::string name;
      QExpansion e = [&] {
        if (s.slot < 0) {
          name = "E" + std::to_string(s.eis_weight) + "(4z)";
          const std::size_t quarter = (prec + 3) / 4;
          return ps_truncate(ps_vshift(eis_level1(s.eis_weight, quarter, ring, true), 4), prec);
        }
        const auto slot = static_cast<CharSlot>(s.slot);
        name = "E" + std::to_string(s.eis_weight) + (slot == CharSlot::OneChi ? "^(1,chi)" : "^(chi,1)");
        return eis_char(s.eis_weight, slot, prec, ring);
      }();
      return LabeledForm{rc_bracket(e, mpq_class(s.eis_weight), *th, half, s.n), weight,
                         "[" + name + ",theta]_" + std::to_string(s.n)};
    });
  }
  runner.flush();
  check_independent(prefixes, w, "Rankin-Cohen forms");
}

FormBasis rankin_cohen_basis(HalfWeight w, std::size_t prec, const CoeffRing& ring) {
  const Flavor flavor = w.k % 2 == 0 ? Flavor::Plus : Flavor::Full;
  return collect(w, flavor, Construction::RankinCohen,
                 [&](const FormSink& s) { rankin_cohen_forms(w, prec, ring, s); });
}

}  // namespace halfint
