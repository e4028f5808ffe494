// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "halfint/bases.hpp"
#include "halfint/bench.hpp"
#include "halfint/forms.hpp"
#include "halfint/hecke.hpp"
#include "halfint/numth.hpp"
#include "oracles.hpp"

using namespace halfint;

namespace {

const CoeffRing Q = CoeffRing::rationals();

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void fail(const std::string& why) {
    if (ok) note.str("");
    ok = false;
    note << why << "; ";
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Direct check of the plus-space vanishing pattern.
bool plus_pattern(const QExpansion& f, unsigned k) {
  for (std::size_t n = 0; n < f.prec(); ++n) {
    const unsigned r = static_cast<unsigned>((k % 2 ? 4 - n % 4 : n % 4) % 4);
    if ((r == 2 || r == 3) && !f.coeff(n).is_zero()) return false;
  }
  return true;
}

std::vector<QExpansion> all_series(const FormBasis& b) { return b.series(); }

std::size_t stacked_rank(const FormBasis& a, const FormBasis& b, std::size_t prec) {
  auto s = all_series(a);
  for (auto& f : all_series(b)) s.push_back(f);
  return span_rank(s, prec);
}

void criterion1(Outcome& o) {
  for (unsigned k = 2; k <= 40; ++k) {
    const HalfWeight w{k};
    const std::size_t prec = 4 * k + 10;
    const std::size_t level1 = oracle::dim_level1(2 * k);
    const auto cohen = cohen_basis(w, prec, Q);
    if (cohen.size() != k / 2 + 1) o.fail("cohen size at k=" + std::to_string(k));
    if (plus_project(cohen, prec).size() != level1) o.fail("projected size at k=" + std::to_string(k));
    if (kohnen_basis(w, prec, Q).size() != level1) o.fail("kohnen size at k=" + std::to_string(k));
    if (k % 2 == 0 && k >= 4 && rankin_cohen_basis(w, prec, Q).size() != level1)
      o.fail("rankin-cohen size at k=" + std::to_string(k));
  }
  if (cohen_basis(HalfWeight{6}, 50, Q).size() != 4) o.fail("13/2 full space is not 4-dimensional");
  if (o.ok) o.note << "k=2..40";
}

void criterion2(Outcome& o) {
  for (unsigned k = 2; k <= 40; ++k) {
    const HalfWeight w{k};
    const std::size_t prec = 4 * k + 10;
    const auto cohen = cohen_basis(w, prec, Q);
    const auto proj = plus_project(cohen, prec);
    const auto kohnen = kohnen_basis(w, prec, Q);
    const std::size_t d = proj.size();
    if (span_rank(kohnen.series(), prec) != d || stacked_rank(kohnen, proj, prec) != d)
      o.fail("kohnen vs projected at k=" + std::to_string(k));
    if (k < 3 || (k % 2 == 0 && k < 4)) continue;
    const auto rc = rankin_cohen_basis(w, prec, Q);
    const auto& ref = k % 2 == 0 ? proj : cohen;
    if (span_rank(rc.series(), prec) != ref.size() || stacked_rank(rc, ref, prec) != ref.size())
      o.fail("rankin-cohen vs cohen at k=" + std::to_string(k));
  }
  if (o.ok) o.note << "k=2..40 at 4k+10";
}

void criterion3(Outcome& o) {
  const std::size_t count = 2000;
  const auto th = theta(count, Q);
  QExpansion p = th;
  for (unsigned a = 2; a <= 5; ++a) {
    p = ps_mul(p, th);
    const auto ref = oracle::square_reps(a, count);
    for (std::size_t n = 0; n < count; ++n) {
      if (p.coeff(n).rational() != mpq_class(ref[n])) {
        o.fail("theta^" + std::to_string(a) + " at n=" + std::to_string(n));
        break;
      }
    }
  }
  if (o.ok) o.note << "a=2..5, n<2000";
}

void criterion4(Outcome& o) {
  const std::size_t count = 500;
  const auto e4 = eis_level1(4, count, Q, true);
  const auto e6 = eis_level1(6, count, Q, true);
  const auto diff = ps_sub(ps_pow(e4, 3), ps_pow(e6, 2));
  const auto d = ps_scale(diff, RingElem(Q, mpq_class(1, 1728)));
  const auto ref = oracle::delta(count);
  for (std::size_t n = 0; n < count; ++n)
    if (d.coeff(n).rational() != mpq_class(ref[n])) {
      o.fail("E4^3-E6^2 differs at n=" + std::to_string(n));
      break;
    }
  const auto br = rc_bracket(e4, 4, e6, 6, 1);
  const mpq_class c = br.coeff(1).rational();
  if (c == 0) o.fail("bracket has zero q coefficient");
  for (std::size_t n = 0; n < count && c != 0; ++n)
    if (br.coeff(n).rational() != c * ref[n]) {
      o.fail("bracket not proportional at n=" + std::to_string(n));
      break;
    }
  if (o.ok) o.note << "500 coefficients, bracket = " << c.get_str() << " * Delta";
}

void criterion5(Outcome& o) {
  const auto tau = oracle::delta(4);
  const HalfWeight w{6};
  const std::size_t low = independence_threshold(w);
  const std::size_t prec = 9 * low;
  const auto cohen = cohen_basis(w, prec, Q);
  const std::vector<std::pair<std::string, FormBasis>> spaces{
      {"projected", plus_project(cohen, prec)},
      {"kohnen", kohnen_basis(w, prec, Q)},
      {"rankin-cohen", rankin_cohen_basis(w, prec, Q)},
  };
  for (std::uint64_t p : {2, 3}) {
    const mpq_class eis(oracle::sigma(11, p));
    const mpq_class cusp(tau[p]);
    for (const auto& [name, space] : spaces) {
      const auto data = eigenforms(space, p, low);
      std::vector<mpq_class> got;
      for (const auto& e : data.rational)
        for (unsigned m = 0; m < e.multiplicity; ++m) got.push_back(e.eigenvalue);
      std::sort(got.begin(), got.end());
      std::vector<mpq_class> want{eis, cusp};
      std::sort(want.begin(), want.end());
      if (got != want || !data.unsplit.empty())
        o.fail(name + " T" + std::to_string(p * p) + " eigenvalues");
    }
    if (o.ok) o.note << "T" << p * p << " {" << eis.get_str() << ", " << cusp.get_str() << "} ";
  }
}

void criterion6(Outcome& o) {
  const std::size_t prec = 1000;
  for (unsigned k = 2; k <= 40; ++k) {
    const HalfWeight w{k};
    std::vector<std::pair<std::string, FormBasis>> spaces;
    spaces.emplace_back("projected", plus_project(cohen_basis(w, prec, Q), prec));
    spaces.emplace_back("kohnen", kohnen_basis(w, prec, Q));
    if (k % 2 == 0 && k >= 4) spaces.emplace_back("rankin-cohen", rankin_cohen_basis(w, prec, Q));
    for (const auto& [name, space] : spaces)
      for (const auto& f : space.forms)
        if (f.series.prec() != prec || !plus_pattern(f.series, k))
          o.fail(name + " at k=" + std::to_string(k) + " (" + f.label + ")");
  }
  if (o.ok) o.note << "k=2..40 at D=1000";
}

void criterion7(Outcome& o) {
  const auto F = CoeffRing::prime_field(2147483647);
  const HalfWeight w{6};
  const auto q = cohen_basis(w, 10000, Q);
  const auto f = cohen_basis(w, 10000, F);
  if (q.size() != f.size()) o.fail("sizes differ");
  for (std::size_t i = 0; i < q.size() && i < f.size(); ++i)
    if (!(ps_reduce(q.forms[i].series, F) == f.forms[i].series)) o.fail("form " + std::to_string(i));
  if (o.ok) o.note << "D=10000 mod 2147483647";
}

void criterion8(Outcome& o) {
  const HalfWeight w{6};
  for (auto [prec, limit] : {std::pair<std::size_t, double>{100000, 30}, {1000000, 300}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto b = cohen_basis(w, prec, Q);
    const double t = seconds_since(t0);
    if (b.size() != 4) o.fail("wrong size");
    if (t > limit) o.fail("D=" + std::to_string(prec) + " took " + std::to_string(t) + " s");
    char buf[96];
    std::snprintf(buf, sizeof buf, "D=%zu %.2f s (limit %.0f) ", prec, t, limit);
    o.note << buf;
  }
}

void criterion9(Outcome& o) {
  const std::vector<Construction> kinds{Construction::Cohen, Construction::Kohnen, Construction::RankinCohen};
  std::vector<double> exps;
  for (auto c : kinds) {
    std::vector<std::pair<double, double>> pts;
    for (unsigned k : {12u, 20u, 50u, 100u})
      pts.emplace_back(k, run_bench(c, HalfWeight{k}, 100000, Q, 1).seconds);
    exps.push_back(fit_powerlaw(pts).exponent);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "k-exponents cohen %.2f kohnen %.2f rankin-cohen %.2f; ", exps[0], exps[1], exps[2]);
  o.note << buf;
  for (int i = 0; i < 2; ++i)
    if (exps[i] < 1.3 || exps[i] > 2.4) o.fail(to_string(kinds[i]) + " k-exponent out of range");
  if (!(exps[2] > exps[1])) o.fail("rankin-cohen k-exponent not above kohnen");

  std::string dnote = "D-exponents";
  for (auto c : kinds) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t d : {10000u, 100000u, 1000000u})
      pts.emplace_back(static_cast<double>(d), run_bench(c, HalfWeight{20}, d, Q, 1).seconds);
    const double a = fit_powerlaw(pts).exponent;
    std::snprintf(buf, sizeof buf, " %s %.2f", to_string(c).c_str(), a);
    dnote += buf;
    if (a < 1.0 || a > 1.6) o.fail(to_string(c) + " D-exponent out of range");
  }
  o.note << dnote;
}

void criterion10(Outcome& o) {
  const std::size_t prec = 2000;
  const std::vector<std::pair<unsigned, unsigned>> pairs{{24, 48}, {50, 100}};
  for (auto c : {Construction::Cohen, Construction::Kohnen, Construction::RankinCohen}) {
    for (auto [k1, k2] : pairs) {
      const double m1 = static_cast<double>(run_bench(c, HalfWeight{k1}, prec, Q, 1).mults);
      const double m2 = static_cast<double>(run_bench(c, HalfWeight{k2}, prec, Q, 1).mults);
      const double r = m2 / m1;
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s %u->%u %.2f; ", to_string(c).c_str(), k1, k2, r);
      o.note << buf;
      const bool ok = c == Construction::RankinCohen ? (r >= 3 && r <= 5) : r <= 2.5;
      if (!ok) o.fail(std::string("ratio ") + buf);
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> criteria{
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10,
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.ok;
    std::printf("criterion %zu: %s (%s) [%.1f s]\n", i + 1, o.ok ? "PASS" : "FAIL", o.note.str().c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
