// halfint: q-expansions of bases of M_{k+1/2}(4) and the plus space.
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "halfint/bases.hpp"
#include "halfint/bench.hpp"
#include "halfint/errors.hpp"
#include "halfint/formats.hpp"
#include "halfint/hecke.hpp"
#include "halfint/numth.hpp"

using namespace halfint;

namespace {

constexpr int kUsage = 2;
constexpr int kFailure = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

HalfWeight weight_arg(const std::string& text) {
  try {
    return HalfWeight::parse(text);
  } catch (const InvalidWeight& e) {
    throw UsageError(e.what());
  }
}

CoeffRing ring_arg(const std::string& text) {
  try {
    return CoeffRing::parse(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

template <class F>
auto usage_guard(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

// Output stream for --out, or stdout when empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw Error("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Plus-space part of the Cohen basis. Fields project directly; other rings
// reuse the combination found over the rationals.
FormBasis cohen_plus(HalfWeight w, std::size_t prec, const CoeffRing& ring) {
  const std::size_t lin = std::min<std::size_t>(prec, std::max<std::size_t>(4 * w.k + 40, independence_threshold(w)));
  if (ring.is_field()) return plus_project(cohen_basis(w, prec, ring), lin);
  if (lin < independence_threshold(w))
    throw PrecisionTooLow("plus-space projection needs precision >= " +
                          std::to_string(independence_threshold(w)));
  const auto kern = plus_kernel(cohen_basis(w, lin, CoeffRing::rationals()), lin);
  std::vector<std::vector<mpq_class>> combos;
  for (const auto& v : kern) {
    combos.emplace_back();
    for (const auto& x : v) combos.back().push_back(x.rational());
  }
  FormBasis out = combine(cohen_basis(w, prec, ring), combos, Flavor::Plus, Construction::Projected);
  for (const auto& f : out.forms)
    if (!is_plus(f.series, w)) throw PrecisionTooLow("projection leaves the plus space; raise the precision");
  return out;
}

FormBasis build_basis(Construction c, Flavor flavor, HalfWeight w, std::size_t prec, const CoeffRing& ring) {
  if (c == Construction::Cohen) return flavor == Flavor::Full ? cohen_basis(w, prec, ring) : cohen_plus(w, prec, ring);
  if (natural_flavor(c, w) != flavor)
    throw UsageError("the " + to_string(c) + " basis in weight " + w.to_string() + " spans the " +
                     to_string(natural_flavor(c, w)) + " space, not the " + to_string(flavor) + " space");
  return c == Construction::Kohnen ? kohnen_basis(w, prec, ring) : rankin_cohen_basis(w, prec, ring);
}

Flavor flavor_arg(const std::string& s) { return s == "plus" ? Flavor::Plus : Flavor::Full; }

std::string poly_text(const RationalPoly& p) {
  std::string s;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    const mpq_class& c = p[i];
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    const mpq_class a = abs(c);
    if (a != 1 || i == 0) s += a.get_str();
    if (i > 0) s += (a != 1 ? "*x" : "x") + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return s.empty() ? "0" : s;
}

template <class T>
std::vector<T> parse_list(const std::string& text, T (*one)(const std::string&)) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(one(item));
  if (out.empty()) throw UsageError("empty list '" + text + "'");
  return out;
}

std::size_t size_arg(const std::string& s) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("expected a nonnegative integer, got '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-expansions of bases of half-integral weight modular forms on Gamma0(4)"};
  app.require_subcommand(1);

  unsigned threads = 1;
  std::size_t schoolbook_max = MulConfig{}.schoolbook_max;
  double sparse_density = MulConfig{}.sparse_density;
  app.add_option("--threads", threads, "worker threads for building basis elements")
      ->envname("HALFINT_THREADS")
      ->capture_default_str();
  app.add_option("--schoolbook-max", schoolbook_max,
                 "schoolbook multiplication when the shorter factor has at most this many terms")
      ->envname("HALFINT_SCHOOLBOOK_MAX")
      ->capture_default_str();
  app.add_option("--sparse-density", sparse_density,
                 "sparse multiplication when a factor's nonzero fraction is at most this")
      ->envname("HALFINT_SPARSE_DENSITY")
      ->capture_default_str();

  // basis
  std::string weight, basis = "cohen", space = "full", ring = "q", format = "csv", out;
  std::size_t prec = 100;
  auto* cmd_basis = app.add_subcommand("basis", "write a basis of M_{k+1/2}(4) or of its plus space");
  cmd_basis->add_option("--weight", weight, "weight, e.g. 13/2")->required();
  cmd_basis->add_option("--basis", basis, "cohen | kohnen | rankin-cohen")
      ->check(CLI::IsMember({"cohen", "kohnen", "rankin-cohen"}))
      ->capture_default_str();
  cmd_basis->add_option("--space", space, "full | plus")->check(CLI::IsMember({"full", "plus"}))->capture_default_str();
  cmd_basis->add_option("--prec", prec, "number of coefficients")->capture_default_str();
  cmd_basis->add_option("--ring", ring, "q | fp:<p> | padic:<p>:<m>")->capture_default_str();
  cmd_basis->add_option("--format", format, "csv | records")->check(CLI::IsMember({"csv", "records"}))->capture_default_str();
  cmd_basis->add_option("--out", out, "output file (default stdout)");

  // eigenforms
  std::string eweight, primes = "2", ebasis, espace = "plus", ering = "q", eformat = "records", eout, report;
  std::size_t low_prec = 0, eprec = 100;
  auto* cmd_eig = app.add_subcommand("eigenforms", "Hecke eigenforms from a low-precision Hecke matrix");
  cmd_eig->add_option("--weight", eweight, "weight, e.g. 13/2")->required();
  cmd_eig->add_option("--primes", primes, "comma-separated primes; the first one labels the eigenforms")
      ->capture_default_str();
  cmd_eig->add_option("--basis", ebasis, "cohen | kohnen | rankin-cohen (default kohnen for plus, cohen for full)")
      ->check(CLI::IsMember({"cohen", "kohnen", "rankin-cohen"}));
  cmd_eig->add_option("--space", espace, "full | plus")->check(CLI::IsMember({"full", "plus"}))->capture_default_str();
  cmd_eig->add_option("--low-prec", low_prec, "coefficients used for the Hecke matrix (default k + 10)");
  cmd_eig->add_option("--prec", eprec, "precision of the written eigenforms")->capture_default_str();
  cmd_eig->add_option("--ring", ering, "ring of the written eigenforms")->capture_default_str();
  cmd_eig->add_option("--format", eformat, "csv | records")->check(CLI::IsMember({"csv", "records"}))->capture_default_str();
  cmd_eig->add_option("--out", eout, "eigenform expansions (default: not written)");
  cmd_eig->add_option("--report", report, "eigenvalue report (default stdout)");

  // bench
  std::string weights = "25/2", precs = "10000", bases = "cohen,kohnen,rankin-cohen", bring = "q", bout;
  unsigned reps = 1;
  auto* cmd_bench = app.add_subcommand("bench", "time basis construction; writes CSV");
  cmd_bench->add_option("--weights", weights, "comma-separated weights")->capture_default_str();
  cmd_bench->add_option("--precs", precs, "comma-separated precisions")->capture_default_str();
  cmd_bench->add_option("--bases", bases, "comma-separated bases")->capture_default_str();
  cmd_bench->add_option("--ring", bring, "coefficient ring")->capture_default_str();
  cmd_bench->add_option("--reps", reps, "repetitions; the median time is reported")->capture_default_str();
  cmd_bench->add_option("--out", bout, "CSV file (default stdout)");

  // fit
  std::string fin, by = "weight", points;
  auto* cmd_fit = app.add_subcommand("fit", "fit t = b x^a to benchmark timings");
  cmd_fit->add_option("--in", fin, "bench CSV; rows are grouped by all columns except x and time");
  cmd_fit->add_option("--by", by, "x axis: weight | prec")->check(CLI::IsMember({"weight", "prec"}))->capture_default_str();
  cmd_fit->add_option("--points", points, "explicit points x:t,x:t,... instead of --in");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    set_worker_threads(threads);
    set_mul_config({schoolbook_max, sparse_density});

    if (*cmd_basis) {
      const HalfWeight w = weight_arg(weight);
      const CoeffRing R = ring_arg(ring);
      const Construction c = usage_guard([&] { return parse_construction(basis); });
      const Flavor fl = flavor_arg(space);
      if (c == Construction::Kohnen && fl == Flavor::Full)
        throw UsageError("the kohnen basis spans the plus space; use --space plus");
      const auto t0 = std::chrono::steady_clock::now();
      const FormBasis b = build_basis(c, fl, w, prec, R);
      const double secs = since(t0);
      Output o(out);
      write_forms(o.stream(), b.forms, parse_format(format));
      std::cerr << "weight " << w.to_string() << ", " << to_string(b.flavor) << " space, "
                << to_string(b.construction) << ": dimension " << b.size() << ", " << secs << " s\n";
      return 0;
    }

    if (*cmd_eig) {
      const HalfWeight w = weight_arg(eweight);
      const CoeffRing R = ring_arg(ering);
      const Flavor fl = flavor_arg(espace);
      const Construction c = ebasis.empty() ? (fl == Flavor::Plus ? Construction::Kohnen : Construction::Cohen)
                                            : usage_guard([&] { return parse_construction(ebasis); });
      if (c == Construction::Kohnen && fl == Flavor::Full)
        throw UsageError("the kohnen basis spans the plus space; use --space plus");
      const auto ps = parse_list<std::size_t>(primes, size_arg);
      for (auto p : ps) {
        if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
        if (p == 2 && fl == Flavor::Full)
          throw UsageError("T_4 is only provided on the plus space; use odd primes for the full space");
      }
      const std::size_t lp = low_prec ? low_prec : independence_threshold(w);
      std::size_t pmax = 0;
      for (auto p : ps) pmax = std::max(pmax, p);
      const auto t0 = std::chrono::steady_clock::now();
      const FormBasis low = build_basis(c, fl, w, pmax * pmax * lp, CoeffRing::rationals());
      std::vector<EigenData> data;
      for (auto p : ps) data.push_back(eigenforms(low, p, lp));

      Output rep(report);
      auto& os = rep.stream();
      os << "weight " << w.to_string() << ", " << to_string(low.flavor) << " space, " << to_string(low.construction)
         << " basis, dimension " << low.size() << ", low precision " << lp << "\n";
      for (const auto& d : data) {
        os << "T_" << d.p * d.p << " charpoly: " << poly_text(d.charpoly) << "\n";
        for (const auto& es : d.rational) {
          os << "  eigenvalue " << es.eigenvalue.get_str() << " (multiplicity " << es.multiplicity << ")\n";
          for (const auto& v : es.basis) {
            os << "    vector [";
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].to_string();
            os << "]\n";
          }
        }
        for (const auto& u : d.unsplit)
          os << "  irrational factor " << poly_text(u.poly) << " (multiplicity " << u.multiplicity << ")\n";
      }
      if (!eout.empty()) {
        const FormBasis high = build_basis(c, fl, w, eprec, R);
        const FormBasis eig = apply_eigenforms(data.front(), high);
        Output o(eout);
        write_forms(o.stream(), eig.forms, parse_format(eformat));
      }
      std::cerr << "eigenforms: " << since(t0) << " s\n";
      return 0;
    }

    if (*cmd_bench) {
      const auto ws = parse_list<HalfWeight>(weights, weight_arg);
      const auto ds = parse_list<std::size_t>(precs, size_arg);
      const auto bs = parse_list<Construction>(bases, +[](const std::string& s) {
        return usage_guard([&] { return parse_construction(s); });
      });
      const CoeffRing R = ring_arg(bring);
      Output o(bout);
      o.stream() << bench_csv_header() << "\n";
      for (const auto& w : ws)
        for (auto d : ds)
          for (auto b : bs) {
            const BenchRecord r = run_bench(b, w, d, R, reps);
            o.stream() << to_csv_row(r) << std::endl;
            if (!bout.empty() && bout != "-") std::cerr << to_csv_row(r) << "\n";
          }
      return 0;
    }

    if (*cmd_fit) {
      std::map<std::string, std::vector<std::pair<double, double>>> groups;
      if (!points.empty()) {
        std::stringstream ss(points);
        std::string item;
        while (std::getline(ss, item, ',')) {
          const auto colon = item.find(':');
          if (colon == std::string::npos) throw UsageError("points are written x:t, got '" + item + "'");
          try {
            groups["points"].emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
          } catch (const std::logic_error&) {
            throw UsageError("bad point '" + item + "'");
          }
        }
      } else {
        if (fin.empty()) throw UsageError("fit needs --in or --points");
        std::ifstream in(fin);
        if (!in) throw Error("cannot open '" + fin + "'");
        for (const auto& r : read_bench_csv(in)) {
          const bool by_weight = by == "weight";
          std::string key = r.basis + "," + r.flavor + "," + r.ring + "," +
                            (by_weight ? "prec=" + std::to_string(r.prec) : "k=" + std::to_string(r.weight_k));
          groups[key].emplace_back(by_weight ? double(r.weight_k) : double(r.prec), r.seconds);
        }
      }
      std::cout << "group,exponent,scale,residual\n";
      for (const auto& [key, pts] : groups) {
        const PowerLawFit f = fit_powerlaw(pts);
        std::cout << key << "," << f.exponent << "," << f.scale << "," << f.residual << "\n";
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
