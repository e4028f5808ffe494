#include "halfint/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <set>

#include "halfint/errors.hpp"
#include "halfint/qseries.hpp"

namespace halfint {

const std::string& bench_csv_header() {
  static const std::string h = "basis,weight_k,flavor,ring,prec,seconds,mults";
  return h;
}

std::string to_csv_row(const BenchRecord& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.6f", r.seconds);
  return r.basis + "," + std::to_string(r.weight_k) + "," + r.flavor + "," + r.ring + "," +
         std::to_string(r.prec) + "," + secs + "," + std::to_string(r.mults);
}

BenchRecord parse_bench_row(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cells.emplace_back(line.substr(start, pos == line.npos ? line.npos : pos - start));
    if (pos == line.npos) break;
    start = pos + 1;
  }
  if (cells.size() != 7) throw ParseError("bench row needs 7 fields: '" + std::string(line) + "'");
  try {
    BenchRecord r;
    r.basis = cells[0];
    r.weight_k = static_cast<unsigned>(std::stoul(cells[1]));
    r.flavor = cells[2];
    r.ring = cells[3];
    r.prec = std::stoull(cells[4]);
    r.seconds = std::stod(cells[5]);
    r.mults = std::stoull(cells[6]);
    return r;
  } catch (const std::logic_error&) {
    throw ParseError("bad number in bench row '" + std::string(line) + "'");
  }
}

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != bench_csv_header())
    throw ParseError("bench CSV must start with the header '" + bench_csv_header() + "'");
  std::vector<BenchRecord> out;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(parse_bench_row(line));
  return out;
}

Flavor natural_flavor(Construction c, HalfWeight w) {
  switch (c) {
    case Construction::Cohen: return Flavor::Full;
    case Construction::Kohnen: return Flavor::Plus;
    case Construction::RankinCohen: return w.k % 2 == 0 ? Flavor::Plus : Flavor::Full;
    case Construction::Projected: return Flavor::Plus;
  }
  return Flavor::Full;
}

Construction parse_construction(std::string_view text) {
  if (text == "cohen") return Construction::Cohen;
  if (text == "kohnen") return Construction::Kohnen;
  if (text == "rankin-cohen") return Construction::RankinCohen;
  throw ParseError("unknown basis '" + std::string(text) + "' (expected cohen, kohnen or rankin-cohen)");
}

BenchRecord run_bench(Construction basis, HalfWeight w, std::size_t prec, const CoeffRing& ring,
                      unsigned reps) {
  reps = std::max(1u, reps);
  BenchRecord rec{to_string(basis), w.k, to_string(natural_flavor(basis, w)), ring.descriptor(), prec, 0, 0};
  std::vector<double> times;
  for (unsigned r = 0; r < reps; ++r) {
    const FormSink discard = [](LabeledForm&&) {};
    MultCounter counter;
    const auto t0 = std::chrono::steady_clock::now();
    switch (basis) {
      case Construction::Cohen: cohen_forms(w, prec, ring, discard); break;
      case Construction::Kohnen: kohnen_forms(w, prec, ring, discard); break;
      case Construction::RankinCohen: rankin_cohen_forms(w, prec, ring, discard); break;
      case Construction::Projected: throw Error("projected bases are not benchmarked");
    }
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    rec.mults = counter.count();
  }
  std::sort(times.begin(), times.end());
  const std::size_t m = times.size();
  rec.seconds = m % 2 ? times[m / 2] : (times[m / 2 - 1] + times[m / 2]) / 2;
  rec.seconds = std::max(rec.seconds, 1e-9);
  return rec;
}

PowerLawFit fit_powerlaw(std::span<const std::pair<double, double>> points) {
  std::set<double> xs;
  for (const auto& [x, t] : points) {
    if (!(x > 0) || !(t > 0)) throw DegenerateInput("power-law fit needs positive x and t");
    xs.insert(x);
  }
  if (xs.size() < 2) throw DegenerateInput("power-law fit needs at least two distinct x values");
  const double n = static_cast<double>(points.size());
  double mx = 0, my = 0;
  for (const auto& [x, t] : points) {
    mx += std::log(x);
    my += std::log(t);
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, t] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(t) - my);
  }
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.scale = std::exp(intercept);
  for (const auto& [x, t] : points) {
    const double r = std::log(t) - (intercept + fit.exponent * std::log(x));
    fit.residual += r * r;
  }
  return fit;
}

}  // namespace halfint
