#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "halfint/bases.hpp"
#include "halfint/coeff_ring.hpp"

namespace halfint {

struct BenchRecord {
  std::string basis;   // cohen | kohnen | rankin-cohen
  unsigned weight_k = 0;
  std::string flavor;  // full | plus
  std::string ring;    // ring descriptor
  std::size_t prec = 0;
  double seconds = 0;
  std::uint64_t mults = 0;
};

// "basis,weight_k,flavor,ring,prec,seconds,mults"
const std::string& bench_csv_header();
std::string to_csv_row(const BenchRecord& r);
BenchRecord parse_bench_row(std::string_view line);
std::vector<BenchRecord> read_bench_csv(std::istream& in);

// Flavor a construction produces in weight w: Cohen gives the full space,
// Kohnen the plus space, Rankin-Cohen the plus space for even k and the
// full space for odd k.
Flavor natural_flavor(Construction c, HalfWeight w);

// Parses "cohen", "kohnen" or "rankin-cohen".
Construction parse_construction(std::string_view text);

// Streams the basis once per repetition, discarding the forms as they are
// produced. seconds is the median wall time, mults the count of one run.
BenchRecord run_bench(Construction basis, HalfWeight w, std::size_t prec, const CoeffRing& ring,
                      unsigned reps);

struct PowerLawFit {
  double exponent = 0;  // a in t = b x^a
  double scale = 0;     // b
  double residual = 0;  // sum of squared residuals of log t
};

// Least squares line through (log x, log t). Needs at least two distinct x
// and positive values; throws DegenerateInput otherwise.
PowerLawFit fit_powerlaw(std::span<const std::pair<double, double>> points);

}  // namespace halfint
