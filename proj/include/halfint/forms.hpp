#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "halfint/coeff_ring.hpp"
#include "halfint/qseries.hpp"

namespace halfint {

// Half-integral weight k + 1/2, stored by k.
struct HalfWeight {
  unsigned k = 0;

  mpq_class value() const { return mpq_class(2 * k + 1, 2); }
  // "13/2" for k = 6.
  std::string to_string() const { return std::to_string(2 * k + 1) + "/2"; }
  // Accepts "<odd>/2" only.
  static HalfWeight parse(std::string_view text);

  friend bool operator==(const HalfWeight&, const HalfWeight&) = default;
};

// A series together with its weight (possibly integral) and a provenance
// label such as "theta^9*F2^1".
struct LabeledForm {
  QExpansion series;
  mpq_class weight;
  std::string label;
};

// 1 + 2 sum_{n>=1} q^{n^2}.
QExpansion theta(std::size_t prec, const CoeffRing& ring);

// sum_{n odd} sigma_1(n) q^n, weight 2 on Gamma_0(4).
QExpansion f2(std::size_t prec, const CoeffRing& ring);

// Level 1 Eisenstein series of even weight k >= 4: a_0 = -B_k/(2k) and
// a_n = sigma_{k-1}(n), or scaled to a_0 = 1 when `normalized` is set.
QExpansion eis_level1(unsigned k, std::size_t prec, const CoeffRing& ring, bool normalized);

// Character slot of the weight-k Eisenstein series on Gamma_0(4) with
// nebentypus chi_{-4}, named (character on n/d, character on d).
//   OneChi: a_n = sum_{d|n} chi(d) d^{k-1},   a_0 = -B_k^chi / (2k)
//   ChiOne: a_n = sum_{d|n} chi(n/d) d^{k-1}, a_0 = 0
enum class CharSlot { OneChi, ChiOne };

// k must be odd.
QExpansion eis_char(unsigned k, CharSlot slot, std::size_t prec, const CoeffRing& ring);

// Cohen-Eisenstein series H_{k+1/2} for k in {2, 3, 5}: the element of the
// one-dimensional plus space M+_{k+1/2}(4) with a_0 = zeta(1-2k) = -B_{2k}/(2k).
QExpansion cohen_eisenstein(unsigned k, std::size_t prec, const CoeffRing& ring);

}  // namespace halfint
