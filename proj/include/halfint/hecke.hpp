#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "halfint/bases.hpp"
#include "halfint/exactlinalg.hpp"
#include "halfint/forms.hpp"
#include "halfint/qseries.hpp"

namespace halfint {

// T_{p^2} in weight k + 1/2:
//   b_n = a(p^2 n) + ((-1)^k n | p) p^{k-1} a(n) + p^{2k-1} a(n/p^2),
// the last term present only when p^2 | n. For p = 2 the symbol is the
// Kronecker symbol and b_n is set to 0 when (-1)^k n = 2, 3 mod 4, which
// gives Kohnen's operator on the plus space; it is not a Hecke operator on
// the full space.
// Needs prec(f) >= p^2 out_prec.
QExpansion hecke_tp2(const QExpansion& f, HalfWeight w, std::uint64_t p, std::size_t out_prec);

// Matrix M with T_{p^2} f_i = sum_j M_ij f_j, solved from the first
// `low_prec` coefficients. Throws NotStable if some image is outside the span.
ExactMatrix hecke_matrix(const FormBasis& space, std::uint64_t p, std::size_t low_prec);

struct EigenData {
  FormBasis space;  // truncated to p^2 low_prec
  std::uint64_t p = 0;
  std::size_t low_prec = 0;
  ExactMatrix matrix;
  RationalPoly charpoly;
  // Left eigenvectors: the combination sum_i v_i f_i is an eigenform.
  std::vector<RationalEigenspace> rational;
  std::vector<PolyFactor> unsplit;
};

// Hecke matrix and its rational eigenspaces. Over the rationals only; the
// combination vectors can then be applied to the same basis computed at
// any precision and in any ring (see apply_eigenforms).
EigenData eigenforms(const FormBasis& space, std::uint64_t p, std::size_t low_prec);

// One row per eigenvector, in the order of EigenData::rational.
std::vector<std::vector<mpq_class>> eigen_combinations(const EigenData& data);

// Eigenforms as combinations of `basis`, which must list the same forms as
// data.space (at any precision and in any ring). Labels name the eigenvalue.
FormBasis apply_eigenforms(const EigenData& data, const FormBasis& basis);

}  // namespace halfint
