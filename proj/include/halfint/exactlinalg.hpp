#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "halfint/coeff_ring.hpp"

namespace halfint {

using Vector = std::vector<RingElem>;

// Dense matrix over a CoeffRing, row-major.
class ExactMatrix {
 public:
  ExactMatrix(const CoeffRing& ring, std::size_t rows, std::size_t cols);
  static ExactMatrix from_rows(const CoeffRing& ring, const std::vector<Vector>& rows);
  static ExactMatrix from_rationals(const CoeffRing& ring,
                                    const std::vector<std::vector<mpq_class>>& rows);
  static ExactMatrix identity(const CoeffRing& ring, std::size_t n);

  const CoeffRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RingElem& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const RingElem& v);
  Vector row(std::size_t i) const;
  ExactMatrix transpose() const;

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  CoeffRing ring_;
  std::size_t rows_, cols_;
  std::vector<RingElem> entries_;
};

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
// Row vector times matrix.
Vector operator*(const Vector& v, const ExactMatrix& m);

// Basis of the left kernel {v : v M = 0}, as the rows of a reduced echelon
// matrix (leading entry of each vector is 1). Needs a field.
std::vector<Vector> kernel(const ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);

// Some x with x A = b, or nullopt when none exists.
std::optional<Vector> solve(const ExactMatrix& a, const Vector& b);

// Polynomials over the rationals, coefficients from the constant term up.
using RationalPoly = std::vector<mpq_class>;

RationalPoly charpoly(const ExactMatrix& t);

struct RationalEigenspace {
  mpq_class eigenvalue;
  unsigned multiplicity = 0;  // as a root of the characteristic polynomial
  std::vector<Vector> basis;  // left eigenvectors, v T = eigenvalue v
};

struct PolyFactor {
  RationalPoly poly;  // monic, degree >= 2, no rational roots
  unsigned multiplicity = 0;
};

struct EigenSplit {
  RationalPoly charpoly;
  std::vector<RationalEigenspace> rational;  // ascending eigenvalue
  // The remaining part of the characteristic polynomial, split into
  // square-free factors by multiplicity. A factor may be reducible over Q.
  std::vector<PolyFactor> unsplit;
};

EigenSplit eigen_split(const ExactMatrix& t);

// Distinct rational roots of a nonzero polynomial, ascending.
std::vector<mpq_class> rational_roots(const RationalPoly& p);

}  // namespace halfint
