#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "halfint/coeff_ring.hpp"
#include "halfint/exactlinalg.hpp"
#include "halfint/forms.hpp"
#include "halfint/qseries.hpp"

namespace halfint {

enum class Flavor { Full, Plus };
enum class Construction { Cohen, Kohnen, RankinCohen, Projected };

std::string to_string(Flavor f);
std::string to_string(Construction c);

// Forms of one weight, sharing ring and precision, in a fixed order.
struct FormBasis {
  HalfWeight weight;
  Flavor flavor = Flavor::Full;
  Construction construction = Construction::Cohen;
  std::vector<LabeledForm> forms;

  std::size_t size() const { return forms.size(); }
  std::vector<QExpansion> series() const;
};

using FormSink = std::function<void(LabeledForm&&)>;

// Threads used to build independent basis elements concurrently (default 1).
// Output order never depends on this setting.
void set_worker_threads(unsigned n);
unsigned worker_threads();

// Number of monomials theta^a F2^b of weight k + 1/2: floor(k/2) + 1.
std::size_t dim_full(HalfWeight w);
// dim M_{2k}(1); requires k >= 2.
std::size_t dim_plus(HalfWeight w);

// Smallest linear-algebra precision accepted for kernels and independence
// checks in weight k + 1/2: k + 10 coefficients.
std::size_t independence_threshold(HalfWeight w);

// theta^a F2^b ordered by increasing b.
FormBasis cohen_basis(HalfWeight w, std::size_t prec, const CoeffRing& ring);
// Streams the same forms to `sink` in decreasing b, releasing intermediate
// powers as soon as they are used.
void cohen_forms(HalfWeight w, std::size_t prec, const CoeffRing& ring, const FormSink& sink);

// Left kernel of the matrix (a_n(f_i)) restricted to the indices n < lin_prec
// with (-1)^k n = 2, 3 mod 4.
std::vector<Vector> plus_kernel(const FormBasis& basis, std::size_t lin_prec);

// Basis of the plus space spanned inside `basis`, found with coefficients of
// index < lin_prec and checked on the full precision of the basis.
FormBasis plus_project(const FormBasis& basis, std::size_t lin_prec);

// sum_j c[i][j] f_j for every row c[i]; rational combinations are mapped
// into the ring of the basis.
FormBasis combine(const FormBasis& basis, const std::vector<std::vector<mpq_class>>& combos,
                  Flavor flavor, Construction construction);

// Kohnen basis of M+_{k+1/2}(4), k >= 2.
FormBasis kohnen_basis(HalfWeight w, std::size_t prec, const CoeffRing& ring);
void kohnen_forms(HalfWeight w, std::size_t prec, const CoeffRing& ring, const FormSink& sink);

// Rankin-Cohen bracket [f, g]_n for forms of weights kf and kg.
QExpansion rc_bracket(const QExpansion& f, const mpq_class& kf, const QExpansion& g,
                      const mpq_class& kg, unsigned n);

// Even k >= 4: [E_{k-2n}(4z), theta]_n for n < dim_plus(k), a plus-space
// basis. Odd k >= 3: the first dim_full(k) of [E^{1,chi}_{k-2n}, theta]_n,
// [E^{chi,1}_{k-2n}, theta]_n, n = 0, 1, ..., a basis of the full space.
// Throws IndependenceFailure if the forms are dependent.
FormBasis rankin_cohen_basis(HalfWeight w, std::size_t prec, const CoeffRing& ring);
void rankin_cohen_forms(HalfWeight w, std::size_t prec, const CoeffRing& ring, const FormSink& sink);

// a_n = 0 for every n < prec with (-1)^k n = 2, 3 mod 4.
bool is_plus(const QExpansion& f, HalfWeight w);

// Rank of the matrix of the first `prec` coefficients of the given series.
std::size_t span_rank(std::span<const QExpansion> forms, std::size_t prec);

}  // namespace halfint
