#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "halfint/bases.hpp"
#include "halfint/coeff_ring.hpp"
#include "halfint/forms.hpp"

namespace halfint {

enum class Format { Csv, Records };

Format parse_format(std::string_view text);

// Header "n,f1,f2,..." then one row per coefficient index. All forms must
// share the ring and precision.
void write_csv(std::ostream& out, const std::vector<LabeledForm>& forms);
// Labels and weights are not stored in CSV; they come back empty.
std::vector<LabeledForm> read_csv(std::istream& in, const CoeffRing& ring);

// One JSON object per line:
//   {"label": ..., "weight": "13/2", "ring": "q", "prec": D, "coeffs": ["1", ...]}
void write_records(std::ostream& out, const std::vector<LabeledForm>& forms);
std::vector<LabeledForm> read_records(std::istream& in);

void write_forms(std::ostream& out, const std::vector<LabeledForm>& forms, Format format);

// "13/2", "6" or "-1/2"; throws ParseError.
mpq_class parse_rational(std::string_view text);

}  // namespace halfint
