#include "halfint/formats.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "halfint/errors.hpp"

namespace halfint {

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string weight_text(const mpq_class& w) { return w.get_str(); }

void require_uniform(const std::vector<LabeledForm>& forms) {
  for (const auto& f : forms) {
    if (!(f.series.ring() == forms[0].series.ring())) throw RingMismatch();
    if (f.series.prec() != forms[0].series.prec())
      throw Error("forms written together must share the precision");
  }
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "records") return Format::Records;
  throw ParseError("unknown format '" + std::string(text) + "' (expected csv or records)");
}

mpq_class parse_rational(std::string_view text) {
  mpq_class v;
  if (text.empty() || v.set_str(std::string(text), 10) != 0 || v.get_den() == 0)
    throw ParseError("cannot parse rational number '" + std::string(text) + "'");
  v.canonicalize();
  return v;
}

void write_csv(std::ostream& out, const std::vector<LabeledForm>& forms) {
  require_uniform(forms);
  out << "n";
  for (std::size_t i = 0; i < forms.size(); ++i) out << ",f" << i + 1;
  out << '\n';
  const std::size_t prec = forms.empty() ? 0 : forms[0].series.prec();
  std::string row;
  for (std::size_t n = 0; n < prec; ++n) {
    row = std::to_string(n);
    for (const auto& f : forms) {
      row += ',';
      row += f.series.coeff(n).to_string();
    }
    row += '\n';
    out << row;
  }
}

std::vector<LabeledForm> read_csv(std::istream& in, const CoeffRing& ring) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV input");
  const auto header = split(line, ',');
  if (header.empty() || header[0] != "n") throw ParseError("CSV header must start with 'n'");
  const std::size_t count = header.size() - 1;
  for (std::size_t i = 0; i < count; ++i)
    if (header[i + 1] != "f" + std::to_string(i + 1))
      throw ParseError("unexpected CSV column '" + header[i + 1] + "'");
  std::vector<std::vector<RingElem>> cols(count);
  std::size_t expect = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != count + 1)
      throw ParseError("CSV row " + std::to_string(expect) + " has " + std::to_string(cells.size()) +
                       " cells, expected " + std::to_string(count + 1));
    if (cells[0] != std::to_string(expect))
      throw ParseError("CSV rows must be numbered 0, 1, ...; found '" + cells[0] + "'");
    for (std::size_t i = 0; i < count; ++i) cols[i].push_back(RingElem::parse(ring, cells[i + 1]));
    ++expect;
  }
  std::vector<LabeledForm> out;
  for (auto& c : cols) out.push_back({QExpansion::from_elems(ring, c), 0, ""});
  return out;
}

void write_records(std::ostream& out, const std::vector<LabeledForm>& forms) {
  for (const auto& f : forms) {
    nlohmann::json j;
    j["label"] = f.label;
    j["weight"] = weight_text(f.weight);
    j["ring"] = f.series.ring().descriptor();
    j["prec"] = f.series.prec();
    auto& coeffs = j["coeffs"] = nlohmann::json::array();
    for (std::size_t n = 0; n < f.series.prec(); ++n) coeffs.push_back(f.series.coeff(n).to_string());
    out << j.dump() << '\n';
  }
}

std::vector<LabeledForm> read_records(std::istream& in) {
  std::vector<LabeledForm> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const CoeffRing ring = CoeffRing::parse(j.at("ring").get<std::string>());
      std::vector<RingElem> c;
      for (const auto& x : j.at("coeffs")) c.push_back(RingElem::parse(ring, x.get<std::string>()));
      if (j.contains("prec") && j.at("prec").get<std::size_t>() != c.size())
        throw ParseError("prec does not match the number of coefficients");
      out.push_back({QExpansion::from_elems(ring, c), parse_rational(j.at("weight").get<std::string>()),
                     j.at("label").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("record " + std::to_string(lineno) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError("record " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_forms(std::ostream& out, const std::vector<LabeledForm>& forms, Format format) {
  if (format == Format::Csv)
    write_csv(out, forms);
  else
    write_records(out, forms);
}

}  // namespace halfint
