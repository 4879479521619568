#include "symtrace/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace symtrace {

namespace {

Rational rational_field(const nlohmann::json& obj, const char* key, std::size_t line) {
  if (!obj.contains(key))
    fail(Errc::parse_error, "line " + std::to_string(line) + ": missing field '" + key + "'");
  const auto& v = obj.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer() || v.is_number_unsigned())
    return parse_rational(v.dump());
  fail(Errc::parse_error, "line " + std::to_string(line) + ": field '" + key +
                              "' must be an exact rational string or integer");
}

}  // namespace

std::vector<FamilySample> read_samples(std::istream& in) {
  std::vector<FamilySample> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object())
      fail(Errc::parse_error, "line " + std::to_string(lineno) + ": not a JSON object");
    FamilySample s;
    s.t = rational_field(obj, "t", lineno);
    s.d = rational_field(obj, "d", lineno);
    s.v = rational_field(obj, "v", lineno);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<FamilySample> read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open '" + path + "'");
  return read_samples(in);
}

void write_samples(std::ostream& out, const std::vector<FamilySample>& samples) {
  for (const auto& s : samples)
    out << "{\"t\":\"" << format_rational(s.t) << "\",\"d\":\"" << format_rational(s.d)
        << "\",\"v\":\"" << format_rational(s.v) << "\"}\n";
}

void write_samples_file(const std::string& path, const std::vector<FamilySample>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::parse_error, "cannot open '" + path + "' for writing");
  write_samples(out, samples);
}

std::string decode_result_json(const DecodeResult& result) {
  std::ostringstream out;
  out << "{\"factors\":[";
  for (std::size_t i = 0; i < result.factors.size(); ++i) {
    if (i) out << ",";
    out << result.factors[i];
  }
  out << "],\"det_weight\":" << result.det_weight
      << ",\"degree_sum\":" << result.diagnostics.degree_sum << ",\"dim_product\":";
  const Integer& dim = result.diagnostics.dim_product;
  if (dim > Integer("9007199254740991"))  // 2^53 - 1
    out << '"' << dim.get_str() << '"';
  else
    out << dim.get_str();
  out << ",\"samples_used\":" << result.diagnostics.samples_used << "}";
  return out.str();
}

}  // namespace symtrace
