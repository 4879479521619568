#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "symtrace/decode.hpp"

namespace symtrace {

// JSON-lines sample format: one object per line with fields "t", "d", "v",
// each an exact-rational string "p/q" or an integer (string or JSON integer).
// "meta" is optional and ignored. Floats are a parse error.
std::vector<FamilySample> read_samples(std::istream& in);
std::vector<FamilySample> read_samples_file(const std::string& path);
void write_samples(std::ostream& out, const std::vector<FamilySample>& samples);
void write_samples_file(const std::string& path, const std::vector<FamilySample>& samples);

// {"factors":[...], "det_weight":..., "degree_sum":..., "dim_product":...,
//  "samples_used":...} — dim_product becomes a string above 53-bit precision.
std::string decode_result_json(const DecodeResult& result);

}  // namespace symtrace
