#ifndef HDX_IO_HPP
#define HDX_IO_HPP

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "hdx/complex.hpp"
#include "hdx/walks.hpp"

namespace hdx {

// {"sides": [[ids]...], "facets": [{"coords": [...], "weight": w}, ...]}
WeightedComplex complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(const WeightedComplex& X);
// Throws ParseError on unreadable or malformed input; validation errors keep their own codes.
WeightedComplex read_complex(const std::string& path);
WeightedComplex parse_complex(const std::string& text);
void write_complex(const WeightedComplex& X, const std::string& path);

// 16 hex digits, FNV-1a over a canonical rendering of sides, facets and weights.
std::string complex_digest(const WeightedComplex& X);

// Header row of codomain labels, then one row per domain state led by its label.
void write_operator_csv(const MarkovOperator& M, std::ostream& os);

// Shortest decimal that round-trips.
std::string format_double(double x);

}  // namespace hdx

#endif  // HDX_IO_HPP
