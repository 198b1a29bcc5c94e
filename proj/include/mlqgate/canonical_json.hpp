#pragma once

#include <string>

#include <json.hpp>

namespace mlqgate::canonical_json {

// Serializes a JSON value into the canonical byte form used for all emitted
// reports and configs: keys sorted, floats rendered with "%.10g", LF-only,
// two-space indentation, UTF-8 passed through. Identical values always yield
// identical bytes, which is what makes report diffing and the determinism
// gate work.
//
// Non-finite numbers are rejected: report values are required to be finite.
std::string dump(const nlohmann::json& value);

// Formats a double exactly the way dump() does ("%.10g").
std::string format_double(double v);

}  // namespace mlqgate::canonical_json
