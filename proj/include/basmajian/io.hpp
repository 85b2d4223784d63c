#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "basmajian/moebius.hpp"

namespace basmajian {

// [[ [re,im], [re,im] ], [ [re,im], [re,im] ]], row-major.
nlohmann::json matrix_to_json(const MoebiusMap& m);
MoebiusMap matrix_from_json(const nlohmann::json& j);

// Accepts "RE", "IMi", "RE+IMi", "RE-IMi" (also j for the unit, and "i").
// Throws std::invalid_argument.
Complex parse_complex(std::string_view text);

// Shortest round-trip decimal, locale independent.
std::string format_double(double x);
std::string format_complex(Complex z);

}  // namespace basmajian
