#pragma once

#include <string>

#include <json.hpp>

#include "bilap/bicomplex.hpp"
#include "bilap/rational.hpp"

namespace bilap {

/// Round-trippable double formatting: 17 significant digits.
std::string format_double(double v);

/// "a0,a1,a2,a3" with 17 significant digits.
std::string bicomplex_to_text(const Bicomplex& x);

/// Parses "a0,a1,a2,a3" (four comma-separated decimal reals).
Bicomplex bicomplex_from_text(const std::string& text);

/// {"xi1": [re, im], "xi2": [re, im]}
nlohmann::json idempotent_to_json(const IdempotentPair& p);
IdempotentPair idempotent_from_json(const nlohmann::json& j);

/// {"num": [[re, im], ...], "den": [[re, im], ...]}, ascending degree.
nlohmann::json rational_to_json(const RationalFunction& r);
RationalFunction rational_from_json(const nlohmann::json& j);

/// Loads a rational from a JSON file.
RationalFunction load_rational_file(const std::string& path);

}  // namespace bilap
