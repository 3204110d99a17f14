#include "bilap/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace bilap {

namespace {

double parse_real(const std::string& field) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) {
        throw InvalidArgumentError("cannot parse '" + field + "' as a real number");
    }
    while (*end == ' ' || *end == '\t') ++end;
    if (*end != '\0') {
        throw InvalidArgumentError("trailing junk after number in '" + field + "'");
    }
    if (!std::isfinite(v)) {
        throw InvalidArgumentError("number '" + field + "' is not finite");
    }
    return v;
}

Coeffs coeffs_from_json(const nlohmann::json& arr, const char* what) {
    if (!arr.is_array()) {
        throw InvalidArgumentError(std::string(what) + " must be an array of [re, im] pairs");
    }
    Coeffs out;
    out.reserve(arr.size());
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
            !item[1].is_number()) {
            throw InvalidArgumentError(std::string(what) +
                                       " entries must be [re, im] number pairs");
        }
        out.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return out;
}

nlohmann::json coeffs_to_json(const Coeffs& c) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : c) {
        arr.push_back({v.real(), v.imag()});
    }
    return arr;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string bicomplex_to_text(const Bicomplex& x) {
    return format_double(x.a0) + "," + format_double(x.a1) + "," +
           format_double(x.a2) + "," + format_double(x.a3);
}

Bicomplex bicomplex_from_text(const std::string& text) {
    double parts[4];
    size_t start = 0;
    for (int i = 0; i < 4; ++i) {
        const size_t comma = text.find(',', start);
        const bool last = (i == 3);
        if (last != (comma == std::string::npos)) {
            throw InvalidArgumentError(
                "bicomplex text must be four comma-separated reals: '" + text + "'");
        }
        const std::string field =
            text.substr(start, last ? std::string::npos : comma - start);
        parts[i] = parse_real(field);
        start = comma + 1;
    }
    return from_components(parts[0], parts[1], parts[2], parts[3]);
}

nlohmann::json idempotent_to_json(const IdempotentPair& p) {
    return {{"xi1", {p.xi1.real(), p.xi1.imag()}},
            {"xi2", {p.xi2.real(), p.xi2.imag()}}};
}

IdempotentPair idempotent_from_json(const nlohmann::json& j) {
    const auto read = [&](const char* key) -> Complex {
        if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2) {
            throw InvalidArgumentError(std::string("idempotent JSON needs \"") + key +
                                       "\": [re, im]");
        }
        return {j[key][0].get<double>(), j[key][1].get<double>()};
    };
    return {read("xi1"), read("xi2")};
}

nlohmann::json rational_to_json(const RationalFunction& r) {
    return {{"num", coeffs_to_json(r.num)}, {"den", coeffs_to_json(r.den)}};
}

RationalFunction rational_from_json(const nlohmann::json& j) {
    if (!j.contains("num") || !j.contains("den")) {
        throw InvalidArgumentError("rational JSON needs \"num\" and \"den\" arrays");
    }
    return make_rational(coeffs_from_json(j["num"], "num"),
                         coeffs_from_json(j["den"], "den"));
}

RationalFunction load_rational_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgumentError("cannot open rational file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgumentError("malformed JSON in '" + path + "': " + e.what());
    }
    return rational_from_json(j);
}

}  // namespace bilap
