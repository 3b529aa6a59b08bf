#pragma once

#include <json.hpp>

#include "tauforge/partition.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

// Series wire format: a header with the truncation bounds plus the term list
// in canonical monomial order, coefficients as exact "num/den" strings.
inline nlohmann::ordered_json series_to_json(const Series& s) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json header;
    header["weight"] = s.truncation().weight_cap;
    nlohmann::ordered_json aux = nlohmann::ordered_json::object();
    for (const auto& [code, cap] : s.truncation().aux_caps) {
        VarId v = VarId::aux(kAuxRegistry[code & 0xffffff].name);
        aux[std::string(v.name())] = cap;
    }
    header["aux"] = aux;
    j["truncation"] = header;

    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [m, c] : s.terms()) {
        nlohmann::ordered_json term;
        nlohmann::ordered_json mono = nlohmann::ordered_json::object();
        for (const auto& [v, e] : m.exponents()) mono[v.name()] = e;
        term["monomial"] = mono;
        term["coeff"] = to_string(c);
        terms.push_back(term);
    }
    j["terms"] = terms;
    return j;
}

inline nlohmann::ordered_json rational_map_to_json(const std::map<Partition, Rational>& m) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [p, v] : m) j[p.to_string()] = to_string(v);
    return j;
}

}  // namespace tauforge
