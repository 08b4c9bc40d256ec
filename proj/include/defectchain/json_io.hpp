#pragma once

// JSON (de)serialization for exact scalars and derived data products.

#include <defectchain/cyclotomic.hpp>
#include <defectchain/fusion_category.hpp>
#include <defectchain/chain.hpp>
#include <defectchain/spectra.hpp>
#include <defectchain/version.hpp>

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace defectchain {

namespace detail {

// cpp_int -> int64, throwing instead of truncating
inline std::int64_t to_int64(const BigInt& v) {
    if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max())
        throw std::runtime_error("scalar coefficient exceeds 64-bit range; cannot serialize");
    return v.convert_to<std::int64_t>();
}

} // namespace detail

inline nlohmann::json scalar_to_json(const Scalar& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : s.coeffs()) {
        coeffs.push_back({detail::to_int64(boost::multiprecision::numerator(c)),
                          detail::to_int64(boost::multiprecision::denominator(c))});
    }
    return nlohmann::json{{"order", s.order()}, {"coeffs", coeffs}};
}

inline Scalar scalar_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
        throw std::runtime_error("scalar JSON must be an object with 'order' and 'coeffs'");
    unsigned order = j.at("order").get<unsigned>();
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array())
        throw std::runtime_error("scalar 'coeffs' must be an array of [num, den] pairs");
    Scalar s(order);
    if (coeffs.size() != s.coeffs().size())
        throw std::runtime_error("scalar 'coeffs' length does not match the field degree");
    Scalar acc(order);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const auto& pair = coeffs[k];
        if (!pair.is_array() || pair.size() != 2)
            throw std::runtime_error("scalar coefficient must be a [num, den] pair");
        std::int64_t num = pair[0].get<std::int64_t>();
        std::int64_t den = pair[1].get<std::int64_t>();
        if (den == 0)
            throw std::runtime_error("scalar coefficient has zero denominator");
        Rational c(num, den);
        if (c == 0)
            continue;
        acc += Scalar::from_rational(c, order) * Scalar::root_of_unity(order, static_cast<long long>(k));
    }
    return acc;
}

// full skeletal data of a category; label indices keep the file compact and
// the round trip exact
inline nlohmann::json category_to_json(const FusionCategory& C) {
    nlohmann::json j;
    j["labels"] = C.labels;
    j["unit"] = C.unit;
    j["scalar_order"] = C.scalar_order;
    j["fusion"] = C.fusion;
    nlohmann::json qdims = nlohmann::json::array();
    for (const auto& d : C.qdim)
        qdims.push_back(scalar_to_json(d));
    j["qdims"] = qdims;
    nlohmann::json fsymbols = nlohmann::json::array();
    for (const auto& [key, value] : C.fsymbols)
        fsymbols.push_back({{"key", key}, {"value", scalar_to_json(value)}});
    j["fsymbols"] = fsymbols;
    return j;
}

// shape checks only: a loaded table may be deliberately broken (e.g. for
// pentagon-violation probes), so semantic validation stays with the caller
inline FusionCategory category_from_json(const nlohmann::json& j) {
    for (const char* field : {"labels", "unit", "scalar_order", "fusion", "qdims", "fsymbols"})
        if (!j.contains(field))
            throw std::runtime_error(std::string("category JSON is missing '") + field + "'");
    FusionCategory C;
    C.labels = j.at("labels").get<std::vector<std::string>>();
    C.unit = j.at("unit").get<std::size_t>();
    C.scalar_order = j.at("scalar_order").get<unsigned>();
    C.fusion = j.at("fusion").get<std::vector<std::vector<std::vector<std::size_t>>>>();
    for (const auto& d : j.at("qdims"))
        C.qdim.push_back(scalar_from_json(d));
    const std::size_t n = C.labels.size();
    if (C.unit >= n || C.fusion.size() != n || C.qdim.size() != n)
        throw std::runtime_error("category JSON has inconsistent table sizes");
    for (const auto& entry : j.at("fsymbols")) {
        auto key = entry.at("key").get<std::array<std::size_t, 6>>();
        for (std::size_t idx : key)
            if (idx >= n)
                throw std::runtime_error("category JSON has an F-symbol index out of range");
        C.fsymbols[key] = scalar_from_json(entry.at("value"));
    }
    return C;
}

inline nlohmann::json basis_to_json(const ChainBasis& basis) {
    nlohmann::json j;
    j["edges"] = basis.n_edges;
    j["boundary"] = boundary_text(basis.boundary);
    j["labels"] = basis.labels;
    j["dimension"] = basis.dimension();
    nlohmann::json states = nlohmann::json::array();
    for (const auto& state : basis.states)
        states.push_back(state);
    j["states"] = states;
    if (!basis.note.empty())
        j["note"] = basis.note;
    return j;
}

inline nlohmann::json spectrum_to_json(const Spectrum& s) {
    nlohmann::json j;
    j["eigenvalues"] = s.eigenvalues;
    j["source"] = s.source;
    return j;
}

// FNV-1a, the 64-bit variant
inline std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

inline nlohmann::json provenance_block(const std::string& config_text) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config_text)));
    return nlohmann::json{{"tool", "defectchain"}, {"version", version}, {"config_hash", hash}};
}

// canonical artifact serialization: two-space indent, trailing newline
inline std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    os << json_text(j);
    if (!os)
        throw std::runtime_error("failed while writing '" + path + "'");
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open '" + path + "' for reading");
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

} // namespace defectchain
