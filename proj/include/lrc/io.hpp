#pragma once

// JSON artifacts: field, design, code, verification report, words.
// Elements are always written as canonical indices; lists are sorted where the
// format says so, and object keys come out in a fixed order, so equal inputs
// serialize to identical bytes.

#include "lrc/bounds.hpp"
#include "lrc/codec.hpp"
#include "lrc/code.hpp"
#include "lrc/cwc.hpp"
#include "lrc/verify.hpp"

#include "json.hpp"

#include <sstream>
#include <string>

namespace lrc::io {

using json = nlohmann::json;

namespace detail {

template <class Fn>
auto parse_guard(const char* what, Fn&& fn) {
    try {
        return fn();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
    }
}

inline std::vector<std::uint32_t> indices(const std::vector<Element>& xs) {
    std::vector<std::uint32_t> out;
    out.reserve(xs.size());
    for (auto x : xs) out.push_back(x.index());
    return out;
}

} // namespace detail

inline json field_to_json(const Field& f) {
    return json{{"p", f.characteristic()}, {"t", f.degree()}, {"modulus", f.modulus()}};
}

inline Field field_from_json(const json& j) {
    return detail::parse_guard("field", [&] {
        return make_field(j.at("p").get<std::uint32_t>(), j.at("t").get<std::uint32_t>(),
                          j.at("modulus").get<std::vector<std::uint32_t>>());
    });
}

inline json design_to_json(const BlockDesign& d) {
    json blocks = json::array();
    for (const auto& b : d.blocks) blocks.push_back(detail::indices(b));
    return json{{"field", field_to_json(d.field)}, {"w", d.w}, {"blocks", std::move(blocks)}};
}

inline std::vector<std::vector<Element>> blocks_from_json(const Field& f, const json& j) {
    std::vector<std::vector<Element>> blocks;
    for (const auto& b : j) {
        std::vector<Element> block;
        for (const auto& x : b) block.push_back(f.element(x.get<std::uint64_t>()));
        blocks.push_back(std::move(block));
    }
    return blocks;
}

inline BlockDesign design_from_json(const json& j) {
    return detail::parse_guard("design", [&] {
        Field f = field_from_json(j.at("field"));
        BlockDesign d{f, j.at("w").get<std::size_t>(), blocks_from_json(f, j.at("blocks"))};
        return d;
    });
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (auto x : m.row(r)) row.push_back(x.index());
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Plain-text dump: one row per line, space-separated element indices.
inline std::string matrix_dump(const Matrix& m) {
    std::ostringstream os;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c).index();
        os << '\n';
    }
    return os.str();
}

inline json code_to_json(const LrcCode& code) {
    json blocks = json::array();
    for (const auto& b : code.design.blocks) blocks.push_back(detail::indices(b));
    return json{{"field", field_to_json(code.field)},
                {"r", code.locality},
                {"d_target", code.d_target},
                {"n", code.n},
                {"k", code.k},
                {"design", json{{"w", code.design.w}, {"blocks", std::move(blocks)}}},
                {"H", matrix_to_json(code.H.entries)}};
}

/// Rebuilds the code from its design and checks the stored H and k against it.
/// The design is not validated, so deliberately broken codes can be loaded.
inline LrcCode code_from_json(const json& j) {
    return detail::parse_guard("code", [&] {
        Field f = field_from_json(j.at("field"));
        const auto r = j.at("r").get<std::size_t>();
        const auto d = j.at("d_target").get<int>();
        const auto& dj = j.at("design");
        BlockDesign design{f, dj.at("w").get<std::size_t>(), blocks_from_json(f, dj.at("blocks"))};
        if (design.w != r + 1) throw Error(ErrorCode::ParseError, "design block size must be r + 1");
        ParityCheckMatrix H = assemble_parity_check(design, d);
        if (j.contains("H") && j.at("H") != matrix_to_json(H.entries))
            throw Error(ErrorCode::ParseError, "stored H does not match the design");
        LrcCode code = code_params(H, d, r);
        if (j.contains("k") && j.at("k").get<std::size_t>() != code.k)
            throw Error(ErrorCode::ParseError, "stored k does not match rank(H)");
        return code;
    });
}

inline json report_to_json(const VerificationReport& rep) {
    json certificate;
    if (rep.verdict)
        certificate = json{{"type", "independent"}, {"subset_size", rep.d_checked - 1}, {"count", rep.checked}};
    else
        certificate = json{{"type", "dependent"}, {"columns", rep.certificate}};
    json patterns = json::object();
    for (const auto& [name, count] : rep.patterns) patterns[name] = count;
    return json{{"verdict", rep.verdict},
                {"method", std::string(to_string(rep.method))},
                {"d_checked", rep.d_checked},
                {"certifying", rep.certifying},
                {"patterns", std::move(patterns)},
                {"certificate", std::move(certificate)},
                {"equality_witness", rep.equality_witness ? json(*rep.equality_witness) : json(nullptr)}};
}

inline json word_to_json(const Codeword& w) {
    json out = json::array();
    for (const auto& s : w.symbols) out.push_back(s ? json(s->index()) : json(nullptr));
    return out;
}

inline Codeword word_from_json(const Field& f, const json& j) {
    return detail::parse_guard("word", [&] {
        if (!j.is_array()) throw Error(ErrorCode::ParseError, "word must be a JSON array");
        Codeword w;
        for (const auto& x : j)
            w.symbols.push_back(x.is_null() ? std::nullopt
                                            : std::optional<Element>(f.element(x.get<std::uint64_t>())));
        return w;
    });
}

inline std::string rational_string(const Rational& x) {
    return denominator(x) == 1 ? numerator(x).str() : numerator(x).str() + "/" + denominator(x).str();
}

inline json bounds_to_json(const BoundReport& b) {
    json j{{"q", b.q},
           {"r", b.r},
           {"d", b.d},
           {"construction_applies", b.construction_applies},
           {"construction_lower", rational_string(b.construction_lower)},
           {"prior_lower", b.prior_lower.str()},
           {"prior_upper", rational_string(b.prior_upper)}};
    j["code_n"] = b.code_n ? json(*b.code_n) : json(nullptr);
    j["code_k"] = b.code_k ? json(*b.code_k) : json(nullptr);
    j["singleton_rhs"] = b.singleton_rhs ? json(*b.singleton_rhs) : json(nullptr);
    return j;
}

} // namespace lrc::io
