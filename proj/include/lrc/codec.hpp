#pragma once

// Encoding, single-symbol local repair and erasure decoding.

#include "lrc/code.hpp"
#include "lrc/matrix.hpp"

#include <optional>
#include <span>
#include <vector>

namespace lrc {

/// A received word: each position is either known or erased.
struct Codeword {
    std::vector<std::optional<Element>> symbols;

    Codeword() = default;
    explicit Codeword(std::vector<std::optional<Element>> s) : symbols(std::move(s)) {}
    explicit Codeword(std::span<const Element> known) : symbols(known.begin(), known.end()) {}

    std::size_t size() const noexcept { return symbols.size(); }
    bool erased(std::size_t i) const noexcept { return !symbols[i].has_value(); }
    void erase(std::size_t i) { symbols[i].reset(); }

    std::size_t erasure_count() const noexcept {
        std::size_t n = 0;
        for (const auto& s : symbols) n += !s.has_value();
        return n;
    }

    /// Symbol values; only valid when nothing is erased.
    std::vector<Element> values() const {
        std::vector<Element> out;
        out.reserve(symbols.size());
        for (const auto& s : symbols) {
            if (!s) throw Error(ErrorCode::WrongErasureCount, "word still contains erasures");
            out.push_back(*s);
        }
        return out;
    }

    friend bool operator==(const Codeword&, const Codeword&) = default;
};

/// Basis of the right nullspace of H, one codeword per row (k x n).
inline Matrix generator_matrix(const LrcCode& code) { return nullspace(code.field, code.H.entries); }

inline std::vector<Element> syndrome(const LrcCode& code, std::span<const Element> word) {
    const Matrix& H = code.H.entries;
    if (word.size() != H.cols())
        throw Error(ErrorCode::LengthMismatch,
                    "word length " + std::to_string(word.size()) + " != n = " + std::to_string(H.cols()));
    std::vector<Element> s(H.rows());
    for (std::size_t r = 0; r < H.rows(); ++r) {
        Element acc = code.field.zero();
        for (std::size_t c = 0; c < H.cols(); ++c) {
            const Element h = H(r, c);
            if (!h.is_zero()) acc = code.field.add(acc, code.field.mul(h, word[c]));
        }
        s[r] = acc;
    }
    return s;
}

/// Encoder holding the generator matrix so repeated encodes skip elimination.
class Encoder {
public:
    explicit Encoder(const LrcCode& code) : field_(code.field), g_(generator_matrix(code)) {}

    const Matrix& generator() const noexcept { return g_; }
    std::size_t dimension() const noexcept { return g_.rows(); }

    Codeword encode(std::span<const Element> message) const {
        if (message.size() != g_.rows())
            throw Error(ErrorCode::LengthMismatch,
                        "message length " + std::to_string(message.size()) + " != k = " + std::to_string(g_.rows()));
        std::vector<Element> c(g_.cols(), field_.zero());
        for (std::size_t i = 0; i < g_.rows(); ++i) {
            if (!field_.contains(message[i]))
                throw Error(ErrorCode::FieldMismatch, "message symbol outside " + field_.name());
            if (message[i].is_zero()) continue;
            for (std::size_t j = 0; j < g_.cols(); ++j) c[j] = field_.add(c[j], field_.mul(message[i], g_(i, j)));
        }
        return Codeword(std::span<const Element>(c));
    }

private:
    Field field_;
    Matrix g_;
};

inline Codeword encode(const LrcCode& code, std::span<const Element> message) {
    return Encoder(code).encode(message);
}

/// Recovers position `pos` from its r block-mates. `read(j)` is called only
/// for the mates and returns std::nullopt for an unavailable symbol.
template <class Reader>
Element repair_symbol(const LrcCode& code, std::size_t pos, Reader&& read) {
    if (pos >= code.n) throw Error(ErrorCode::LengthMismatch, "position outside the code");
    const auto label = code.H.block_of(pos);
    Element sum = code.field.zero();
    for (std::size_t j = 0; j < code.H.block_size; ++j) {
        if (j == label.offset) continue;
        const std::size_t mate = code.H.column_of(label.block, j);
        const std::optional<Element> v = read(mate);
        if (!v)
            throw Error(ErrorCode::MatesUnavailable,
                        "block-mate " + std::to_string(mate) + " of position " + std::to_string(pos) + " is erased");
        sum = code.field.add(sum, *v);
    }
    return code.field.neg(sum);
}

/// Repairs the single erased position of `word` from its recover set.
inline Element local_repair(const LrcCode& code, const Codeword& word) {
    if (word.size() != code.n) throw Error(ErrorCode::LengthMismatch, "word length does not match n");
    std::optional<std::size_t> pos;
    for (std::size_t i = 0; i < word.size(); ++i)
        if (word.erased(i)) {
            if (pos)
                throw Error(ErrorCode::WrongErasureCount, "local repair needs exactly one erasure, found several");
            pos = i;
        }
    if (!pos) throw Error(ErrorCode::WrongErasureCount, "local repair needs exactly one erasure, found none");
    return repair_symbol(code, *pos, [&](std::size_t j) { return word.symbols[j]; });
}

/// Fills up to d-1 erasures by solving H_E x = -H_K c_K.
inline Codeword erasure_decode(const LrcCode& code, const Codeword& word) {
    const Field& f = code.field;
    const Matrix& H = code.H.entries;
    if (word.size() != code.n) throw Error(ErrorCode::LengthMismatch, "word length does not match n");
    std::vector<std::size_t> erased;
    for (std::size_t i = 0; i < word.size(); ++i)
        if (word.erased(i)) erased.push_back(i);
    if (erased.size() > static_cast<std::size_t>(code.d_target - 1))
        throw Error(ErrorCode::TooManyErasures, std::to_string(erased.size()) + " erasures exceed d - 1 = " +
                                                    std::to_string(code.d_target - 1));
    for (const auto& s : word.symbols)
        if (s && !f.contains(*s)) throw Error(ErrorCode::FieldMismatch, "symbol outside " + f.name());

    std::vector<Element> rhs(H.rows(), f.zero()); // -H_K c_K
    for (std::size_t r = 0; r < H.rows(); ++r) {
        Element acc = f.zero();
        for (std::size_t c = 0; c < H.cols(); ++c)
            if (!word.erased(c) && !H(r, c).is_zero()) acc = f.add(acc, f.mul(H(r, c), *word.symbols[c]));
        rhs[r] = f.neg(acc);
    }
    Codeword out = word;
    if (erased.empty()) {
        for (auto v : rhs)
            if (!v.is_zero()) throw Error(ErrorCode::InconsistentWord, "nonzero syndrome on a fully known word");
        return out;
    }
    const Matrix HE = H.select_columns(erased);
    const auto sol = solve(f, HE, rhs);
    if (sol.status == SolveStatus::inconsistent)
        throw Error(ErrorCode::InconsistentWord, "known symbols violate parity checks not involving the erasures");
    if (sol.status == SolveStatus::underdetermined)
        throw Error(ErrorCode::RankDeficient, "erased columns are linearly dependent");
    for (std::size_t i = 0; i < erased.size(); ++i) out.symbols[erased[i]] = sol.x[i];
    return out;
}

} // namespace lrc
