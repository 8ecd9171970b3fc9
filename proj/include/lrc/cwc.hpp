#pragma once

// Block designs: families of w-subsets of GF(q) with pairwise intersections of
// at most one point. Their incidence vectors form a binary constant-weight
// code of length q, weight w and minimum distance 2w-2.

#include "lrc/gf.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lrc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct BlockDesign {
    Field field;
    std::size_t w = 0;
    std::vector<std::vector<Element>> blocks;

    std::size_t size() const noexcept { return blocks.size(); }
};

/// Sorts each block by element index, then the blocks lexicographically.
inline void normalize(BlockDesign& design) {
    for (auto& b : design.blocks) std::sort(b.begin(), b.end());
    std::sort(design.blocks.begin(), design.blocks.end());
}

enum class ViolationKind { wrong_size, repeated_element, foreign_element, excess_intersection };

struct DesignViolation {
    ViolationKind kind;
    std::size_t block = 0;
    std::optional<std::size_t> other; // second block of an intersection violation
    std::size_t shared = 0;           // number of common points
};

struct DesignReport {
    bool ok = true;
    std::vector<DesignViolation> violations;
};

namespace detail {

class PointSet {
public:
    explicit PointSet(std::size_t universe) : words_((universe + 63) / 64, 0) {}
    void insert(std::uint32_t x) { words_[x / 64] |= std::uint64_t{1} << (x % 64); }
    bool contains(std::uint32_t x) const { return (words_[x / 64] >> (x % 64)) & 1; }
    std::size_t common(const PointSet& o) const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) n += std::popcount(words_[i] & o.words_[i]);
        return n;
    }

private:
    std::vector<std::uint64_t> words_;
};

inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace detail

inline DesignReport validate_design(const BlockDesign& design, std::size_t w, std::size_t max_intersect = 1) {
    DesignReport report;
    const std::size_t q = design.field.size();
    std::vector<detail::PointSet> sets;
    sets.reserve(design.blocks.size());
    for (std::size_t i = 0; i < design.blocks.size(); ++i) {
        const auto& b = design.blocks[i];
        detail::PointSet s(q);
        bool repeated = false, foreign = false;
        for (auto x : b) {
            if (!design.field.contains(x)) {
                foreign = true;
                continue;
            }
            if (s.contains(x.index())) repeated = true;
            s.insert(x.index());
        }
        if (b.size() != w) report.violations.push_back({ViolationKind::wrong_size, i, std::nullopt, b.size()});
        if (repeated) report.violations.push_back({ViolationKind::repeated_element, i, std::nullopt, 0});
        if (foreign) report.violations.push_back({ViolationKind::foreign_element, i, std::nullopt, 0});
        sets.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            const std::size_t shared = sets[i].common(sets[j]);
            if (shared > max_intersect)
                report.violations.push_back({ViolationKind::excess_intersection, i, j, shared});
        }
    report.ok = report.violations.empty();
    return report;
}

inline std::string describe(const DesignViolation& v) {
    switch (v.kind) {
        case ViolationKind::wrong_size:
            return "block " + std::to_string(v.block) + " has " + std::to_string(v.shared) + " elements";
        case ViolationKind::repeated_element: return "block " + std::to_string(v.block) + " repeats an element";
        case ViolationKind::foreign_element:
            return "block " + std::to_string(v.block) + " contains an element outside the field";
        case ViolationKind::excess_intersection:
            return "blocks " + std::to_string(v.block) + " and " + std::to_string(*v.other) + " share " +
                   std::to_string(v.shared) + " points";
    }
    return {};
}

/// Lines {a + lambda*b : lambda in GF(l)} of the t-dimensional affine space over
/// GF(l), l = p^s, with the point space identified with GF(l^t).
inline BlockDesign affine_lines(std::uint32_t p, std::uint32_t s, std::uint32_t t) {
    if (s < 1 || t < 1) throw Error(ErrorCode::InvalidParameters, "affine_lines needs s >= 1 and t >= 1");
    if (!detail::is_prime(p)) throw Error(ErrorCode::InvalidParameters, std::to_string(p) + " is not prime");
    Field field = make_field(p, s * t);
    const std::uint64_t ell = detail::ipow(p, s);
    const auto scalars = field.subfield(ell);

    std::set<std::vector<Element>> lines;
    std::vector<Element> line(scalars.size());
    for (std::uint32_t a = 0; a < field.size(); ++a)
        for (std::uint32_t b = 1; b < field.size(); ++b) {
            for (std::size_t i = 0; i < scalars.size(); ++i)
                line[i] = field.add(Element{a}, field.mul(scalars[i], Element{b}));
            std::sort(line.begin(), line.end());
            lines.insert(line);
        }
    BlockDesign design{field, static_cast<std::size_t>(ell), {lines.begin(), lines.end()}};
    return design;
}

enum class SeedOrder { canonical, reverse };

/// Greedy packing of w-subsets of GF(q), visited in lexicographic order of
/// element index (or of reversed index for SeedOrder::reverse). A subset is
/// accepted iff it meets every accepted block in at most `max_intersect`
/// points. Subtrees whose prefix already violates the rule are skipped, which
/// yields exactly the same family as a plain scan.
inline BlockDesign greedy_pack(const Field& field, std::size_t w, std::size_t max_intersect = 1,
                               SeedOrder order = SeedOrder::canonical,
                               std::optional<std::size_t> max_blocks = std::nullopt) {
    const std::size_t q = field.size();
    if (w < 2 || w > q)
        throw Error(ErrorCode::InvalidParameters,
                    "greedy_pack needs 2 <= w <= q (w=" + std::to_string(w) + ", q=" + std::to_string(q) + ")");
    const std::size_t limit = max_blocks.value_or(SIZE_MAX);

    auto point = [&](std::size_t pos) -> std::uint32_t {
        return order == SeedOrder::canonical ? static_cast<std::uint32_t>(pos)
                                             : static_cast<std::uint32_t>(q - 1 - pos);
    };

    std::vector<std::vector<std::size_t>> blocks_at(q); // accepted blocks through each point
    std::vector<std::size_t> hits;                       // per accepted block: points shared with prefix
    std::vector<std::vector<Element>> accepted;
    std::vector<std::size_t> prefix;
    prefix.reserve(w);

    // Iterative DFS over positions in visiting order.
    std::vector<std::size_t> next(w + 1, 0);
    std::size_t depth = 0;
    next[0] = 0;
    while (accepted.size() < limit) {
        if (depth == w) {
            std::vector<Element> block;
            for (auto pos : prefix) block.emplace_back(point(pos));
            std::sort(block.begin(), block.end());
            const std::size_t id = accepted.size();
            accepted.push_back(std::move(block));
            hits.push_back(w);
            for (auto pos : prefix) blocks_at[point(pos)].push_back(id);
            // Every extension of a prefix sharing more than max_intersect points
            // with the new block is now rejected, so unwind past those.
            do {
                --depth;
                const std::size_t pos = prefix.back();
                prefix.pop_back();
                for (auto b : blocks_at[point(pos)]) --hits[b];
                next[depth] = pos + 1;
            } while (hits[id] > max_intersect);
            continue;
        }
        std::size_t pos = next[depth];
        const std::size_t need = w - depth;
        if (pos + need > q) {
            if (depth == 0) break;
            --depth;
            const std::size_t last = prefix.back();
            prefix.pop_back();
            for (auto b : blocks_at[point(last)]) --hits[b];
            next[depth] = last + 1;
            continue;
        }
        bool ok = true;
        for (auto b : blocks_at[point(pos)])
            if (++hits[b] > max_intersect) ok = false;
        if (!ok) {
            for (auto b : blocks_at[point(pos)]) --hits[b];
            next[depth] = pos + 1;
            continue;
        }
        prefix.push_back(pos);
        ++depth;
        next[depth] = pos + 1;
    }
    BlockDesign design{field, w, std::move(accepted)};
    normalize(design);
    return design;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// C(n, w-delta+1) / C(w, w-delta+1): the size of a Steiner system
/// S(w-delta+1, w, n) when one exists.
inline Rational steiner_size(std::uint64_t n, std::uint64_t w, std::uint64_t delta) {
    if (!(1 <= delta && delta <= w && w <= n))
        throw Error(ErrorCode::InvalidParameters, "steiner_size needs 1 <= delta <= w <= n");
    const std::uint64_t s = w - delta + 1;
    return Rational(binomial(n, s), binomial(w, s));
}

/// Lower bound C(q, w) / (q^(w-2) - 1) on a packing of w-subsets of GF(q)
/// with pairwise intersections <= 1 (requires w >= 4).
inline Rational packing_lower_bound(std::uint64_t q, std::uint64_t w) {
    if (w < 4 || w > q) throw Error(ErrorCode::InvalidParameters, "packing bound needs 4 <= w <= q");
    BigInt denom = 1;
    for (std::uint64_t i = 0; i < w - 2; ++i) denom *= q;
    return Rational(binomial(q, w), denom - 1);
}

/// Expected number of lines of AG(t, l): l^(t-1) (l^t - 1) / (l - 1).
inline std::uint64_t affine_line_count(std::uint64_t ell, std::uint64_t t) {
    return detail::ipow(ell, t - 1) * (detail::ipow(ell, t) - 1) / (ell - 1);
}

} // namespace lrc
