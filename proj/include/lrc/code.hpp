#pragma once

// Parity-check construction for distance-5 and distance-6 locally repairable
// codes from a block design over GF(q).
//
//   H = [ indicator rows, one per block     ]   m rows
//       [ alpha, alpha^2, ..., alpha^(d-2)  ]   d-2 rows
//
// Column (i, j) belongs to block i and carries the j-th element of that block
// (in sorted order). Columns are laid out block by block.

#include "lrc/cwc.hpp"
#include "lrc/matrix.hpp"

#include <cstdint>
#include <string>

namespace lrc {

struct ColumnLabel {
    std::size_t block;
    std::size_t offset; // position inside the block
    friend bool operator==(const ColumnLabel&, const ColumnLabel&) = default;
};

struct ParityCheckMatrix {
    Field field;
    Matrix entries;
    std::size_t num_blocks = 0; // m
    std::size_t block_size = 0; // r + 1
    int d_target = 0;

    std::size_t rows() const noexcept { return entries.rows(); }
    std::size_t cols() const noexcept { return entries.cols(); }

    ColumnLabel block_of(std::size_t col) const noexcept { return {col / block_size, col % block_size}; }
    std::size_t column_of(std::size_t block, std::size_t offset) const noexcept {
        return block * block_size + offset;
    }

    /// The design element carried by a column: its first power row.
    Element alpha(std::size_t col) const noexcept { return entries(num_blocks, col); }
};

struct LrcCode {
    Field field;
    std::size_t n = 0;
    std::size_t k = 0;
    int d_target = 0;
    std::size_t locality = 0;
    ParityCheckMatrix H;
    BlockDesign design;
};

/// Lays out H for any design without checking construction preconditions.
/// Used directly to build deliberately broken codes for verifier tests.
inline ParityCheckMatrix assemble_parity_check(const BlockDesign& design, int d_target) {
    if (d_target < 3) throw Error(ErrorCode::InvalidParameters, "distance target must be at least 3");
    const Field& f = design.field;
    const std::size_t m = design.blocks.size();
    const std::size_t w = design.w;
    for (const auto& b : design.blocks)
        if (b.size() != w) throw Error(ErrorCode::DesignInvalid, "block size differs from design block size");
    const std::size_t power_rows = static_cast<std::size_t>(d_target - 2);
    ParityCheckMatrix H{f, Matrix(m + power_rows, m * w), m, w, d_target};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < w; ++j) {
            const std::size_t col = H.column_of(i, j);
            const Element a = design.blocks[i][j];
            H.entries(i, col) = f.one();
            Element pw = a;
            for (std::size_t e = 0; e < power_rows; ++e) {
                H.entries(m + e, col) = pw;
                pw = f.mul(pw, a);
            }
        }
    return H;
}

/// H for d = 5 (powers 1..3, r >= 4) or d = 6 (powers 1..4, r >= 5,
/// characteristic 2).
inline ParityCheckMatrix build_parity_check(const BlockDesign& design, int d_target) {
    if (d_target != 5 && d_target != 6)
        throw Error(ErrorCode::InvalidParameters, "distance target must be 5 or 6");
    if (d_target == 6 && design.field.characteristic() != 2)
        throw Error(ErrorCode::CharacteristicNotTwo,
                    "distance 6 needs a field of characteristic 2, got " + design.field.name());
    const std::size_t r = design.w == 0 ? 0 : design.w - 1;
    const std::size_t min_r = d_target == 5 ? 4 : 5;
    if (r < min_r)
        throw Error(ErrorCode::LocalityTooSmall, "distance " + std::to_string(d_target) + " needs r >= " +
                                                     std::to_string(min_r) + ", got r = " + std::to_string(r));
    if (design.blocks.empty()) throw Error(ErrorCode::DesignInvalid, "design has no blocks");
    const auto report = validate_design(design, design.w, 1);
    if (!report.ok) throw Error(ErrorCode::DesignInvalid, describe(report.violations.front()));
    BlockDesign sorted = design;
    for (auto& b : sorted.blocks) std::sort(b.begin(), b.end());
    return assemble_parity_check(sorted, d_target);
}

/// Recovers the block design encoded in the layout of H.
inline BlockDesign design_of(const ParityCheckMatrix& H) {
    BlockDesign d{H.field, H.block_size, std::vector<std::vector<Element>>(H.num_blocks)};
    for (std::size_t c = 0; c < H.cols(); ++c) d.blocks[H.block_of(c).block].push_back(H.alpha(c));
    return d;
}

/// Descriptor of the code with parity-check matrix H. Requires full row rank
/// m + d - 2; a rank deficit means the design or field is broken.
inline LrcCode code_params(const ParityCheckMatrix& H, int d_target, std::size_t r) {
    if (H.block_size != r + 1)
        throw Error(ErrorCode::InvalidParameters, "locality " + std::to_string(r) + " does not match block size " +
                                                      std::to_string(H.block_size));
    if (H.d_target != d_target)
        throw Error(ErrorCode::InvalidParameters, "matrix was built for a different distance target");
    const std::size_t expected = H.num_blocks + static_cast<std::size_t>(d_target - 2);
    const std::size_t rk = rank(H.field, H.entries);
    if (rk != expected)
        throw Error(ErrorCode::RankDeficient,
                    "rank(H) = " + std::to_string(rk) + ", expected " + std::to_string(expected));
    return LrcCode{H.field, H.cols(), H.cols() - rk, d_target, r, H, design_of(H)};
}

inline LrcCode make_code(const BlockDesign& design, int d_target) {
    return code_params(build_parity_check(design, d_target), d_target, design.w - 1);
}

/// n - k - ceil(k/r) + 2, the largest distance a locality-r [n, k] code can have.
inline std::int64_t singleton_rhs(std::uint64_t n, std::uint64_t k, std::uint64_t r) {
    if (k < 1 || k > n || r < 1) throw Error(ErrorCode::InvalidParameters, "singleton_rhs needs 1 <= k <= n, r >= 1");
    return static_cast<std::int64_t>(n) - static_cast<std::int64_t>(k) -
           static_cast<std::int64_t>((k + r - 1) / r) + 2;
}

inline bool is_optimal(const LrcCode& code, std::int64_t verified_distance) {
    return verified_distance == singleton_rhs(code.n, code.k, code.locality);
}

} // namespace lrc
