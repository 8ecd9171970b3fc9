#include "lrc/bounds.hpp"
#include "lrc/code.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace lrc;

namespace {

BlockDesign whole_field(const Field& f) {
    return BlockDesign{f, f.size(), {f.elements()}};
}

ErrorCode code_of(auto fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::ParseError;
}

Matrix from_rows(std::vector<std::vector<std::uint32_t>> rows) {
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = Element{rows[r][c]};
    return m;
}

std::uint32_t gf8_mul(std::uint32_t a, std::uint32_t b) {
    std::uint32_t p = 0;
    for (int i = 0; i < 3; ++i)
        if ((b >> i) & 1) p ^= a << i;
    for (int i = 4; i >= 3; --i)
        if ((p >> i) & 1) p ^= 0b1011u << (i - 3);
    return p;
}

} // namespace

TEST(ParityCheck, Gf5SingleBlock) {
    const Field f = make_field(5, 1);
    const auto H = build_parity_check(whole_field(f), 5);
    EXPECT_EQ(H.entries, from_rows({{1, 1, 1, 1, 1}, {0, 1, 2, 3, 4}, {0, 1, 4, 4, 1}, {0, 1, 3, 2, 4}}));
    EXPECT_EQ(H.num_blocks, 1u);
    EXPECT_EQ(H.block_size, 5u);
}

TEST(ParityCheck, Gf8SingleBlockDistanceSix) {
    const Field f = make_field(2, 3);
    const auto H = build_parity_check(whole_field(f), 6);
    ASSERT_EQ(H.rows(), 5u);
    ASSERT_EQ(H.cols(), 8u);
    for (std::uint32_t a = 0; a < 8; ++a) {
        EXPECT_EQ(H.entries(0, a), Element{1});
        std::uint32_t pw = a;
        for (std::size_t e = 1; e <= 4; ++e) {
            EXPECT_EQ(H.entries(e, a).index(), pw) << "alpha=" << a << " e=" << e;
            pw = gf8_mul(pw, a);
        }
    }
}

TEST(ParityCheck, Preconditions) {
    const Field f5 = make_field(5, 1);
    EXPECT_EQ(code_of([&] { build_parity_check(whole_field(f5), 6); }), ErrorCode::CharacteristicNotTwo);
    EXPECT_EQ(code_of([&] { build_parity_check(affine_lines(5, 1, 2), 6); }), ErrorCode::CharacteristicNotTwo);
    const Field f8 = make_field(2, 3);
    EXPECT_EQ(code_of([&] { build_parity_check(affine_lines(2, 2, 1), 5); }), ErrorCode::LocalityTooSmall);
    EXPECT_EQ(code_of([&] { build_parity_check(greedy_pack(f8, 5), 6); }), ErrorCode::LocalityTooSmall);
    EXPECT_EQ(code_of([&] { build_parity_check(whole_field(f5), 4); }), ErrorCode::InvalidParameters);

    BlockDesign bad{f8, 5, {{Element{0}, Element{1}, Element{2}, Element{3}, Element{4}},
                            {Element{0}, Element{1}, Element{5}, Element{6}, Element{7}}}};
    EXPECT_EQ(code_of([&] { build_parity_check(bad, 5); }), ErrorCode::DesignInvalid);
    BlockDesign empty{f8, 5, {}};
    EXPECT_EQ(code_of([&] { build_parity_check(empty, 5); }), ErrorCode::DesignInvalid);
}

TEST(ParityCheck, StructureAndColumnLabels) {
    std::vector<BlockDesign> designs{affine_lines(5, 1, 2), affine_lines(7, 1, 1), affine_lines(2, 3, 2),
                                     greedy_pack(make_field(2, 5), 6), greedy_pack(make_field(3, 3), 5)};
    for (const auto& design : designs)
        for (int d : {5, 6}) {
            if (d == 6 && (design.field.characteristic() != 2 || design.w < 6)) continue;
            const auto H = build_parity_check(design, d);
            const Field& f = design.field;
            const std::size_t m = design.blocks.size(), w = design.w;
            ASSERT_EQ(H.rows(), m + static_cast<std::size_t>(d - 2));
            ASSERT_EQ(H.cols(), m * w);
            for (std::size_t c = 0; c < H.cols(); ++c) {
                const auto label = H.block_of(c);
                EXPECT_EQ(H.column_of(label.block, label.offset), c);
                const Element a = design.blocks[label.block][label.offset];
                EXPECT_EQ(H.alpha(c), a);
                for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(H.entries(i, c), i == label.block ? f.one() : f.zero());
                for (int e = 1; e <= d - 2; ++e) EXPECT_EQ(H.entries(m + e - 1, c), f.pow(a, e));
            }
            EXPECT_EQ(design_of(H).blocks, design.blocks);
        }
}

TEST(CodeParams, KnownDimensions) {
    const auto c5 = make_code(whole_field(make_field(5, 1)), 5);
    EXPECT_EQ(c5.n, 5u);
    EXPECT_EQ(c5.k, 1u);
    EXPECT_EQ(c5.locality, 4u);

    const auto c8 = make_code(whole_field(make_field(2, 3)), 6);
    EXPECT_EQ(c8.n, 8u);
    EXPECT_EQ(c8.k, 3u);

    const auto c150 = make_code(affine_lines(5, 1, 2), 5);
    EXPECT_EQ(c150.n, 150u);
    EXPECT_EQ(c150.k, 117u);
    EXPECT_EQ(oracle::rank(c150.field, c150.H.entries), 33u);
}

TEST(CodeParams, RankMatchesOracleOnGrid) {
    std::vector<std::pair<BlockDesign, int>> cases{
        {affine_lines(5, 1, 1), 5}, {affine_lines(7, 1, 2), 5}, {affine_lines(2, 3, 2), 6},
        {affine_lines(2, 3, 2), 5}, {greedy_pack(make_field(2, 4), 5), 5}, {greedy_pack(make_field(2, 5), 6), 6}};
    for (const auto& [design, d] : cases) {
        const auto code = make_code(design, d);
        const std::size_t rk = oracle::rank(code.field, code.H.entries);
        EXPECT_EQ(code.k + rk, code.n);
        EXPECT_EQ(code.k, code.n - design.blocks.size() - static_cast<std::size_t>(d - 2));
    }
}

TEST(CodeParams, RankDeficientDesign) {
    // a lone block of size 3 with d=5 gives 4 rows on 3 columns
    const Field f = make_field(5, 1);
    BlockDesign tiny{f, 3, {{Element{0}, Element{1}, Element{2}}}};
    const auto H = assemble_parity_check(tiny, 5);
    EXPECT_EQ(code_of([&] { code_params(H, 5, 2); }), ErrorCode::RankDeficient);
}

TEST(Singleton, Values) {
    EXPECT_EQ(singleton_rhs(150, 117, 4), 5);
    EXPECT_EQ(singleton_rhs(8, 3, 7), 6);
    EXPECT_EQ(singleton_rhs(5, 1, 4), 5);
    EXPECT_EQ(singleton_rhs(576, 500, 7), 6);
    for (std::uint64_t n = 2; n <= 12; ++n)
        for (std::uint64_t r = n - 1; r <= n + 3; ++r) EXPECT_EQ(singleton_rhs(n, n - 1, r), 2);
    EXPECT_EQ(code_of([] { singleton_rhs(5, 0, 4); }), ErrorCode::InvalidParameters);
    EXPECT_EQ(code_of([] { singleton_rhs(5, 6, 4); }), ErrorCode::InvalidParameters);
    EXPECT_EQ(code_of([] { singleton_rhs(5, 1, 0); }), ErrorCode::InvalidParameters);
}

TEST(Singleton, Optimality) {
    const auto c150 = make_code(affine_lines(5, 1, 2), 5);
    EXPECT_TRUE(is_optimal(c150, 5));
    EXPECT_FALSE(is_optimal(c150, 4));
    const auto c8 = make_code(whole_field(make_field(2, 3)), 6);
    EXPECT_TRUE(is_optimal(c8, 6));
    EXPECT_FALSE(is_optimal(c8, 5));
}

TEST(Bounds, ConstructionLengths) {
    const auto a = bound_table(25, 4, 5);
    EXPECT_TRUE(a.construction_applies);
    EXPECT_EQ(a.construction_lower, Rational(150));
    EXPECT_EQ(a.code_n, 150u);
    EXPECT_EQ(a.code_k, 117u);
    EXPECT_EQ(a.singleton_rhs, 5);
    EXPECT_EQ(a.prior_lower, 0);
    EXPECT_EQ(a.prior_upper, Rational(5, 4) * Rational(25, 24) * 625);

    const auto b = bound_table(64, 7, 6);
    EXPECT_TRUE(b.construction_applies);
    EXPECT_EQ(b.construction_lower, Rational(576));
    EXPECT_EQ(b.code_n, 576u);
    EXPECT_EQ(b.code_k, 500u);
    EXPECT_EQ(b.singleton_rhs, 6);
    EXPECT_EQ(b.prior_lower, 0);
}

TEST(Bounds, PriorLowerBoundFormulas) {
    // d = 5: w * floor(q^2 / (1024 w^3)); first nonzero at large q
    const auto big5 = bound_table(625 * 625, 4, 5); // q = 5^8
    const BigInt q = 390625;
    EXPECT_EQ(big5.prior_lower, BigInt(5) * ((q * q) / (BigInt(1024) * 125)));
    // d = 6 computed in floating point as a cross check where no rounding edge is near
    const auto big6 = bound_table(std::uint64_t{1} << 24, 7, 6);
    const double approx = 8.0 * std::floor(std::pow(2.0, 48) / (6250.0 * std::pow(8.0, 3.5)));
    EXPECT_EQ(static_cast<double>(big6.prior_lower), approx);
}

TEST(Bounds, Hypotheses) {
    EXPECT_FALSE(bound_table(16, 3, 5).construction_applies);   // r+1 = 4 < 5
    EXPECT_TRUE(bound_table(49, 6, 5).construction_applies);    // r+1 = 7, q = 7^2
    EXPECT_FALSE(bound_table(32, 7, 6).construction_applies);   // 32 is not a power of 8
    EXPECT_FALSE(bound_table(49, 6, 6).construction_applies);   // odd block size
    EXPECT_TRUE(bound_table(64, 7, 6).construction_applies);
    EXPECT_EQ(code_of([] { bound_table(26, 4, 5); }), ErrorCode::InvalidParameters);
    EXPECT_EQ(code_of([] { bound_table(25, 4, 7); }), ErrorCode::InvalidParameters);
}
