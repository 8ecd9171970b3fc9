#include "lrc/codec.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace lrc;

namespace {

BlockDesign whole_field(const Field& f) { return BlockDesign{f, f.size(), {f.elements()}}; }

const LrcCode& code5() {
    static const LrcCode c = make_code(whole_field(make_field(5, 1)), 5);
    return c;
}
const LrcCode& code8() {
    static const LrcCode c = make_code(whole_field(make_field(2, 3)), 6);
    return c;
}
const LrcCode& code150() {
    static const LrcCode c = make_code(affine_lines(5, 1, 2), 5);
    return c;
}

std::vector<Element> random_message(const LrcCode& code, std::mt19937& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, code.field.size() - 1);
    std::vector<Element> m(code.k);
    for (auto& x : m) x = Element{pick(rng)};
    return m;
}

bool is_zero(std::span<const Element> v) {
    return std::all_of(v.begin(), v.end(), [](Element x) { return x.is_zero(); });
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

} // namespace

TEST(Generator, Gf5IsAllOnes) {
    const Matrix G = generator_matrix(code5());
    ASSERT_EQ(G.rows(), 1u);
    ASSERT_EQ(G.cols(), 5u);
    // normalized so the lone basis vector is (1,1,1,1,1) up to a scalar
    const Element s = G(0, 0);
    ASSERT_FALSE(s.is_zero());
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(G(0, j), s);
    const Element ones[] = {Element{1}, Element{1}, Element{1}, Element{1}, Element{1}};
    EXPECT_TRUE(is_zero(syndrome(code5(), ones)));
}

TEST(Generator, OrthogonalToParityChecks) {
    for (const auto* code : {&code5(), &code8(), &code150()}) {
        const Matrix G = generator_matrix(*code);
        EXPECT_EQ(G.rows(), code->k);
        EXPECT_EQ(oracle::rank(code->field, G), code->k);
        const Matrix prod = multiply(code->field, G, code->H.entries.transpose());
        for (auto x : prod.data()) ASSERT_TRUE(x.is_zero());
    }
}

TEST(Encode, Examples) {
    const Element one[] = {Element{1}};
    const auto c = encode(code5(), one).values();
    const Encoder enc(code5());
    // scale so the message symbol lands as the all-ones word
    const Element s = code5().field.inv(enc.generator()(0, 0));
    const Element scaled[] = {s};
    EXPECT_EQ(enc.encode(scaled).values(), std::vector<Element>(5, Element{1}));
    EXPECT_TRUE(is_zero(syndrome(code5(), c)));

    const std::vector<Element> zeros(code150().k);
    EXPECT_TRUE(is_zero(Encoder(code150()).encode(zeros).values()));
}

TEST(Encode, RandomMessagesAreCodewordsAndInjective) {
    std::mt19937 rng(1);
    for (const auto* code : {&code8(), &code150()}) {
        const Encoder enc(*code);
        std::set<std::vector<Element>> msgs, words;
        for (int i = 0; i < 200; ++i) {
            const auto m = random_message(*code, rng);
            const auto c = enc.encode(m).values();
            EXPECT_TRUE(is_zero(syndrome(*code, c)));
            msgs.insert(m);
            words.insert(c);
        }
        EXPECT_EQ(words.size(), msgs.size());
    }
    // exhaustive injectivity on the [8,3] code: 512 messages, 512 distinct words
    const Encoder enc(code8());
    std::set<std::vector<Element>> words;
    for (std::uint32_t a = 0; a < 8; ++a)
        for (std::uint32_t b = 0; b < 8; ++b)
            for (std::uint32_t c = 0; c < 8; ++c) {
                const Element m[] = {Element{a}, Element{b}, Element{c}};
                words.insert(enc.encode(m).values());
            }
    EXPECT_EQ(words.size(), 512u);
}

TEST(Encode, Errors) {
    const Encoder enc(code8());
    const Element short_msg[] = {Element{1}};
    EXPECT_EQ(code_of([&] { enc.encode(short_msg); }), ErrorCode::LengthMismatch);
    const Element foreign[] = {Element{1}, Element{9}, Element{0}};
    EXPECT_EQ(code_of([&] { enc.encode(foreign); }), ErrorCode::FieldMismatch);
}

TEST(LocalRepair, Gf5Example) {
    Codeword w(std::vector<std::optional<Element>>(5, Element{1}));
    w.erase(2);
    EXPECT_EQ(local_repair(code5(), w), Element{1});

    Codeword zero(std::vector<std::optional<Element>>(5, Element{0}));
    zero.erase(4);
    EXPECT_EQ(local_repair(code5(), zero), Element{0});
}

TEST(LocalRepair, ReadsExactlyTheMates) {
    std::mt19937 rng(2);
    for (const auto* code : {&code5(), &code8(), &code150()}) {
        const Encoder enc(*code);
        for (int trial = 0; trial < 5; ++trial) {
            const auto c = enc.encode(random_message(*code, rng)).values();
            for (std::size_t pos = 0; pos < code->n; ++pos) {
                std::vector<std::size_t> reads;
                const Element got = repair_symbol(*code, pos, [&](std::size_t j) {
                    reads.push_back(j);
                    return std::optional<Element>(c[j]);
                });
                ASSERT_EQ(got, c[pos]);
                ASSERT_EQ(reads.size(), code->locality);
                const auto block = code->H.block_of(pos).block;
                for (auto j : reads) {
                    ASSERT_NE(j, pos);
                    ASSERT_EQ(code->H.block_of(j).block, block);
                }
            }
        }
    }
}

TEST(LocalRepair, CharacteristicTwoIsPlainSum) {
    std::mt19937 rng(3);
    const auto c = Encoder(code8()).encode(random_message(code8(), rng)).values();
    std::uint32_t x = 0;
    for (std::size_t j = 1; j < 8; ++j) x ^= c[j].index();
    Codeword w(c);
    w.erase(0);
    EXPECT_EQ(local_repair(code8(), w).index(), x);
}

TEST(LocalRepair, Errors) {
    Codeword w(std::vector<std::optional<Element>>(5, Element{1}));
    EXPECT_EQ(code_of([&] { local_repair(code5(), w); }), ErrorCode::WrongErasureCount);
    w.erase(0);
    w.erase(1);
    EXPECT_EQ(code_of([&] { local_repair(code5(), w); }), ErrorCode::WrongErasureCount);
    EXPECT_EQ(code_of([&] { repair_symbol(code5(), 0, [&](std::size_t j) { return w.symbols[j]; }); }),
              ErrorCode::MatesUnavailable);
}

TEST(ErasureDecode, Gf5FourErasures) {
    Codeword w(std::vector<std::optional<Element>>(5, Element{1}));
    for (std::size_t i = 1; i <= 4; ++i) w.erase(i);
    EXPECT_EQ(erasure_decode(code5(), w).values(), std::vector<Element>(5, Element{1}));
}

TEST(ErasureDecode, NoErasuresReturnsInput) {
    const Codeword w(std::vector<std::optional<Element>>(5, Element{2}));
    EXPECT_EQ(erasure_decode(code5(), w), w);
    Codeword bad(std::vector<std::optional<Element>>(5, Element{2}));
    bad.symbols[0] = Element{3};
    EXPECT_EQ(code_of([&] { erasure_decode(code5(), bad); }), ErrorCode::InconsistentWord);
}

TEST(ErasureDecode, ExhaustiveOnSmallCodes) {
    std::mt19937 rng(4);
    for (const auto* code : {&code5(), &code8()}) {
        const Encoder enc(*code);
        const std::size_t n = code->n;
        for (int trial = 0; trial < 4; ++trial) {
            const auto c = enc.encode(random_message(*code, rng)).values();
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                if (std::popcount(mask) > code->d_target - 1) continue;
                Codeword w(c);
                for (std::size_t i = 0; i < n; ++i)
                    if ((mask >> i) & 1) w.erase(i);
                ASSERT_EQ(erasure_decode(*code, w).values(), c) << "mask " << mask;
            }
        }
    }
}

TEST(ErasureDecode, RandomPatternsOnTheLongCode) {
    std::mt19937 rng(5);
    const Encoder enc(code150());
    std::uniform_int_distribution<std::size_t> pos(0, 149);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto c = enc.encode(random_message(code150(), rng)).values();
        Codeword w(c);
        const std::size_t e = 1 + trial % 4;
        while (w.erasure_count() < e) w.erase(pos(rng));
        ASSERT_EQ(erasure_decode(code150(), w).values(), c);
    }
}

TEST(ErasureDecode, Errors) {
    Codeword w(std::vector<std::optional<Element>>(5, Element{1}));
    for (std::size_t i = 0; i < 5; ++i) w.erase(i);
    EXPECT_EQ(code_of([&] { erasure_decode(code5(), w); }), ErrorCode::TooManyErasures);

    // a known symbol broken on a row the erasures do not touch
    std::mt19937 rng(6);
    auto c = Encoder(code150()).encode(random_message(code150(), rng)).values();
    c[10] = code150().field.add(c[10], Element{1});
    Codeword bad(c);
    bad.erase(0);
    EXPECT_EQ(code_of([&] { erasure_decode(code150(), bad); }), ErrorCode::InconsistentWord);

    EXPECT_EQ(code_of([&] { erasure_decode(code5(), Codeword(std::vector<std::optional<Element>>(4))); }),
              ErrorCode::LengthMismatch);
}

TEST(Syndrome, Linearity) {
    std::mt19937 rng(7);
    const LrcCode& code = code150();
    const Field& f = code.field;
    const auto c = Encoder(code).encode(random_message(code, rng)).values();
    EXPECT_TRUE(is_zero(syndrome(code, c)));
    std::uniform_int_distribution<std::uint32_t> pick(1, f.size() - 1);
    for (std::size_t j = 0; j < code.n; j += 7) {
        auto w = c;
        const Element e{pick(rng)};
        w[j] = f.add(w[j], e);
        const auto s = syndrome(code, w);
        for (std::size_t r = 0; r < code.H.rows(); ++r) ASSERT_EQ(s[r], f.mul(e, code.H.entries(r, j)));
    }
    const std::vector<Element> short_word(3);
    EXPECT_EQ(code_of([&] { syndrome(code, short_word); }), ErrorCode::LengthMismatch);
}

TEST(Syndrome, ExhaustiveScanOfGf5Words) {
    // exactly the 5 multiples of the all-ones word have zero syndrome
    std::size_t zero = 0, total = 0;
    std::vector<Element> w(5);
    for (std::uint32_t idx = 0; idx < 3125; ++idx) {
        std::uint32_t x = idx;
        for (auto& s : w) {
            s = Element{x % 5};
            x /= 5;
        }
        ++total;
        const bool z = is_zero(syndrome(code5(), w));
        zero += z;
        const bool constant = std::all_of(w.begin(), w.end(), [&](Element s) { return s == w[0]; });
        ASSERT_EQ(z, constant);
    }
    EXPECT_EQ(total, 3125u);
    EXPECT_EQ(zero, 5u);
}
