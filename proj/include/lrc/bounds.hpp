#pragma once

// Length bounds for optimal locality-r codes of distance 5 and 6: the length
// reached by the affine-line construction versus the earlier algorithmic
// lower bound and the general upper bound. All values are exact.

#include "lrc/code.hpp"
#include "lrc/cwc.hpp"

#include <optional>
#include <utility>

namespace lrc {

struct PrimePower {
    std::uint64_t p;
    std::uint64_t s;
};

inline std::optional<PrimePower> as_prime_power(std::uint64_t x) {
    if (x < 2) return std::nullopt;
    std::uint64_t p = 2;
    while (x % p != 0) ++p;
    std::uint64_t s = 0;
    while (x % p == 0) {
        x /= p;
        ++s;
    }
    if (x != 1) return std::nullopt;
    return PrimePower{p, s};
}

/// Largest t with base^t == x, if x is a power of base.
inline std::optional<std::uint64_t> log_exact(std::uint64_t x, std::uint64_t base) {
    if (base < 2 || x < 1) return std::nullopt;
    std::uint64_t t = 0;
    while (x % base == 0) {
        x /= base;
        ++t;
    }
    if (x != 1) return std::nullopt;
    return t;
}

struct BoundReport {
    std::uint64_t q = 0, r = 0;
    int d = 0;
    /// Whether (q, r, d) satisfies the hypotheses of the affine construction:
    /// q = (r+1)^t with r+1 >= 5 a prime power (d = 5), or r+1 >= 8 a power of 2 (d = 6).
    bool construction_applies = false;
    Rational construction_lower;                 // q(q-1)/r
    std::optional<std::uint64_t> code_n, code_k; // parameters of that code, when it applies
    std::optional<std::int64_t> singleton_rhs;   // Singleton-type bound at (n, k, r)
    BigInt prior_lower;                          // (r+1) floor(q^2 / (2^10 (r+1)^3)), or the d = 6 analogue
    Rational prior_upper;                        // (r+1)/r * q/(q-1) * q^(d-3)
};

namespace detail {

inline BigInt isqrt(const BigInt& x) { return boost::multiprecision::sqrt(x); }

} // namespace detail

inline BoundReport bound_table(std::uint64_t q, std::uint64_t r, int d) {
    if (!as_prime_power(q)) throw Error(ErrorCode::InvalidParameters, std::to_string(q) + " is not a prime power");
    if (r < 2) throw Error(ErrorCode::InvalidParameters, "locality must be at least 2");
    if (d != 5 && d != 6) throw Error(ErrorCode::InvalidParameters, "distance must be 5 or 6");

    BoundReport rep;
    rep.q = q;
    rep.r = r;
    rep.d = d;
    const std::uint64_t w = r + 1;
    rep.construction_lower = Rational(BigInt(q) * (q - 1), BigInt(r));

    const auto pp = as_prime_power(w);
    const bool block_ok = d == 5 ? (w >= 5 && pp.has_value()) : (w >= 8 && pp && pp->p == 2);
    const auto t = log_exact(q, w);
    rep.construction_applies = block_ok && t.has_value() && *t >= 1;
    if (rep.construction_applies) {
        const std::uint64_t m = affine_line_count(w, *t);
        const std::uint64_t n = w * m;
        const std::uint64_t k = n - m - static_cast<std::uint64_t>(d - 2);
        rep.code_n = n;
        rep.code_k = k;
        if (k >= 1) rep.singleton_rhs = singleton_rhs(n, k, r);
    }

    const BigInt q2 = BigInt(q) * q;
    BigInt wp = 1;
    if (d == 5) {
        for (int i = 0; i < 3; ++i) wp *= w;
        rep.prior_lower = BigInt(w) * (q2 / (BigInt(1024) * wp));
    } else {
        // floor(q^2 / (6250 * sqrt(w^7))) == isqrt(floor(q^4 / (6250^2 * w^7)))
        for (int i = 0; i < 7; ++i) wp *= w;
        const BigInt inner = (q2 * q2) / (BigInt(6250) * 6250 * wp);
        rep.prior_lower = BigInt(w) * detail::isqrt(inner);
    }

    BigInt qpow = 1;
    for (int i = 0; i < d - 3; ++i) qpow *= q;
    rep.prior_upper = Rational(BigInt(w), BigInt(r)) * Rational(BigInt(q), BigInt(q - 1)) * Rational(qpow);
    return rep;
}

} // namespace lrc
