#pragma once

// Arithmetic in GF(p^t) over the polynomial basis.
//
// An element is identified by its canonical index sum(coeffs[i] * p^i), so the
// enumeration order 0, 1, ..., q-1 is the same on every platform. Fields up to
// kTableLimit elements carry full addition/multiplication tables; larger ones
// fall back to coefficient arithmetic.

#include "lrc/error.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lrc {

class Element {
public:
    constexpr Element() = default;
    constexpr explicit Element(std::uint32_t index) : index_(index) {}

    constexpr std::uint32_t index() const noexcept { return index_; }
    constexpr bool is_zero() const noexcept { return index_ == 0; }

    friend constexpr auto operator<=>(Element, Element) = default;

private:
    std::uint32_t index_ = 0;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using Poly = std::vector<std::uint32_t>; // ascending coefficients over GF(p)

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p prime, a != 0 mod p
    std::uint64_t result = 1, base = a % p;
    for (std::uint64_t e = p - 2; e; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(result);
}

/// Remainder of a modulo b over GF(p); b must be nonzero after trimming.
inline Poly poly_mod(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    const std::uint32_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        for (std::size_t i = 0; i < b.size(); ++i) {
            const std::uint64_t sub = factor * b[i] % p;
            a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg <= 1) return deg == 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g(d + 1, 0);
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

} // namespace detail

/// Immutable description of GF(p^t). Copies share the same tables.
class Field {
public:
    static constexpr std::uint32_t kTableLimit = 1024;
    static constexpr std::uint32_t kMaxSize = 1u << 16;

    Field(std::uint32_t p, std::uint32_t t, std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
        if (!detail::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
        if (t < 1) throw Error(ErrorCode::DegreeMismatch, "extension degree must be at least 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < t; ++i) {
            q *= p;
            if (q > kMaxSize) throw Error(ErrorCode::InvalidParameters, "field size exceeds 2^16");
        }
        auto impl = std::make_shared<Impl>();
        impl->p = p;
        impl->t = t;
        impl->q = static_cast<std::uint32_t>(q);
        if (modulus) {
            if (modulus->size() != t + 1 || modulus->back() != 1)
                throw Error(ErrorCode::DegreeMismatch, "modulus must be monic of degree " + std::to_string(t));
            for (auto c : *modulus)
                if (c >= p) throw Error(ErrorCode::DegreeMismatch, "modulus coefficient out of range");
            if (!detail::is_irreducible(*modulus, p))
                throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
            impl->modulus = *modulus;
        } else {
            impl->modulus = smallest_irreducible(p, t);
        }
        impl->p_powers.resize(t);
        std::uint32_t pw = 1;
        for (std::uint32_t i = 0; i < t; ++i, pw *= p) impl->p_powers[i] = pw;
        impl_ = std::move(impl);
        build_tables();
    }

    std::uint32_t characteristic() const noexcept { return impl_->p; }
    std::uint32_t degree() const noexcept { return impl_->t; }
    std::uint32_t size() const noexcept { return impl_->q; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return impl_->modulus; }

    Element zero() const noexcept { return Element{0}; }
    Element one() const noexcept { return Element{1}; }

    bool contains(Element a) const noexcept { return a.index() < impl_->q; }

    Element element(std::uint64_t index) const {
        if (index >= impl_->q)
            throw Error(ErrorCode::FieldMismatch,
                        "index " + std::to_string(index) + " outside GF(" + std::to_string(impl_->q) + ")");
        return Element{static_cast<std::uint32_t>(index)};
    }

    std::vector<std::uint32_t> coeffs(Element a) const {
        std::vector<std::uint32_t> out(impl_->t);
        std::uint32_t v = a.index();
        for (auto& c : out) {
            c = v % impl_->p;
            v /= impl_->p;
        }
        return out;
    }

    Element from_coeffs(std::span<const std::uint32_t> c) const {
        if (c.size() != impl_->t) throw Error(ErrorCode::FieldMismatch, "coefficient vector has wrong length");
        std::uint32_t idx = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= impl_->p) throw Error(ErrorCode::FieldMismatch, "coefficient out of range");
            idx += c[i] * impl_->p_powers[i];
        }
        return Element{idx};
    }

    /// All q elements in ascending index order.
    std::vector<Element> elements() const {
        std::vector<Element> out;
        out.reserve(impl_->q);
        for (std::uint32_t i = 0; i < impl_->q; ++i) out.emplace_back(i);
        return out;
    }

    Element add(Element a, Element b) const noexcept {
        if (impl_->p == 2) return Element{a.index() ^ b.index()};
        if (impl_->tabulated) return Element{impl_->add[a.index() * impl_->q + b.index()]};
        return add_slow(a, b);
    }

    Element neg(Element a) const noexcept {
        if (impl_->p == 2) return a;
        return Element{impl_->neg[a.index()]};
    }

    Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }

    Element mul(Element a, Element b) const noexcept {
        if (impl_->tabulated) return Element{impl_->mul[a.index() * impl_->q + b.index()]};
        return mul_slow(a, b);
    }

    Element inv(Element a) const {
        if (a.is_zero()) throw Error(ErrorCode::ZeroInverse, "zero has no multiplicative inverse");
        return Element{impl_->inv[a.index()]};
    }

    Element div(Element a, Element b) const { return mul(a, inv(b)); }

    Element pow(Element a, std::uint64_t e) const noexcept {
        Element result = one();
        for (; e; e >>= 1) {
            if (e & 1) result = mul(result, a);
            a = mul(a, a);
        }
        return result;
    }

    /// Elements of the subfield GF(base), i.e. the fixed points of x -> x^base.
    std::vector<Element> subfield(std::uint64_t base) const {
        std::uint32_t u = 0;
        std::uint64_t v = 1;
        while (v < base) {
            v *= impl_->p;
            ++u;
        }
        if (v != base || u == 0 || impl_->t % u != 0)
            throw Error(ErrorCode::InvalidParameters,
                        "GF(" + std::to_string(base) + ") is not a subfield of GF(" + std::to_string(impl_->q) + ")");
        std::vector<Element> out;
        for (std::uint32_t i = 0; i < impl_->q; ++i)
            if (pow(Element{i}, base) == Element{i}) out.emplace_back(i);
        return out;
    }

    friend bool operator==(const Field& a, const Field& b) noexcept {
        return a.impl_ == b.impl_ ||
               (a.impl_->p == b.impl_->p && a.impl_->t == b.impl_->t && a.impl_->modulus == b.impl_->modulus);
    }

    std::string name() const {
        return impl_->t == 1 ? "GF(" + std::to_string(impl_->p) + ")"
                             : "GF(" + std::to_string(impl_->p) + "^" + std::to_string(impl_->t) + ")";
    }

private:
    struct Impl {
        std::uint32_t p = 0, t = 0, q = 0;
        std::vector<std::uint32_t> modulus;
        std::vector<std::uint32_t> p_powers;
        bool tabulated = false;
        std::vector<std::uint16_t> add, mul;
        std::vector<std::uint32_t> neg, inv;
    };

    static std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t t) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < t; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            detail::Poly f(t + 1, 0);
            std::uint64_t v = idx;
            for (std::uint32_t i = 0; i < t; ++i) {
                f[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            f[t] = 1;
            if (detail::is_irreducible(f, p)) return f;
        }
        throw Error(ErrorCode::ReducibleModulus, "no irreducible polynomial found"); // unreachable
    }

    Element add_slow(Element a, Element b) const noexcept {
        const auto p = impl_->p;
        std::uint32_t x = a.index(), y = b.index(), out = 0;
        for (std::uint32_t i = 0; i < impl_->t; ++i) {
            out += ((x % p + y % p) % p) * impl_->p_powers[i];
            x /= p;
            y /= p;
        }
        return Element{out};
    }

    Element neg_slow(Element a) const noexcept {
        const auto p = impl_->p;
        std::uint32_t x = a.index(), out = 0;
        for (std::uint32_t i = 0; i < impl_->t; ++i) {
            out += ((p - x % p) % p) * impl_->p_powers[i];
            x /= p;
        }
        return Element{out};
    }

    Element mul_slow(Element a, Element b) const noexcept {
        const auto p = impl_->p;
        const auto t = impl_->t;
        std::uint32_t ca[32] = {}, cb[32] = {};
        std::uint64_t prod[64] = {};
        std::uint32_t x = a.index(), y = b.index();
        for (std::uint32_t i = 0; i < t; ++i) {
            ca[i] = x % p;
            cb[i] = y % p;
            x /= p;
            y /= p;
        }
        for (std::uint32_t i = 0; i < t; ++i)
            for (std::uint32_t j = 0; j < t; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
        const auto& mod = impl_->modulus;
        for (std::uint32_t d = 2 * t - 1; d-- > t;) {
            const std::uint64_t c = prod[d];
            if (!c) continue;
            prod[d] = 0;
            for (std::uint32_t j = 0; j < t; ++j) prod[d - t + j] = (prod[d - t + j] + (p - c) * mod[j]) % p;
        }
        std::uint32_t out = 0;
        for (std::uint32_t i = 0; i < t; ++i) out += static_cast<std::uint32_t>(prod[i]) * impl_->p_powers[i];
        return Element{out};
    }

    void build_tables() {
        auto impl = std::const_pointer_cast<Impl>(impl_);
        const std::uint32_t q = impl->q;
        impl->neg.resize(q);
        for (std::uint32_t i = 0; i < q; ++i) impl->neg[i] = neg_slow(Element{i}).index();
        if (q <= kTableLimit) {
            impl->add.resize(std::size_t{q} * q);
            impl->mul.resize(std::size_t{q} * q);
            for (std::uint32_t i = 0; i < q; ++i)
                for (std::uint32_t j = 0; j < q; ++j) {
                    impl->add[i * q + j] = static_cast<std::uint16_t>(add_slow(Element{i}, Element{j}).index());
                    impl->mul[i * q + j] = static_cast<std::uint16_t>(mul_slow(Element{i}, Element{j}).index());
                }
            impl->tabulated = true;
        }
        impl->inv.assign(q, 0);
        for (std::uint32_t i = 1; i < q; ++i) impl->inv[i] = pow(Element{i}, q - 2).index();
    }

    std::shared_ptr<const Impl> impl_;
};

/// Validated GF(p^t); when `modulus` is omitted the lexicographically smallest
/// monic irreducible of degree t is used.
inline Field make_field(std::uint32_t p, std::uint32_t t,
                        std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
    return Field(p, t, std::move(modulus));
}

inline std::vector<Element> enumerate_elements(const Field& field) { return field.elements(); }

enum class FieldOp { add, sub, mul, inv, pow };

/// Checked entry point: validates operand membership before dispatching.
/// `pow` takes its exponent from `exponent`; `inv` uses the first operand only.
inline Element field_arith(const Field& field, FieldOp op, std::span<const Element> operands,
                           std::uint64_t exponent = 0) {
    const std::size_t arity = (op == FieldOp::inv || op == FieldOp::pow) ? 1 : 2;
    if (operands.size() != arity)
        throw Error(ErrorCode::InvalidParameters, "expected " + std::to_string(arity) + " operand(s)");
    for (auto a : operands)
        if (!field.contains(a))
            throw Error(ErrorCode::FieldMismatch,
                        "element " + std::to_string(a.index()) + " does not belong to " + field.name());
    switch (op) {
        case FieldOp::add: return field.add(operands[0], operands[1]);
        case FieldOp::sub: return field.sub(operands[0], operands[1]);
        case FieldOp::mul: return field.mul(operands[0], operands[1]);
        case FieldOp::inv: return field.inv(operands[0]);
        case FieldOp::pow: return field.pow(operands[0], exponent);
    }
    return field.zero();
}

} // namespace lrc
