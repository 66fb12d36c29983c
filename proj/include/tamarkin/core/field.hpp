#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "tamarkin/core/error.hpp"
#include "tamarkin/core/rat.hpp"

namespace tamarkin {

/// Runtime tag of a coefficient field as written in the text formats.
enum class FieldTag { f2, f3, f5, f7, q };

inline std::string to_string(FieldTag tag) {
    switch (tag) {
        case FieldTag::f2: return "f2";
        case FieldTag::f3: return "f3";
        case FieldTag::f5: return "f5";
        case FieldTag::f7: return "f7";
        case FieldTag::q: return "q";
    }
    return "?";
}

inline std::optional<FieldTag> parse_field_tag(std::string_view s) {
    if (s == "f2") return FieldTag::f2;
    if (s == "f3") return FieldTag::f3;
    if (s == "f5") return FieldTag::f5;
    if (s == "f7") return FieldTag::f7;
    if (s == "q") return FieldTag::q;
    return std::nullopt;
}

template <class K>
concept Field = std::regular<K> && requires(K a, K b, long n) {
    { K::zero() } -> std::same_as<K>;
    { K::one() } -> std::same_as<K>;
    { K::from_int(n) } -> std::same_as<K>;
    { a + b } -> std::same_as<K>;
    { a - b } -> std::same_as<K>;
    { -a } -> std::same_as<K>;
    { a * b } -> std::same_as<K>;
    { a.inverse() } -> std::same_as<K>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.to_string() } -> std::convertible_to<std::string>;
    { K::tag() } -> std::same_as<FieldTag>;
};

/// Prime field F_P with P < 2^31.
template <std::uint32_t P>
class Fp {
    static_assert(P >= 2 && P < (1u << 31));

public:
    static constexpr std::uint32_t modulus = P;

    constexpr Fp() = default;

    static constexpr Fp zero() { return Fp(); }
    static constexpr Fp one() { return raw(1 % P); }
    static Fp from_int(long n) {
        long r = n % static_cast<long>(P);
        if (r < 0) r += P;
        return raw(static_cast<std::uint32_t>(r));
    }
    static Fp from_rat(const Rat& r) {
        mpz_class num = r.numerator() % P, den = r.denominator() % P;
        if (den == 0) throw parameter_error("rational not representable in F_" + std::to_string(P));
        return from_int(num.get_si()) * from_int(den.get_si()).inverse();
    }
    static FieldTag tag() {
        if constexpr (P == 2) return FieldTag::f2;
        else if constexpr (P == 3) return FieldTag::f3;
        else if constexpr (P == 5) return FieldTag::f5;
        else if constexpr (P == 7) return FieldTag::f7;
        else return FieldTag::q;  // large primes stand in for characteristic zero
    }

    constexpr std::uint32_t value() const { return v_; }
    constexpr bool is_zero() const { return v_ == 0; }

    friend constexpr Fp operator+(Fp a, Fp b) {
        std::uint32_t s = a.v_ + b.v_;
        return raw(s >= P ? s - P : s);
    }
    friend constexpr Fp operator-(Fp a, Fp b) { return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + P - b.v_); }
    friend constexpr Fp operator-(Fp a) { return raw(a.v_ == 0 ? 0 : P - a.v_); }
    friend constexpr Fp operator*(Fp a, Fp b) {
        return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % P));
    }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }

    Fp inverse() const {
        if (v_ == 0) throw parameter_error("inverse of zero");
        // Fermat
        std::uint64_t result = 1, base = v_;
        std::uint32_t e = P - 2;
        while (e) {
            if (e & 1) result = result * base % P;
            base = base * base % P;
            e >>= 1;
        }
        return raw(static_cast<std::uint32_t>(result));
    }

    std::string to_string() const { return std::to_string(v_); }

    friend constexpr bool operator==(Fp a, Fp b) = default;

private:
    static constexpr Fp raw(std::uint32_t v) {
        Fp x;
        x.v_ = v;
        return x;
    }
    std::uint32_t v_ = 0;
};

/// The rationals as a coefficient field.
class Q {
public:
    Q() = default;
    explicit Q(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    static Q zero() { return Q(); }
    static Q one() { return Q(mpq_class(1)); }
    static Q from_int(long n) { return Q(mpq_class(n)); }
    static Q from_rat(const Rat& r) { return Q(r.value()); }
    static FieldTag tag() { return FieldTag::q; }

    const mpq_class& value() const { return v_; }
    bool is_zero() const { return sgn(v_) == 0; }

    friend Q operator+(const Q& a, const Q& b) { return Q(mpq_class(a.v_ + b.v_)); }
    friend Q operator-(const Q& a, const Q& b) { return Q(mpq_class(a.v_ - b.v_)); }
    friend Q operator-(const Q& a) { return Q(mpq_class(-a.v_)); }
    friend Q operator*(const Q& a, const Q& b) { return Q(mpq_class(a.v_ * b.v_)); }
    Q& operator+=(const Q& o) { return *this = *this + o; }
    Q& operator-=(const Q& o) { return *this = *this - o; }
    Q& operator*=(const Q& o) { return *this = *this * o; }

    Q inverse() const {
        if (is_zero()) throw parameter_error("inverse of zero");
        return Q(mpq_class(1 / v_));
    }

    std::string to_string() const { return v_.get_str(); }

    friend bool operator==(const Q& a, const Q& b) { return a.v_ == b.v_; }

private:
    mpq_class v_{0};
};

using F2 = Fp<2>;
using F3 = Fp<3>;
/// Large prime used where a characteristic-zero-like field is wanted at machine speed.
using FBig = Fp<1000003>;

static_assert(Field<F2>);
static_assert(Field<Q>);

/// Parses a field element written as an integer or `p/q`.
template <Field K>
K parse_scalar(std::string_view text) {
    auto r = Rat::parse(text);
    if (!r || !r->is_finite()) throw parameter_error("malformed coefficient '" + std::string(text) + "'");
    return K::from_rat(*r);
}

/// Calls `fn` with a default-constructed value of the field selected by `tag`.
template <class Fn>
decltype(auto) with_field(FieldTag tag, Fn&& fn) {
    switch (tag) {
        case FieldTag::f2: return std::forward<Fn>(fn)(F2{});
        case FieldTag::f3: return std::forward<Fn>(fn)(F3{});
        case FieldTag::f5: return std::forward<Fn>(fn)(Fp<5>{});
        case FieldTag::f7: return std::forward<Fn>(fn)(Fp<7>{});
        case FieldTag::q: return std::forward<Fn>(fn)(Q{});
    }
    throw parameter_error("unknown field tag");
}

}  // namespace tamarkin
