#pragma once

#include <gmpxx.h>

#include <compare>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "tamarkin/core/error.hpp"

namespace tamarkin {

/// Exact rational number extended by the two infinities.
///
/// Finite values are kept in lowest terms with a positive denominator (GMP
/// canonicalizes after every operation). Arithmetic that has no meaning on the
/// extended line (inf - inf, 0 * inf, division by zero) throws a parameter error.
class Rat {
public:
    Rat() = default;
    Rat(long v) : value_(v) {}  // NOLINT: implicit from integers is convenient in formulas
    Rat(int v) : value_(v) {}   // NOLINT
    Rat(long num, long den) {
        if (den == 0) throw parameter_error("rational with zero denominator");
        value_ = mpq_class(num, den);
        value_.canonicalize();
    }
    explicit Rat(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

    static Rat infinity() { return Rat(Inf{}, 1); }
    static Rat neg_infinity() { return Rat(Inf{}, -1); }

    bool is_finite() const { return inf_ == 0; }
    bool is_pos_inf() const { return inf_ > 0; }
    bool is_neg_inf() const { return inf_ < 0; }
    bool is_zero() const { return inf_ == 0 && sgn(value_) == 0; }
    int sign() const { return inf_ != 0 ? inf_ : sgn(value_); }

    /// Underlying finite value; throws for infinities.
    const mpq_class& value() const {
        if (inf_ != 0) throw parameter_error("finite value requested from an infinite rational");
        return value_;
    }
    mpz_class numerator() const { return value().get_num(); }
    mpz_class denominator() const { return value().get_den(); }

    double to_double() const {
        if (inf_ > 0) return 1.0 / 0.0;
        if (inf_ < 0) return -1.0 / 0.0;
        return value_.get_d();
    }

    std::string to_string() const {
        if (inf_ > 0) return "inf";
        if (inf_ < 0) return "-inf";
        return value_.get_str();
    }

    /// Accepts `p`, `p/q`, `inf`, `+inf`, `-inf`. Returns nullopt on malformed text.
    static std::optional<Rat> parse(std::string_view text) {
        if (text == "inf" || text == "+inf") return infinity();
        if (text == "-inf") return neg_infinity();
        if (text.empty()) return std::nullopt;
        std::size_t slash = text.find('/');
        auto valid_int = [](std::string_view s) {
            if (s.empty()) return false;
            std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            if (i == s.size()) return false;
            for (; i < s.size(); ++i)
                if (s[i] < '0' || s[i] > '9') return false;
            return true;
        };
        std::string_view num = text.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') return std::nullopt;
        std::string n(num[0] == '+' ? num.substr(1) : num);
        mpz_class zn(n, 10), zd(std::string(den), 10);
        if (zd == 0) return std::nullopt;
        mpq_class q(zn, zd);
        q.canonicalize();
        return Rat(std::move(q));
    }

    static Rat parse_or_throw(std::string_view text) {
        auto r = parse(text);
        if (!r) throw parameter_error("malformed rational '" + std::string(text) + "'");
        return *r;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        if (a.inf_ != 0 || b.inf_ != 0) {
            if (a.inf_ != 0 && b.inf_ != 0 && a.inf_ != b.inf_) throw parameter_error("inf - inf is undefined");
            return Rat(Inf{}, a.inf_ != 0 ? a.inf_ : b.inf_);
        }
        return Rat(mpq_class(a.value_ + b.value_));
    }
    friend Rat operator-(const Rat& a) {
        if (a.inf_ != 0) return Rat(Inf{}, -a.inf_);
        return Rat(mpq_class(-a.value_));
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        if (a.inf_ != 0 || b.inf_ != 0) {
            int s = a.sign() * b.sign();
            if (s == 0) throw parameter_error("0 * inf is undefined");
            return Rat(Inf{}, s);
        }
        return Rat(mpq_class(a.value_ * b.value_));
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw parameter_error("division by zero");
        if (b.inf_ != 0) {
            if (a.inf_ != 0) throw parameter_error("inf / inf is undefined");
            return Rat(0);
        }
        if (a.inf_ != 0) return Rat(Inf{}, a.inf_ * sgn(b.value_));
        return Rat(mpq_class(a.value_ / b.value_));
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        if (a.inf_ != 0 || b.inf_ != 0) return a.inf_ == b.inf_;
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        if (a.inf_ != 0 || b.inf_ != 0) {
            if (a.inf_ == b.inf_) return std::strong_ordering::equal;
            int av = a.inf_ != 0 ? a.inf_ * 2 : 0;
            int bv = b.inf_ != 0 ? b.inf_ * 2 : 0;
            return av <=> bv;
        }
        int c = cmp(a.value_, b.value_);
        return c <=> 0;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

    std::size_t hash() const {
        if (inf_ != 0) return static_cast<std::size_t>(inf_ + 7);
        return std::hash<std::string>{}(value_.get_str());
    }

private:
    struct Inf {};
    Rat(Inf, int sign) : inf_(sign) {}

    mpq_class value_{0};
    int inf_ = 0;
};

inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }

}  // namespace tamarkin

template <>
struct std::hash<tamarkin::Rat> {
    std::size_t operator()(const tamarkin::Rat& r) const { return r.hash(); }
};
