#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "tamarkin/core/error.hpp"
#include "tamarkin/core/field.hpp"
#include "tamarkin/core/rat.hpp"

namespace tamarkin {

inline const Rat& default_novikov_precision() {
    static const Rat p(64);
    return p;
}

/// Truncated element of the universal Novikov ring: a finite sum of c_i T^{e_i}
/// with 0 <= e_1 < e_2 < ... < precision and nonzero c_i.
///
/// `precision` is the exponent below which every coefficient is known. A value
/// is `exact` when no term was ever dropped on the way to it; an inexact zero is
/// only known to vanish below its precision, and asking for its valuation raises
/// a precision error instead of guessing.
template <Field K>
class NovikovScalar {
public:
    struct Term {
        K coef;
        Rat exponent;
        friend bool operator==(const Term&, const Term&) = default;
    };

    NovikovScalar() : precision_(default_novikov_precision()) {}
    explicit NovikovScalar(Rat precision) : precision_(std::move(precision)) {
        if (!precision_.is_finite() || precision_.sign() <= 0) throw parameter_error("Novikov precision must be positive and finite");
    }

    static NovikovScalar zero(const Rat& precision = default_novikov_precision()) { return NovikovScalar(precision); }
    static NovikovScalar one(const Rat& precision = default_novikov_precision()) { return monomial(K::one(), Rat(0), precision); }

    /// c T^e. Raises a precision error when e is at or beyond the precision.
    static NovikovScalar monomial(const K& c, const Rat& e, const Rat& precision = default_novikov_precision()) {
        if (!e.is_finite() || e.sign() < 0) throw parameter_error("Novikov exponents must be finite and >= 0");
        NovikovScalar x(precision);
        if (e >= precision) throw precision_error("monomial T^" + e.to_string() + " is beyond precision " + precision.to_string());
        if (!c.is_zero()) x.terms_.push_back({c, e});
        return x;
    }

    /// Builds from arbitrary (coef, exponent) pairs: merges equal exponents and
    /// drops terms at or beyond the precision (marking the value inexact).
    static NovikovScalar from_terms(std::vector<Term> terms, const Rat& precision = default_novikov_precision()) {
        NovikovScalar x(precision);
        x.assign(std::move(terms));
        return x;
    }

    const std::vector<Term>& terms() const { return terms_; }
    const Rat& precision() const { return precision_; }
    bool exact() const { return exact_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_exact_zero() const { return terms_.empty() && exact_; }

    /// Least exponent with a nonzero coefficient; +inf for an exact zero.
    Rat valuation() const {
        if (!terms_.empty()) return terms_.front().exponent;
        if (exact_) return Rat::infinity();
        throw precision_error("valuation of a value that vanishes only below precision " + precision_.to_string());
    }
    const K& leading_coefficient() const {
        if (terms_.empty()) throw parameter_error("leading coefficient of zero");
        return terms_.front().coef;
    }

    friend NovikovScalar operator+(const NovikovScalar& a, const NovikovScalar& b) {
        NovikovScalar r(min(a.precision_, b.precision_));
        std::vector<Term> t = a.terms_;
        t.insert(t.end(), b.terms_.begin(), b.terms_.end());
        r.exact_ = a.exact_ && b.exact_;
        r.assign(std::move(t));
        // Terms between the smaller and the larger precision are unknown.
        if (a.precision_ != b.precision_ && !(a.exact_ && b.exact_)) r.exact_ = false;
        return r;
    }
    friend NovikovScalar operator-(const NovikovScalar& a) {
        NovikovScalar r = a;
        for (Term& t : r.terms_) t.coef = -t.coef;
        return r;
    }
    friend NovikovScalar operator-(const NovikovScalar& a, const NovikovScalar& b) { return a + (-b); }
    friend NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b) {
        // c mod T^p is determined by a mod T^p and b mod T^p, p = min precision
        NovikovScalar r(min(a.precision_, b.precision_));
        std::vector<Term> t;
        t.reserve(a.terms_.size() * b.terms_.size());
        for (const Term& x : a.terms_)
            for (const Term& y : b.terms_) t.push_back({x.coef * y.coef, x.exponent + y.exponent});
        r.exact_ = a.exact_ && b.exact_;
        r.assign(std::move(t));
        return r;
    }
    NovikovScalar& operator+=(const NovikovScalar& o) { return *this = *this + o; }
    NovikovScalar& operator-=(const NovikovScalar& o) { return *this = *this - o; }
    NovikovScalar& operator*=(const NovikovScalar& o) { return *this = *this * o; }

    /// Multiplication by T^e (e >= 0).
    NovikovScalar shifted(const Rat& e) const {
        NovikovScalar r(precision_);
        std::vector<Term> t = terms_;
        for (Term& x : t) x.exponent += e;
        r.exact_ = exact_;
        r.assign(std::move(t));
        return r;
    }

    /// Inverse of a unit (valuation 0), expanded as a geometric series and
    /// truncated at the precision.
    NovikovScalar unit_inverse() const {
        if (terms_.empty() || terms_.front().exponent.sign() != 0) throw parameter_error("unit_inverse needs valuation 0");
        K c0_inv = terms_.front().coef.inverse();
        if (terms_.size() == 1) {
            NovikovScalar r = monomial(c0_inv, Rat(0), precision_);
            r.exact_ = exact_;
            return r;
        }
        // u = c0 (1 + w) with v(w) > 0; 1/u = c0^{-1} sum (-w)^k
        NovikovScalar w(precision_);
        std::vector<Term> wt(terms_.begin() + 1, terms_.end());
        for (Term& x : wt) x.coef = x.coef * c0_inv;
        w.assign(std::move(wt));
        NovikovScalar minus_w = -w;
        NovikovScalar sum = one(precision_);
        NovikovScalar power = one(precision_);
        while (true) {
            power = power * minus_w;
            if (power.terms_.empty()) break;
            sum = sum + power;
        }
        sum.exact_ = false;  // the series is infinite
        for (Term& x : sum.terms_) x.coef = x.coef * c0_inv;
        return sum;
    }

    /// Exact quotient a / b in the valuation ring; requires v(a) >= v(b).
    /// The result is known modulo T^{p - v(b)}.
    static NovikovScalar divide(const NovikovScalar& a, const NovikovScalar& b) {
        Rat vb = b.valuation();
        if (vb.is_pos_inf()) throw parameter_error("division by zero Novikov scalar");
        Rat p = min(a.precision_, b.precision_) - vb;
        if (p.sign() <= 0) throw precision_error("division exhausts the precision");
        if (a.is_zero()) {
            NovikovScalar z(p);
            z.exact_ = a.exact_;
            return z;
        }
        if (a.valuation() < vb) throw parameter_error("Novikov division needs v(a) >= v(b)");
        NovikovScalar a_down(p), b_down(p);
        std::vector<Term> at = a.terms_, bt = b.terms_;
        for (Term& x : at) x.exponent -= vb;
        for (Term& x : bt) x.exponent -= vb;
        a_down.exact_ = a.exact_;
        b_down.exact_ = b.exact_;
        a_down.assign(std::move(at));
        b_down.assign(std::move(bt));
        return a_down * b_down.unit_inverse();
    }

    std::string to_string() const {
        if (terms_.empty()) return exact_ ? "0" : "O(T^" + precision_.to_string() + ")";
        std::string s;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) s += " + ";
            s += terms_[i].coef.to_string() + "*T^" + terms_[i].exponent.to_string();
        }
        return s;
    }

    /// Equality of the known parts (terms below the common precision).
    friend bool operator==(const NovikovScalar& a, const NovikovScalar& b) {
        Rat p = min(a.precision_, b.precision_);
        auto below = [&](const std::vector<Term>& t) {
            std::vector<Term> out;
            for (const Term& x : t)
                if (x.exponent < p) out.push_back(x);
            return out;
        };
        return below(a.terms_) == below(b.terms_);
    }

private:
    void assign(std::vector<Term> t) {
        std::sort(t.begin(), t.end(), [](const Term& x, const Term& y) { return x.exponent < y.exponent; });
        terms_.clear();
        for (Term& x : t) {
            if (x.exponent.sign() < 0) throw parameter_error("negative Novikov exponent");
            if (x.exponent >= precision_) {
                if (!x.coef.is_zero()) exact_ = false;
                continue;
            }
            if (!terms_.empty() && terms_.back().exponent == x.exponent)
                terms_.back().coef += x.coef;
            else
                terms_.push_back(std::move(x));
            if (terms_.back().coef.is_zero()) terms_.pop_back();
        }
    }

    std::vector<Term> terms_;
    Rat precision_;
    bool exact_ = true;
};

}  // namespace tamarkin
