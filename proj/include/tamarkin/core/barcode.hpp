#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "tamarkin/core/error.hpp"
#include "tamarkin/core/rat.hpp"

namespace tamarkin {

/// Half-open interval [birth, death) carrying a cohomological degree.
struct Bar {
    Rat birth;
    Rat death;
    int degree = 0;

    Bar() = default;
    Bar(Rat b, Rat d, int deg = 0) : birth(std::move(b)), death(std::move(d)), degree(deg) {
        if (birth.is_pos_inf() || death.is_neg_inf() || !(birth < death))
            throw parameter_error("bar needs birth < death, got [" + birth.to_string() + ", " +
                                  death.to_string() + ")");
    }

    Rat length() const { return death - birth; }
    bool is_finite() const { return birth.is_finite() && death.is_finite(); }

    friend bool operator==(const Bar&, const Bar&) = default;
    friend auto operator<=>(const Bar& a, const Bar& b) {
        if (auto c = a.degree <=> b.degree; c != 0) return c;
        if (auto c = a.birth <=> b.birth; c != 0) return c;
        return a.death <=> b.death;
    }

    std::string to_string() const {
        return "deg" + std::to_string(degree) + ":[" + birth.to_string() + "," + death.to_string() + ")";
    }
};

/// Finite multiset of bars. Bars keep the order they were inserted in (the
/// certificate formats index them), but equality ignores order.
class GradedBarcode {
public:
    GradedBarcode() = default;
    GradedBarcode(std::initializer_list<Bar> bars) : bars_(bars) {}
    explicit GradedBarcode(std::vector<Bar> bars) : bars_(std::move(bars)) {}

    const std::vector<Bar>& bars() const { return bars_; }
    std::size_t size() const { return bars_.size(); }
    bool empty() const { return bars_.empty(); }
    const Bar& operator[](std::size_t i) const { return bars_[i]; }
    void add(Bar b) { bars_.push_back(std::move(b)); }

    auto begin() const { return bars_.begin(); }
    auto end() const { return bars_.end(); }

    /// Bars sorted by (degree, birth, death); the canonical representative.
    std::vector<Bar> sorted() const {
        std::vector<Bar> s = bars_;
        std::sort(s.begin(), s.end());
        return s;
    }

    friend bool operator==(const GradedBarcode& a, const GradedBarcode& b) { return a.sorted() == b.sorted(); }

    std::string to_string() const {
        std::string s = "{";
        auto sorted_bars = sorted();
        for (std::size_t i = 0; i < sorted_bars.size(); ++i) {
            if (i) s += ", ";
            s += sorted_bars[i].to_string();
        }
        return s + "}";
    }
    friend std::ostream& operator<<(std::ostream& os, const GradedBarcode& b) { return os << b.to_string(); }

private:
    std::vector<Bar> bars_;
};

/// Moves every endpoint by an arbitrary finite amount.
inline GradedBarcode translate(const GradedBarcode& barcode, const Rat& offset) {
    if (!offset.is_finite()) throw parameter_error("translation by an infinite amount");
    GradedBarcode out;
    for (const Bar& b : barcode) out.add(Bar(b.birth + offset, b.death + offset, b.degree));
    return out;
}

/// Translation of every bar by c >= 0: [b,d) becomes [b+c, d+c).
inline GradedBarcode shift_barcode(const GradedBarcode& barcode, const Rat& c) {
    if (!c.is_finite() || c.sign() < 0) throw parameter_error("shift must be finite and non-negative, got " + c.to_string());
    return translate(barcode, c);
}

/// Multiplies every endpoint by s > 0.
inline GradedBarcode scale(const GradedBarcode& barcode, const Rat& s) {
    if (!s.is_finite() || s.sign() <= 0) throw parameter_error("scale factor must be positive");
    GradedBarcode out;
    for (const Bar& b : barcode) out.add(Bar(b.birth * s, b.death * s, b.degree));
    return out;
}

/// Length of the longest bar: the smallest c for which the barcode is c-torsion.
/// Zero for the empty barcode, +inf as soon as one bar is infinite.
inline Rat torsion_threshold(const GradedBarcode& barcode) {
    Rat best(0);
    for (const Bar& b : barcode) best = max(best, b.length());
    return best;
}

/// All finite endpoints, sorted and deduplicated.
inline std::vector<Rat> finite_endpoints(const GradedBarcode& barcode) {
    std::vector<Rat> pts;
    for (const Bar& b : barcode) {
        if (b.birth.is_finite()) pts.push_back(b.birth);
        if (b.death.is_finite()) pts.push_back(b.death);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

inline GradedBarcode concat(const GradedBarcode& a, const GradedBarcode& b) {
    GradedBarcode out = a;
    for (const Bar& x : b) out.add(x);
    return out;
}

}  // namespace tamarkin
