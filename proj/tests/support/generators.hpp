#pragma once

// Seeded random generators shared by the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "tamarkin/core/barcode.hpp"
#include "tamarkin/core/rat.hpp"

namespace tamarkin::testgen {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Rational k/den with k uniform in [lo*den, hi*den].
inline Rat random_rat(Rng& rng, long lo, long hi, long den) { return Rat(uniform_int(rng, lo * den, hi * den), den); }

struct BarcodeShape {
    int max_bars = 6;
    long lo = 0;         // endpoints drawn from [lo, hi] / den
    long hi = 6;
    long den = 2;
    int max_degree = 0;  // degrees in [0, max_degree]
    int infinite_percent = 0;
};

inline GradedBarcode random_barcode(Rng& rng, const BarcodeShape& shape) {
    GradedBarcode b;
    int n = static_cast<int>(uniform_int(rng, 0, shape.max_bars));
    for (int i = 0; i < n; ++i) {
        long x = uniform_int(rng, shape.lo * shape.den, shape.hi * shape.den);
        long y = uniform_int(rng, shape.lo * shape.den, shape.hi * shape.den);
        if (x == y) y = x + 1;
        if (x > y) std::swap(x, y);
        int deg = static_cast<int>(uniform_int(rng, 0, shape.max_degree));
        bool inf = uniform_int(rng, 1, 100) <= shape.infinite_percent;
        b.add(Bar(Rat(x, shape.den), inf ? Rat::infinity() : Rat(y, shape.den), deg));
    }
    return b;
}

}  // namespace tamarkin::testgen
