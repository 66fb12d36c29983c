#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamarkin/core/barcode.hpp"
#include "tamarkin/core/matrix.hpp"
#include "tamarkin/core/novikov.hpp"
#include "tamarkin/energy/hom_persistence.hpp"

namespace tamarkin::energy {

/// Finitely presented module over the Novikov valuation ring: Lambda^n modulo the
/// row span of the relation matrix (one row per relation, one column per generator).
template <Field K>
struct NovikovPresentation {
    std::size_t generators = 0;
    std::vector<std::vector<NovikovScalar<K>>> relations;
    std::vector<Rat> generator_shifts;  // earliest c at which each generator lives
    Rat precision = default_novikov_precision();

    void validate() const {
        for (const auto& row : relations)
            if (row.size() != generators) throw structure_error("relation row length differs from the generator count");
        if (!generator_shifts.empty() && generator_shifts.size() != generators)
            throw structure_error("generator shift count differs from the generator count");
    }
};

template <Field K>
NovikovPresentation<K> diagonal_presentation(const std::vector<Rat>& exponents, const Rat& precision = default_novikov_precision()) {
    NovikovPresentation<K> p;
    p.generators = exponents.size();
    p.precision = precision;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        std::vector<NovikovScalar<K>> row(exponents.size(), NovikovScalar<K>::zero(precision));
        row[i] = NovikovScalar<K>::monomial(K::one(), exponents[i], precision);
        p.relations.push_back(std::move(row));
    }
    return p;
}

/// Degree-0 part of the Hom module H(F, G) = sum_c Hom(F, T_c G) with T^l acting
/// by composition with tau_{c,c+l}. Each bar pair with nonzero Hom at some c >= 0
/// gives a generator at its earliest shift, killed by T^l where l is the length
/// of its Hom bar.
template <Field K>
NovikovPresentation<K> novikov_module(const GradedBarcode& f, const GradedBarcode& g,
                                      const Rat& precision = default_novikov_precision()) {
    for (const GradedBarcode* b : {&f, &g})
        for (const Bar& x : *b)
            if (!x.birth.is_finite() || !x.death.is_finite())
                throw unsupported_error("Novikov presentation of bars with infinite endpoints (free part) is not computed");
    std::vector<Rat> lengths, shifts;
    for (const Bar& h : hom_persistence_deg0(f, g)) {
        lengths.push_back(h.death - h.birth);
        shifts.push_back(h.birth);
    }
    auto p = diagonal_presentation<K>(lengths, precision);
    p.generator_shifts = shifts;
    return p;
}

struct TorsionExponent {
    Rat value;                    // +inf when a free summand is present
    bool free = false;            // a free summand was detected
    std::vector<Rat> exponents;   // elementary exponents found by elimination
};

/// Largest elementary exponent of the presented module, i.e. the least c with
/// T^c annihilating it, by valuation-pivot elimination: repeatedly pivot on an
/// entry of least valuation, clear its column, and drop its row and column.
template <Field K>
TorsionExponent torsion_exponent(const NovikovPresentation<K>& p) {
    p.validate();
    using S = NovikovScalar<K>;
    std::vector<std::vector<S>> m = p.relations;
    std::vector<std::size_t> rows(m.size()), cols(p.generators);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
    TorsionExponent out;
    out.value = Rat(0);
    while (!rows.empty() && !cols.empty()) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Rat best_v = Rat::infinity();
        Rat unknown_from = Rat::infinity();  // entries that vanish only below this precision
        for (std::size_t ri = 0; ri < rows.size(); ++ri)
            for (std::size_t cj = 0; cj < cols.size(); ++cj) {
                const S& x = m[rows[ri]][cols[cj]];
                if (x.is_zero()) {
                    if (!x.exact()) unknown_from = min(unknown_from, x.precision());
                    continue;
                }
                if (x.valuation() < best_v) {
                    best_v = x.valuation();
                    best = {{ri, cj}};
                }
            }
        if (!best) {
            if (unknown_from.is_finite()) throw precision_error("elimination cannot decide whether a summand is free below precision " + unknown_from.to_string());
            break;
        }
        if (!(best_v < unknown_from))
            throw precision_error("pivot valuation " + best_v.to_string() + " is not below the known precision " + unknown_from.to_string());
        const std::size_t r = rows[best->first], c = cols[best->second];
        const S pivot = m[r][c];
        for (std::size_t i : rows) {
            if (i == r || m[i][c].is_zero()) continue;
            S q = S::divide(m[i][c], pivot);
            for (std::size_t j : cols) m[i][j] -= q * m[r][j];
            m[i][c] = S::zero(m[i][c].precision());
        }
        out.exponents.push_back(best_v);
        out.value = max(out.value, best_v);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best->first));
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(best->second));
    }
    if (!cols.empty()) {
        out.free = true;
        out.value = Rat::infinity();
    }
    return out;
}

/// Independent check of the annihilator on a truncated exponent lattice. All
/// exponents must be multiples of 1/den; with s = T^{1/den} the module is
/// reduced modulo s^N (N = precision * den) and the least k with s^k e_j in the
/// K-span of {s^l r_i} for every generator j is returned as k/den. A result equal
/// to the precision means "at least the precision".
template <Field K>
Rat annihilator_oracle(const NovikovPresentation<K>& p, long den) {
    p.validate();
    Rat n_rat = p.precision * Rat(den);
    if (n_rat.denominator() != 1) throw parameter_error("precision times den must be an integer");
    const std::size_t n = static_cast<std::size_t>(n_rat.numerator().get_si());
    const std::size_t dim = p.generators * n;
    auto index = [&](std::size_t gen, std::size_t power) { return gen * n + power; };
    std::vector<std::vector<K>> span;
    for (const auto& row : p.relations)
        for (std::size_t l = 0; l < n; ++l) {
            std::vector<K> v(dim, K::zero());
            for (std::size_t j = 0; j < p.generators; ++j) {
                if (!row[j].exact()) throw parameter_error("oracle needs exact relation entries");
                for (const auto& t : row[j].terms()) {
                    Rat e = t.exponent * Rat(den);
                    if (e.denominator() != 1) throw parameter_error("exponent " + t.exponent.to_string() + " is not on the lattice");
                    std::size_t k = static_cast<std::size_t>(e.numerator().get_si()) + l;
                    if (k < n) v[index(j, k)] += t.coef;
                }
            }
            span.push_back(std::move(v));
        }
    const std::size_t base = rank_of(span, dim);
    for (std::size_t k = 0; k < n; ++k) {
        bool all = true;
        for (std::size_t j = 0; j < p.generators && all; ++j) {
            auto with = span;
            std::vector<K> v(dim, K::zero());
            v[index(j, k)] = K::one();
            with.push_back(std::move(v));
            all = rank_of(with, dim) == base;
        }
        if (all) return Rat(static_cast<long>(k), den);
    }
    return p.precision;
}

}  // namespace tamarkin::energy
