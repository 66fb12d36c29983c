#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tamarkin/interleave/decide.hpp"

namespace tamarkin::interleave {

/// inf{a + b : F, G are (a,b)-interleaved}.
///
/// When some leaf decision is "unknown", `value` is not determined and the
/// result is the bracket [lower, upper] (unknowns counted as feasible for the
/// lower end and as infeasible for the upper end).
template <Field K>
struct DistanceResult {
    Rat value;
    bool exact = true;
    Rat lower, upper;
    bool attained = false;
    /// Certificate at (witness_a, witness_b): the optimum when attained, else the
    /// optimum moved by `epsilon` in both shifts.
    std::optional<InterleavingCertificate<K>> witness;
    Rat witness_a, witness_b, epsilon;
    std::size_t decisions = 0;
};

namespace detail {

inline bool checked_minus(const Rat& x, const Rat& y, Rat& out) {
    if (!x.is_finite() || !y.is_finite()) return false;
    out = x - y;
    return true;
}

/// Values of a shift at which some Hom_c(F_i, G_j) predicate changes.
inline std::set<Rat> hom_critical(const GradedBarcode& f, const GradedBarcode& g) {
    std::set<Rat> out{Rat(0)};
    for (const Bar& x : f)
        for (const Bar& y : g) {
            if (x.degree != y.degree) continue;
            for (auto [p, q] : {std::pair{&y.birth, &x.birth}, std::pair{&y.death, &x.death}, std::pair{&y.death, &x.birth}}) {
                Rat v;
                if (checked_minus(*p, *q, v) && v.sign() >= 0) out.insert(v);
            }
        }
    return out;
}

inline Rat min_gap(const std::set<Rat>& s) {
    Rat gap = Rat::infinity();
    const Rat* prev = nullptr;
    for (const Rat& x : s) {
        if (prev) gap = min(gap, x - *prev);
        prev = &x;
    }
    return gap;
}

}  // namespace detail

/// Feasible (a, b) form an up-set, constant on the cells cut out by the lines
/// a = x (x where a Hom_a(F_i, G_j) predicate changes), b = y (likewise for
/// G -> F) and a + b = s (s where a composite or tau predicate changes). The
/// infimum of a + b is therefore attained, or approached, at a vertex v of this
/// arrangement; it is approached iff v + (eps, eps) is feasible, for eps below a
/// quarter of the smallest gap between critical values. Each scan fixes one
/// coordinate at a critical value (or that value + eps) and binary-searches the
/// other over the candidate vertices, using monotonicity.
template <Field K>
DistanceResult<K> translation_distance(const GradedBarcode& f, const GradedBarcode& g, const SearchBounds& bounds = {}) {
    std::set<Rat> va = detail::hom_critical(f, g), vb = detail::hom_critical(g, f);
    std::set<Rat> sums = detail::hom_critical(f, f);
    for (const Rat& s : detail::hom_critical(g, g)) sums.insert(s);
    std::set<Rat> totals = sums;
    for (const Rat& x : va)
        for (const Rat& y : vb) totals.insert(x + y);
    Rat gap = min(min(detail::min_gap(va), detail::min_gap(vb)), detail::min_gap(totals));
    const Rat eps = gap.is_finite() ? gap / Rat(4) : Rat(1);

    std::map<std::pair<Rat, Rat>, Decision> memo;
    std::map<std::pair<Rat, Rat>, InterleavingCertificate<K>> certs;
    DistanceResult<K> out;
    out.epsilon = eps;
    auto decide = [&](const Rat& a, const Rat& b) {
        auto key = std::make_pair(a, b);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        auto d = is_interleaved<K>(f, g, a, b, bounds);
        ++out.decisions;
        if (d.certificate) certs.emplace(key, *d.certificate);
        memo.emplace(key, d.decision);
        return d.decision;
    };

    struct Best {
        Rat total = Rat::infinity();
        Rat a, b;
        bool attained = false;
    };
    bool saw_unknown = false;

    // optimistic = unknowns count as feasible
    auto run = [&](bool optimistic) {
        Best best;
        auto feasible = [&](const Rat& a, const Rat& b) {
            Decision d = decide(a, b);
            if (d == Decision::unknown) saw_unknown = true;
            return d == Decision::yes || (optimistic && d == Decision::unknown);
        };
        auto offer = [&](const Rat& a, const Rat& b, bool perturbed) {
            Rat vertex_total = a + b - (perturbed ? eps + eps : Rat(0));
            bool attained = !perturbed;
            if (vertex_total < best.total || (vertex_total == best.total && attained && !best.attained)) {
                best.total = vertex_total;
                best.a = a;
                best.b = b;
                best.attained = attained;
            }
        };
        // scan over one coordinate; `swap` exchanges the roles of a and b
        auto scan = [&](const std::set<Rat>& fixed_vals, const std::set<Rat>& other_vals, bool swap, bool perturbed) {
            for (const Rat& x0 : fixed_vals) {
                std::set<Rat> cands;
                for (const Rat& y : other_vals) cands.insert(y);
                for (const Rat& s : sums) {
                    Rat y;
                    if (detail::checked_minus(s, x0, y) && y.sign() >= 0) cands.insert(y);
                }
                std::vector<Rat> list;
                for (const Rat& y : cands) list.push_back(perturbed ? y + eps : y);
                const Rat x = perturbed ? x0 + eps : x0;
                auto ok = [&](const Rat& y) { return swap ? feasible(y, x) : feasible(x, y); };
                // smallest index with ok(list[idx]) by monotonicity in the second coordinate
                std::size_t lo = 0, hi = list.size();
                if (hi == 0 || !ok(list.back())) continue;
                hi = list.size() - 1;
                while (lo < hi) {
                    std::size_t mid = (lo + hi) / 2;
                    if (ok(list[mid])) hi = mid;
                    else lo = mid + 1;
                }
                if (swap) offer(list[lo], x, perturbed);
                else offer(x, list[lo], perturbed);
            }
        };
        for (bool perturbed : {false, true}) {
            scan(va, vb, false, perturbed);
            scan(vb, va, true, perturbed);
        }
        return best;
    };

    Best best = run(false);
    if (!best.total.is_finite()) {
        // Nothing on the arrangement is feasible; far beyond every critical value
        // the decision is constant, so a feasible point there would be a bug.
        Rat far = (va.empty() ? Rat(0) : *va.rbegin()) + (vb.empty() ? Rat(0) : *vb.rbegin()) +
                  (sums.empty() ? Rat(0) : *sums.rbegin()) + Rat(1);
        if (decide(far, far) == Decision::yes)
            throw verification_error("distance search missed a feasible region beyond the candidate grid");
    }
    out.upper = best.total;
    out.value = best.total;
    out.attained = best.attained && best.total.is_finite();
    if (best.total.is_finite()) {
        out.witness_a = best.a;
        out.witness_b = best.b;
        out.witness = certs.at({best.a, best.b});
    }
    out.lower = best.total;
    if (saw_unknown) {
        Best optimistic = run(true);
        out.lower = optimistic.total;
        out.exact = out.lower == out.upper;
    }
    return out;
}

}  // namespace tamarkin::interleave
