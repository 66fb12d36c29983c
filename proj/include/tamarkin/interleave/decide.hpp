#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tamarkin/interleave/certificate.hpp"
#include "tamarkin/interleave/hom.hpp"

namespace tamarkin::interleave {

enum class Decision { yes, no, unknown };

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::yes: return "yes";
        case Decision::no: return "no";
        case Decision::unknown: return "unknown";
    }
    return "?";
}

/// How a factorization decision was reached.
enum class Stage { trivial, matching, obstruction, exhaustive, out_of_scope };

struct SearchBounds {
    std::uint64_t max_candidates = std::uint64_t{1} << 16;  // exhaustive stage, per decision
};

template <Field K>
struct Factorization {
    Decision decision = Decision::unknown;
    Stage stage = Stage::out_of_scope;
    std::optional<BarMorphism<K>> alpha;  // F -> T_a G
    std::optional<BarMorphism<K>> beta;   // G -> T_b F
};

namespace detail {

template <Field K>
constexpr std::uint64_t field_cardinality() {
    if constexpr (requires { K::modulus; }) return K::modulus;
    else return 0;
}

/// Kuhn's augmenting-path matching of `left` into right vertices along `adj`.
inline std::vector<long> max_matching(const std::vector<std::vector<std::size_t>>& adj, std::size_t right) {
    std::vector<long> match_right(right, -1);
    std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t u, std::vector<char>& seen) {
        for (std::size_t v : adj[u]) {
            if (seen[v]) continue;
            seen[v] = 1;
            if (match_right[v] < 0 || augment(static_cast<std::size_t>(match_right[v]), seen)) {
                match_right[v] = static_cast<long>(u);
                return true;
            }
        }
        return false;
    };
    for (std::size_t u = 0; u < adj.size(); ++u) {
        std::vector<char> seen(right, 0);
        augment(u, seen);
    }
    return match_right;
}

}  // namespace detail

/// Decides whether tau_{0,a+b}(F) factors as T_a beta o alpha through T_a G.
///
/// Only bars of F longer than a+b matter (tau vanishes on the others, and the
/// corresponding columns of alpha and rows of beta can be zero). Stages:
///   1. no long bars: zero morphisms;
///   2. a matching of long bars into G along pairs with both Hom spaces nonzero
///      gives a factorization (cross terms vanish because the matching is injective);
///   3. a long bar with no such partner makes the diagonal entry vanish: no;
///   4. otherwise every coefficient choice on the smaller side is enumerated over
///      a finite field and the other side is solved exactly;
///   5. beyond the enumeration bound, or over Q: unknown.
template <Field K>
Factorization<K> factors_through(const GradedBarcode& f, const GradedBarcode& g, const Rat& a, const Rat& b,
                                 const SearchBounds& bounds = {}) {
    require_shift(a, "shift a");
    require_shift(b, "shift b");
    const Rat total = a + b;
    Factorization<K> out;
    BarMorphism<K> alpha(f, g, a), beta(g, f, b);
    auto finish = [&](Stage stage) {
        if (!(compose(beta, alpha) == tau<K>(f, total))) throw verification_error("factorization search produced an invalid pair");
        out.decision = Decision::yes;
        out.stage = stage;
        out.alpha = alpha;
        out.beta = beta;
        return out;
    };

    std::vector<std::size_t> longs;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (total < f[i].length()) longs.push_back(i);
    if (longs.empty()) return finish(Stage::trivial);

    std::vector<std::vector<std::size_t>> adj(longs.size());
    for (std::size_t u = 0; u < longs.size(); ++u)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (hom_nonzero(f[longs[u]], g[j], a) && hom_nonzero(g[j], f[longs[u]], b)) adj[u].push_back(j);

    auto match_right = detail::max_matching(adj, g.size());
    std::size_t matched = 0;
    for (long m : match_right) matched += m >= 0;
    if (matched == longs.size()) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (match_right[j] < 0) continue;
            std::size_t i = longs[static_cast<std::size_t>(match_right[j])];
            alpha.set(j, i, K::one());
            beta.set(i, j, K::one());
        }
        return finish(Stage::matching);
    }
    for (const auto& e : adj)
        if (e.empty()) {
            out.decision = Decision::no;
            out.stage = Stage::obstruction;
            return out;
        }

    // Unknowns: alpha(j, i) for long i, beta(k, j) for long k, on supported pairs.
    std::vector<std::pair<std::size_t, std::size_t>> ua, ub;
    for (std::size_t i : longs)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (alpha.supported(j, i)) ua.emplace_back(j, i);
    for (std::size_t k : longs)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (beta.supported(k, j)) ub.emplace_back(k, j);
    // Equations: sum_j beta(k, j) alpha(j, i) = [k == i] on long pairs with a nonzero composite Hom.
    std::vector<std::pair<std::size_t, std::size_t>> eqs;
    for (std::size_t k : longs)
        for (std::size_t i : longs)
            if (hom_nonzero(f[i], f[k], total)) eqs.emplace_back(k, i);

    const std::uint64_t q = detail::field_cardinality<K>();
    const bool enum_alpha = ua.size() <= ub.size();
    const auto& fixed = enum_alpha ? ua : ub;
    const auto& solved = enum_alpha ? ub : ua;
    std::uint64_t candidates = 1;
    bool too_many = q == 0;
    for (std::size_t t = 0; t < fixed.size() && !too_many; ++t) {
        if (candidates > bounds.max_candidates / q) too_many = true;
        candidates *= q;
    }
    if (too_many || candidates > bounds.max_candidates) {
        out.decision = Decision::unknown;
        out.stage = Stage::out_of_scope;
        return out;
    }

    std::vector<std::uint64_t> digits(fixed.size(), 0);
    for (std::uint64_t n = 0; n < candidates; ++n) {
        // fixed-side values
        std::map<std::pair<std::size_t, std::size_t>, K> val;
        for (std::size_t t = 0; t < fixed.size(); ++t) val[fixed[t]] = K::from_int(static_cast<long>(digits[t]));
        Matrix<K> system(eqs.size(), solved.size());
        std::vector<K> rhs(eqs.size(), K::zero());
        for (std::size_t e = 0; e < eqs.size(); ++e) {
            auto [k, i] = eqs[e];
            rhs[e] = k == i ? K::one() : K::zero();
            for (std::size_t s = 0; s < solved.size(); ++s) {
                // free unknown s contributes beta(k, j) alpha(j, i) with the other factor fixed
                if (enum_alpha) {
                    auto [kk, j] = solved[s];
                    auto it = val.find({j, i});
                    if (kk == k && it != val.end()) system(e, s) += it->second;
                } else {
                    auto [j, ii] = solved[s];
                    auto it = val.find({k, j});
                    if (ii == i && it != val.end()) system(e, s) += it->second;
                }
            }
        }
        std::optional<std::vector<K>> y;
        if (solved.empty()) {
            bool zero = true;
            for (const K& r : rhs) zero = zero && r.is_zero();
            if (zero) y = std::vector<K>{};
        } else {
            y = system.solve(rhs);
        }
        if (y) {
            for (const auto& [pos, v] : val) {
                if (enum_alpha) alpha.set(pos.first, pos.second, v);
                else beta.set(pos.first, pos.second, v);
            }
            for (std::size_t s = 0; s < solved.size(); ++s) {
                if (enum_alpha) beta.set(solved[s].first, solved[s].second, (*y)[s]);
                else alpha.set(solved[s].first, solved[s].second, (*y)[s]);
            }
            return finish(Stage::exhaustive);
        }
        for (std::size_t t = 0; t < digits.size(); ++t) {
            if (++digits[t] < q) break;
            digits[t] = 0;
        }
    }
    out.decision = Decision::no;
    out.stage = Stage::exhaustive;
    return out;
}

template <Field K>
struct InterleavingDecision {
    Decision decision = Decision::unknown;
    std::optional<InterleavingCertificate<K>> certificate;
};

/// (a,b)-interleaving decided as two independent factorization problems:
/// condition (1) involves only (alpha, beta) and condition (2) only (gamma, delta).
template <Field K>
InterleavingDecision<K> is_interleaved(const GradedBarcode& f, const GradedBarcode& g, const Rat& a, const Rat& b,
                                       const SearchBounds& bounds = {}) {
    auto first = factors_through<K>(f, g, a, b, bounds);
    InterleavingDecision<K> out;
    if (first.decision == Decision::no) {
        out.decision = Decision::no;
        return out;
    }
    auto second = factors_through<K>(g, f, b, a, bounds);
    if (second.decision == Decision::no) {
        out.decision = Decision::no;
        return out;
    }
    if (first.decision == Decision::unknown || second.decision == Decision::unknown) {
        out.decision = Decision::unknown;
        return out;
    }
    out.decision = Decision::yes;
    out.certificate = InterleavingCertificate<K>{f, g, a, b, *first.alpha, *first.beta, *second.alpha, *second.beta};
    out.certificate->require_verified("is_interleaved");
    return out;
}

}  // namespace tamarkin::interleave
