#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tamarkin/core/error.hpp"
#include "tamarkin/core/field.hpp"
#include "tamarkin/grid/grid_module.hpp"
#include "tamarkin/grid/morphism.hpp"

namespace tamarkin::grid {

struct OracleBounds {
    std::size_t max_total_dimension = 6;  // bars per module
    std::size_t max_enumeration_bits = 20;  // 2^bits candidates on the enumerated side
};

/// Pair (alpha, beta) with (T_a beta) o alpha = tau_{0,a+b}(F).
template <Field K>
struct Factorization {
    GridMorphism<K> alpha;
    GridMorphism<K> beta;
};

/// Exhaustive search over F_2 for alpha in Hom(F, T_a G), beta in Hom(G, T_b F)
/// with (T_a beta) o alpha = tau_{0,a+b}(F).
///
/// The smaller of the two morphism spaces is enumerated element by element;
/// for each element the condition is linear in the other morphism and is
/// solved exactly, so every pair is covered.
inline std::optional<Factorization<F2>> brute_force_factor(const GridModule<F2>& f, const GridModule<F2>& g,
                                                           const Rat& a, const Rat& b,
                                                           const OracleBounds& bounds = {}) {
    auto hom_a = morphism_space(f, g, a);
    auto hom_b = morphism_space(g, f, b);
    const GridMorphism<F2> target = tau(f, a + b);
    const std::vector<F2> rhs = target.flatten();
    GridMorphism<F2> zero_a(f, g, a), zero_b(g, f, b);

    // composites[k][l] = flatten(hom_b[k] o hom_a[l])
    std::vector<std::vector<std::vector<F2>>> composites(hom_b.size(), std::vector<std::vector<F2>>(hom_a.size()));
    for (std::size_t k = 0; k < hom_b.size(); ++k)
        for (std::size_t l = 0; l < hom_a.size(); ++l) composites[k][l] = compose(hom_b[k], hom_a[l]).flatten();

    const bool enumerate_alpha = hom_a.size() <= hom_b.size();
    const std::size_t bits = enumerate_alpha ? hom_a.size() : hom_b.size();
    const std::size_t solved = enumerate_alpha ? hom_b.size() : hom_a.size();
    if (bits > bounds.max_enumeration_bits)
        throw oracle_scope_error("morphism space of dimension " + std::to_string(bits) + " exceeds the enumeration bound " +
                                 std::to_string(bounds.max_enumeration_bits));

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        // columns: the composite as a linear function of the solved-for side
        Matrix<F2> system(rhs.size(), solved);
        for (std::size_t s = 0; s < solved; ++s)
            for (std::size_t e = 0; e < bits; ++e) {
                if (!((mask >> e) & 1U)) continue;
                const auto& v = enumerate_alpha ? composites[s][e] : composites[e][s];
                for (std::size_t r = 0; r < rhs.size(); ++r) system(r, s) += v[r];
            }
        std::optional<std::vector<F2>> y;
        if (solved == 0) {
            bool zero_rhs = true;
            for (const F2& x : rhs) zero_rhs = zero_rhs && x.is_zero();
            if (zero_rhs) y = std::vector<F2>{};
        } else {
            y = system.solve(rhs);
        }
        if (!y) continue;
        std::vector<F2> x(bits);
        for (std::size_t e = 0; e < bits; ++e) x[e] = ((mask >> e) & 1U) ? F2::one() : F2::zero();
        const auto& xa = enumerate_alpha ? x : *y;
        const auto& xb = enumerate_alpha ? *y : x;
        Factorization<F2> out{combine(zero_a, hom_a, xa), combine(zero_b, hom_b, xb)};
        if (!(compose(out.beta, out.alpha) == target)) throw verification_error("oracle produced a non-factorization");
        return out;
    }
    return std::nullopt;
}

inline void require_oracle_scope(const GridModule<F2>& m, const OracleBounds& bounds) {
    std::size_t n = m.total_dimension();
    if (n > bounds.max_total_dimension)
        throw oracle_scope_error("module of total dimension " + std::to_string(n) + " exceeds the oracle bound " +
                                 std::to_string(bounds.max_total_dimension));
}

/// Ground-truth decision of (a,b)-interleaving over F_2: condition (1) over all
/// pairs (alpha, beta) and, independently, condition (2) over all (gamma, delta).
inline bool brute_force_interleaved(const GridModule<F2>& f, const GridModule<F2>& g, const Rat& a, const Rat& b,
                                    const OracleBounds& bounds = {}) {
    if (!a.is_finite() || !b.is_finite() || a.sign() < 0 || b.sign() < 0)
        throw parameter_error("interleaving shifts must be finite and >= 0");
    require_oracle_scope(f, bounds);
    require_oracle_scope(g, bounds);
    return brute_force_factor(f, g, a, b, bounds).has_value() && brute_force_factor(g, f, b, a, bounds).has_value();
}

}  // namespace tamarkin::grid
