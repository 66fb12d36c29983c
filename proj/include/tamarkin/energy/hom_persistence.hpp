#pragma once

#include <map>
#include <set>
#include <vector>

#include "tamarkin/core/barcode.hpp"
#include "tamarkin/grid/grid_module.hpp"
#include "tamarkin/grid/rhom.hpp"

namespace tamarkin::energy {

namespace detail {

/// x - y with the conventions needed for "x <= y + c iff c >= x - y":
/// always true gives -inf, never true gives +inf.
inline Rat threshold_ge(const Rat& x, const Rat& y) {
    if (x.is_neg_inf() || y.is_pos_inf()) return Rat::neg_infinity();
    if (x.is_pos_inf() || y.is_neg_inf()) return x.is_pos_inf() && y.is_pos_inf() ? Rat::neg_infinity() : Rat::infinity();
    return x - y;
}

/// x - y for "c < x - y"; +inf when always true.
inline Rat threshold_lt(const Rat& x, const Rat& y) {
    if (x.is_pos_inf() || y.is_neg_inf()) return Rat::infinity();
    return x - y;
}

inline void add_clipped(GradedBarcode& out, Rat lo, const Rat& hi, int degree) {
    lo = max(lo, Rat(0));
    if (lo < hi) out.add(Bar(lo, hi, degree));
}

}  // namespace detail

/// Hom persistence c -> RHom(F, T_c G) for c >= 0, as a barcode in c.
///
/// A bar F_i in degree p and a bar G_j in degree q contribute
///   Hom: c in [max(b_j - b_i, d_j - d_i), d_j - b_i) in degree q - p,
///   Ext: c in [b_j - d_i, min(b_j - b_i, d_j - d_i)) in degree q - p + 1
///        (only when d_i and b_j are finite),
/// both of length min(len F_i, len G_j) before clipping to c >= 0.
inline GradedBarcode hom_persistence(const GradedBarcode& f, const GradedBarcode& g) {
    GradedBarcode out;
    for (const Bar& x : f)
        for (const Bar& y : g) {
            const int n = y.degree - x.degree;
            Rat lo = max(detail::threshold_ge(y.birth, x.birth), detail::threshold_ge(y.death, x.death));
            Rat hi = detail::threshold_lt(y.death, x.birth);
            detail::add_clipped(out, lo, hi, n);
            if (x.death.is_finite() && y.birth.is_finite()) {
                Rat elo = y.birth - x.death;
                Rat ehi = min(detail::threshold_lt(y.birth, x.birth), detail::threshold_lt(y.death, x.death));
                detail::add_clipped(out, elo, ehi, n + 1);
            }
        }
    return out;
}

/// Only the degree-0 part (the Hom groups Hom(F, T_c G) themselves).
inline GradedBarcode hom_persistence_deg0(const GradedBarcode& f, const GradedBarcode& g) {
    GradedBarcode out;
    for (const Bar& b : hom_persistence(f, g))
        if (b.degree == 0) out.add(b);
    return out;
}

/// Values of c >= 0 where RHom(F, T_c G) can change.
inline std::vector<Rat> hom_critical_values(const GradedBarcode& f, const GradedBarcode& g) {
    std::set<Rat> cs{Rat(0)};
    for (const Bar& x : f)
        for (const Bar& y : g)
            for (const Rat& u : {y.birth, y.death})
                for (const Rat& v : {x.birth, x.death})
                    if (u.is_finite() && v.is_finite() && u - v > Rat(0)) cs.insert(u - v);
    return {cs.begin(), cs.end()};
}

/// The same barcode computed from grid presentations: at every critical c the
/// two-term complex gives dim H^0 and H^1 for each pair of degrees, and the maps
/// induced by tau_{c,c'} give the ranks; intervals follow by inclusion-exclusion.
template <Field K>
GradedBarcode hom_persistence_grid(const GradedBarcode& f, const GradedBarcode& g) {
    auto fm = grid::to_grid<K>(f);
    auto gm = grid::to_grid<K>(g);
    const std::vector<Rat> cs = hom_critical_values(f, g);
    const auto pts = grid::common_points(fm, gm, cs);
    const std::size_t n = cs.size();
    GradedBarcode out;
    for (int p : fm.degree_list())
        for (int q : gm.degree_list()) {
            std::vector<grid::TwoTermComplex<K>> cx;
            for (const Rat& c : cs) cx.push_back(grid::rhom_complex(fm, p, gm, q, c, pts));
            // rank[h][i][j] for the map at c_i -> c_j, h = 0, 1
            std::vector<std::vector<std::vector<long>>> rank(2, std::vector<std::vector<long>>(n, std::vector<long>(n, 0)));
            for (std::size_t i = 0; i < n; ++i) {
                rank[0][i][i] = static_cast<long>(cx[i].h0());
                rank[1][i][i] = static_cast<long>(cx[i].h1());
                for (std::size_t j = i + 1; j < n; ++j) {
                    auto [f0, f1] = grid::rhom_tau_map(gm, q, cs[i], cs[j], pts, cx[i], cx[j]);
                    auto [r0, r1] = grid::induced_ranks(cx[i], cx[j], f0, f1);
                    rank[0][i][j] = static_cast<long>(r0);
                    rank[1][i][j] = static_cast<long>(r1);
                }
            }
            for (int h = 0; h < 2; ++h) {
                auto r = [&](long i, long j) -> long {
                    if (i < 0 || j >= static_cast<long>(n) || i > j) return 0;
                    return rank[h][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                };
                for (long i = 0; i < static_cast<long>(n); ++i)
                    for (long j = i + 1; j <= static_cast<long>(n); ++j) {
                        long mult = r(i, j - 1) - r(i - 1, j - 1) - r(i, j) + r(i - 1, j);
                        if (mult < 0) throw structure_error("negative multiplicity in Hom persistence");
                        Rat death = j == static_cast<long>(n) ? Rat::infinity() : cs[static_cast<std::size_t>(j)];
                        for (long m = 0; m < mult; ++m) out.add(Bar(cs[static_cast<std::size_t>(i)], death, q - p + h));
                    }
            }
        }
    return out;
}

/// e_D(F, G): the longest bar of the Hom persistence (all degrees, or degree 0 only).
inline Rat e_d(const GradedBarcode& f, const GradedBarcode& g, bool deg0_only = false) {
    return torsion_threshold(deg0_only ? hom_persistence_deg0(f, g) : hom_persistence(f, g));
}

}  // namespace tamarkin::energy
