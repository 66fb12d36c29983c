#pragma once

#include <map>
#include <set>
#include <vector>

#include "tamarkin/core/matrix.hpp"
#include "tamarkin/grid/grid_module.hpp"
#include "tamarkin/grid/morphism.hpp"

namespace tamarkin::grid {

/// Two-term complex computing RHom(F_p, T_c G_q) over the points P:
///   C^0 = sum_k Hom(F_p(P_k), G_q(P_k + c)),
///   C^1 = sum_k Hom(F_p(P_k), G_q(P_{k+1} + c)),
///   d(phi)_k = G(P_k + c -> P_{k+1} + c) phi_k - phi_{k+1} F(P_k -> P_{k+1}).
/// H^0 is the space of natural transformations and H^1 the first Ext group.
/// P must contain morphism_points(F, G, c); extra points are harmless.
template <Field K>
struct TwoTermComplex {
    std::vector<std::size_t> offset0, offset1;  // block offsets, entry (i, j) at offset + i * cols + j
    std::vector<std::size_t> rows0, cols0, rows1, cols1;
    Matrix<K> d;  // dim C^1 x dim C^0

    std::size_t dim0() const { return d.cols(); }
    std::size_t dim1() const { return d.rows(); }
    std::size_t h0() const { return dim0() - d.rank(); }
    std::size_t h1() const { return dim1() - d.rank(); }
};

template <Field K>
TwoTermComplex<K> rhom_complex(const GridModule<K>& f, int p, const GridModule<K>& g, int q, const Rat& c,
                               const std::vector<Rat>& pts) {
    TwoTermComplex<K> x;
    const std::size_t n = pts.size();
    x.offset0.assign(n + 1, 0);
    x.offset1.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        x.rows0.push_back(g.dim(q, pts[k] + c));
        x.cols0.push_back(f.dim(p, pts[k]));
        x.offset0[k + 1] = x.offset0[k] + x.rows0[k] * x.cols0[k];
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        x.rows1.push_back(g.dim(q, pts[k + 1] + c));
        x.cols1.push_back(f.dim(p, pts[k]));
        x.offset1[k + 1] = x.offset1[k] + x.rows1[k] * x.cols1[k];
    }
    const std::size_t dim1 = n ? x.offset1[n - 1] : 0;
    x.d = Matrix<K>(dim1, x.offset0[n]);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        Matrix<K> gs = g.structure(q, pts[k] + c, pts[k + 1] + c);
        Matrix<K> fs = f.structure(p, pts[k], pts[k + 1]);
        const std::size_t r0 = x.rows0[k], c0 = x.cols0[k], c1 = x.cols0[k + 1];
        for (std::size_t i = 0; i < x.rows1[k]; ++i)
            for (std::size_t j = 0; j < x.cols1[k]; ++j) {
                std::size_t row = x.offset1[k] + i * x.cols1[k] + j;
                for (std::size_t l = 0; l < r0; ++l) x.d(row, x.offset0[k] + l * c0 + j) += gs(i, l);
                for (std::size_t l = 0; l < c1; ++l) x.d(row, x.offset0[k + 1] + i * c1 + l) -= fs(l, j);
            }
    }
    return x;
}

/// Cochain map RHom(F_p, T_c G_q) -> RHom(F_p, T_c' G_q) given by post-composition
/// with the structure maps of G (the map induced by tau_{c,c'}), c <= c'.
template <Field K>
std::pair<Matrix<K>, Matrix<K>> rhom_tau_map(const GridModule<K>& g, int q, const Rat& c, const Rat& c2,
                                             const std::vector<Rat>& pts, const TwoTermComplex<K>& from,
                                             const TwoTermComplex<K>& to) {
    Matrix<K> f0(to.dim0(), from.dim0()), f1(to.dim1(), from.dim1());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        Matrix<K> s = g.structure(q, pts[k] + c, pts[k] + c2);
        for (std::size_t i = 0; i < to.rows0[k]; ++i)
            for (std::size_t j = 0; j < to.cols0[k]; ++j)
                for (std::size_t l = 0; l < from.rows0[k]; ++l)
                    f0(to.offset0[k] + i * to.cols0[k] + j, from.offset0[k] + l * from.cols0[k] + j) += s(i, l);
        if (k + 1 == pts.size()) break;
        Matrix<K> s1 = g.structure(q, pts[k + 1] + c, pts[k + 1] + c2);
        for (std::size_t i = 0; i < to.rows1[k]; ++i)
            for (std::size_t j = 0; j < to.cols1[k]; ++j)
                for (std::size_t l = 0; l < from.rows1[k]; ++l)
                    f1(to.offset1[k] + i * to.cols1[k] + j, from.offset1[k] + l * from.cols1[k] + j) += s1(i, l);
    }
    return {f0, f1};
}

/// Ranks of the maps induced on H^0 and H^1 by a cochain map (f0, f1).
template <Field K>
std::pair<std::size_t, std::size_t> induced_ranks(const TwoTermComplex<K>& from, const TwoTermComplex<K>& to,
                                                  const Matrix<K>& f0, const Matrix<K>& f1) {
    // H^0: image of ker(d) under f0 (lands in ker(d'), which injects into H^0).
    auto ker = from.d.nullspace();
    Matrix<K> kb(from.dim0(), ker.size());
    for (std::size_t c = 0; c < ker.size(); ++c)
        for (std::size_t r = 0; r < from.dim0(); ++r) kb(r, c) = ker[c][r];
    std::size_t r0 = ker.empty() ? 0 : (f0 * kb).rank();
    // H^1: dim(im f1 + im d') - dim(im d').
    Matrix<K> both(to.dim1(), from.dim1() + to.dim0());
    for (std::size_t r = 0; r < to.dim1(); ++r) {
        for (std::size_t c = 0; c < from.dim1(); ++c) both(r, c) = f1(r, c);
        for (std::size_t c = 0; c < to.dim0(); ++c) both(r, from.dim1() + c) = to.d(r, c);
    }
    std::size_t r1 = both.rank() - to.d.rank();
    return {r0, r1};
}

/// Union of the sample points needed for shifts c and c'.
template <Field K>
std::vector<Rat> common_points(const GridModule<K>& f, const GridModule<K>& g, const std::vector<Rat>& shifts) {
    std::set<Rat> pts;
    for (const Rat& c : shifts)
        for (const Rat& t : morphism_points(f, g, c)) pts.insert(t);
    return {pts.begin(), pts.end()};
}

}  // namespace tamarkin::grid
