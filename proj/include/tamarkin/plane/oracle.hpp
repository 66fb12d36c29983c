#pragma once

#include <algorithm>
#include <vector>

#include "tamarkin/plane/sheaf.hpp"

namespace tamarkin::plane {

/// Ext(F, G) from a minimal projective resolution of F by representable functors
/// P_s = k[s <= -], using Hom(P_s, G) = G(s). Intended for small complexes.
template <Field K>
std::vector<std::size_t> ext_dims_by_resolution(const CellularSheaf<K>& f, const CellularSheaf<K>& g) {
    const CellComplex& x = f.complex();
    const std::size_t n = x.size();
    auto below = [&](std::size_t s, std::size_t t) {
        if (s == t) return true;
        const auto& fs = x.faces(t);
        return std::find(fs.begin(), fs.end(), static_cast<int>(s)) != fs.end();
    };

    struct Gen {
        std::size_t cell;
        std::vector<K> v;
    };
    // current module to cover
    std::vector<std::size_t> dim(f.stalks());
    std::map<std::pair<int, int>, Matrix<K>> maps;
    for (std::size_t t = 0; t < n; ++t)
        for (int s : x.faces(t)) maps.emplace(std::make_pair(s, static_cast<int>(t)), f.map(s, static_cast<int>(t)));
    std::vector<Matrix<K>> embed;         // module(t) -> previous Q(t) coordinates
    std::vector<std::size_t> prev_gen_cell;
    std::vector<std::vector<std::size_t>> prev_q;  // previous Q(t) basis: generator indices
    std::vector<Matrix<K>> cochain;       // delta^k : Hom(Q_k, G) -> Hom(Q_{k+1}, G)
    std::vector<std::size_t> hom_dim;

    for (std::size_t level = 0;; ++level) {
        if (level > n + 2) throw verification_error("projective resolution does not terminate");
        bool zero = std::all_of(dim.begin(), dim.end(), [](std::size_t d) { return d == 0; });
        if (zero) break;
        auto map_of = [&](int s, int t) { return maps.at({s, t}); };
        // generators: a complement of the image of all proper faces
        std::vector<Gen> gens;
        for (std::size_t t = 0; t < n; ++t) {
            if (dim[t] == 0) continue;
            std::vector<std::vector<K>> span;
            for (int s : x.faces(t)) {
                Matrix<K> m = map_of(s, static_cast<int>(t));
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    std::vector<K> c(dim[t]);
                    for (std::size_t i = 0; i < dim[t]; ++i) c[i] = m(i, j);
                    span.push_back(c);
                }
            }
            auto rank_of = [&](const std::vector<std::vector<K>>& cols) {
                Matrix<K> m(dim[t], cols.size());
                for (std::size_t j = 0; j < cols.size(); ++j)
                    for (std::size_t i = 0; i < dim[t]; ++i) m(i, j) = cols[j][i];
                return m.rank();
            };
            std::size_t r = rank_of(span);
            for (std::size_t i = 0; i < dim[t] && r < dim[t]; ++i) {
                std::vector<K> e(dim[t], K::zero());
                e[i] = K::one();
                span.push_back(e);
                std::size_t r2 = rank_of(span);
                if (r2 > r) {
                    gens.push_back({t, e});
                    r = r2;
                } else {
                    span.pop_back();
                }
            }
        }
        std::size_t hd = 0;
        for (const Gen& gen : gens) hd += g.stalk(gen.cell);
        hom_dim.push_back(hd);
        // delta^{level-1}: previous generators -> these generators
        if (level > 0) {
            std::vector<std::size_t> prev_off(prev_gen_cell.size() + 1, 0);
            for (std::size_t p = 0; p < prev_gen_cell.size(); ++p) prev_off[p + 1] = prev_off[p] + g.stalk(prev_gen_cell[p]);
            Matrix<K> delta(hd, prev_off.back());
            std::size_t row = 0;
            for (const Gen& h : gens) {
                const std::size_t t = h.cell;
                const Matrix<K>& e = embed[t];
                for (std::size_t qi = 0; qi < prev_q[t].size(); ++qi) {
                    K coef = K::zero();
                    for (std::size_t j = 0; j < h.v.size(); ++j) coef += e(qi, j) * h.v[j];
                    if (coef.is_zero()) continue;
                    const std::size_t p = prev_q[t][qi];
                    const std::size_t s = prev_gen_cell[p];
                    Matrix<K> gm = s == t ? Matrix<K>::identity(g.stalk(t)) : g.map(static_cast<int>(s), static_cast<int>(t));
                    for (std::size_t i = 0; i < gm.rows(); ++i)
                        for (std::size_t j = 0; j < gm.cols(); ++j) delta(row + i, prev_off[p] + j) += coef * gm(i, j);
                }
                row += g.stalk(t);
            }
            cochain.push_back(delta);
        }
        // Q(t) and the cover Q(t) -> M(t)
        std::vector<std::vector<std::size_t>> q(n);
        std::vector<Matrix<K>> kernel(n);
        for (std::size_t t = 0; t < n; ++t) {
            for (std::size_t gi = 0; gi < gens.size(); ++gi)
                if (below(gens[gi].cell, t)) q[t].push_back(gi);
            Matrix<K> pi(dim[t], q[t].size());
            for (std::size_t c = 0; c < q[t].size(); ++c) {
                const Gen& gen = gens[q[t][c]];
                if (gen.cell == t) {
                    for (std::size_t i = 0; i < dim[t]; ++i) pi(i, c) = gen.v[i];
                } else {
                    Matrix<K> m = map_of(static_cast<int>(gen.cell), static_cast<int>(t));
                    for (std::size_t i = 0; i < dim[t]; ++i)
                        for (std::size_t j = 0; j < gen.v.size(); ++j) pi(i, c) += m(i, j) * gen.v[j];
                }
            }
            auto null = pi.nullspace();
            kernel[t] = Matrix<K>(q[t].size(), null.size());
            for (std::size_t j = 0; j < null.size(); ++j)
                for (std::size_t i = 0; i < q[t].size(); ++i) kernel[t](i, j) = null[j][i];
        }
        // kernel maps: include Q(s) into Q(t), then solve in the kernel basis of t
        std::map<std::pair<int, int>, Matrix<K>> next;
        for (std::size_t t = 0; t < n; ++t)
            for (int si : x.faces(t)) {
                const auto s = static_cast<std::size_t>(si);
                Matrix<K> m(kernel[t].cols(), kernel[s].cols());
                for (std::size_t j = 0; j < kernel[s].cols(); ++j) {
                    std::vector<K> lifted(q[t].size(), K::zero());
                    for (std::size_t i = 0; i < q[s].size(); ++i) {
                        auto pos = std::lower_bound(q[t].begin(), q[t].end(), q[s][i]) - q[t].begin();
                        lifted[static_cast<std::size_t>(pos)] = kernel[s](i, j);
                    }
                    auto sol = kernel[t].solve(lifted);
                    if (!sol) throw verification_error("kernel is not a subfunctor");
                    for (std::size_t i = 0; i < sol->size(); ++i) m(i, j) = (*sol)[i];
                }
                next.emplace(std::make_pair(si, static_cast<int>(t)), m);
            }
        for (std::size_t t = 0; t < n; ++t) dim[t] = kernel[t].cols();
        maps = std::move(next);
        embed = std::move(kernel);
        prev_q = std::move(q);
        prev_gen_cell.clear();
        for (const Gen& gen : gens) prev_gen_cell.push_back(gen.cell);
    }
    int top = 0;
    for (const auto& c : x.cells()) top = std::max(top, c.dim);
    std::vector<std::size_t> out(std::max(hom_dim.size(), static_cast<std::size_t>(top) + 1), 0);
    for (std::size_t k = 0; k < hom_dim.size(); ++k) {
        std::size_t r_out = k < cochain.size() ? cochain[k].rank() : 0;
        std::size_t r_in = k > 0 ? cochain[k - 1].rank() : 0;
        out[k] = hom_dim[k] - r_out - r_in;
    }
    return out;
}

}  // namespace tamarkin::plane
