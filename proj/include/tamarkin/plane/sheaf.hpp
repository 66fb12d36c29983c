#pragma once

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "tamarkin/core/matrix.hpp"
#include "tamarkin/plane/arrangement.hpp"

namespace tamarkin::plane {

/// True when the cell set is convex in the face poset: no chain s < t < r with
/// s and r inside and t outside. This is local closedness of the union of cells.
inline bool is_locally_closed(const CellComplex& x, const std::vector<bool>& in) {
    const auto& co = x.cofaces();
    for (std::size_t t = 0; t < x.size(); ++t) {
        if (in[t]) continue;
        bool below = false, above = false;
        for (int s : x.faces(t)) below = below || in[static_cast<std::size_t>(s)];
        for (int r : co[t]) above = above || in[static_cast<std::size_t>(r)];
        if (below && above) return false;
    }
    return true;
}

/// Functor on the face poset: a stalk for every cell and a map F(s) -> F(t) for
/// every face relation s < t. Missing maps are zero.
template <Field K>
class CellularSheaf {
public:
    CellularSheaf(const CellComplex& complex, std::vector<std::size_t> stalks, std::map<std::pair<int, int>, Matrix<K>> maps)
        : x_(&complex), stalk_(std::move(stalks)), maps_(std::move(maps)) {
        validate();
    }

    const CellComplex& complex() const { return *x_; }
    std::size_t stalk(std::size_t c) const { return stalk_[c]; }
    const std::vector<std::size_t>& stalks() const { return stalk_; }

    /// Map F(s) -> F(t) for s a face of t.
    Matrix<K> map(int s, int t) const {
        auto it = maps_.find({s, t});
        if (it != maps_.end()) return it->second;
        return Matrix<K>(stalk_[static_cast<std::size_t>(t)], stalk_[static_cast<std::size_t>(s)]);
    }

    bool has_map(int s, int t) const { return maps_.count({s, t}) > 0; }

private:
    void validate() const {
        if (stalk_.size() != x_->size()) throw structure_error("stalk count does not match the cell count");
        for (const auto& [st, m] : maps_) {
            auto [s, t] = st;
            const auto& f = x_->faces(static_cast<std::size_t>(t));
            if (std::find(f.begin(), f.end(), s) == f.end()) throw structure_error("map between cells that are not incident");
            if (m.rows() != stalk_[static_cast<std::size_t>(t)] || m.cols() != stalk_[static_cast<std::size_t>(s)])
                throw structure_error("incidence map has shape " + m.shape());
        }
        for (std::size_t r = 0; r < x_->size(); ++r)
            for (int t : x_->faces(r))
                for (int s : x_->faces(static_cast<std::size_t>(t)))
                    if (map(t, static_cast<int>(r)) * map(s, t) != map(s, static_cast<int>(r)))
                        throw structure_error("incidence maps do not commute at cell " + std::to_string(r));
    }

    const CellComplex* x_;
    std::vector<std::size_t> stalk_;
    std::map<std::pair<int, int>, Matrix<K>> maps_;
};

/// k_Z for a locally closed cell set Z: stalk k on Z, identity maps inside Z.
template <Field K>
CellularSheaf<K> constant_sheaf(const CellComplex& x, const std::vector<bool>& in) {
    if (in.size() != x.size()) throw structure_error("membership size does not match the cell count");
    if (!is_locally_closed(x, in)) throw Error(Error::Kind::input, "region is not locally closed");
    std::vector<std::size_t> stalks(x.size());
    std::map<std::pair<int, int>, Matrix<K>> maps;
    for (std::size_t t = 0; t < x.size(); ++t) {
        stalks[t] = in[t] ? 1 : 0;
        if (!in[t]) continue;
        for (int s : x.faces(t))
            if (in[static_cast<std::size_t>(s)]) maps.emplace(std::make_pair(s, static_cast<int>(t)), Matrix<K>::identity(1));
    }
    return CellularSheaf<K>(x, std::move(stalks), std::move(maps));
}

namespace detail {

/// Rank of a sparse matrix given by columns of (row, value) pairs.
template <Field K>
std::size_t sparse_rank(std::vector<std::map<std::size_t, K>> cols) {
    std::map<std::size_t, std::size_t> owner;  // pivot row -> column
    std::size_t rank = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto& c = cols[j];
        while (!c.empty()) {
            auto piv = std::prev(c.end());
            auto it = owner.find(piv->first);
            if (it == owner.end()) {
                owner.emplace(piv->first, j);
                ++rank;
                break;
            }
            const auto& o = cols[it->second];
            K f = piv->second * std::prev(o.end())->second.inverse();
            for (const auto& [row, v] : o) {
                auto e = c.find(row);
                if (e == c.end()) {
                    c.emplace(row, K::zero() - f * v);
                } else {
                    e->second -= f * v;
                    if (e->second.is_zero()) c.erase(e);
                }
            }
        }
    }
    return rank;
}

/// Strict chains s0 < s1 < ... < sn in the face poset, with F(s0) and G(sn) nonzero.
inline std::vector<std::vector<int>> chains(const CellComplex& x, std::size_t n, const std::vector<std::size_t>& f,
                                            const std::vector<std::size_t>& g) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto extend = [&](auto&& self, int top, std::size_t left) -> void {
        if (left == 0) {
            if (f[static_cast<std::size_t>(cur.back())] > 0) out.emplace_back(cur.rbegin(), cur.rend());
            return;
        }
        for (int s : x.faces(static_cast<std::size_t>(top))) {
            cur.push_back(s);
            self(self, s, left - 1);
            cur.pop_back();
        }
    };
    for (std::size_t t = 0; t < x.size(); ++t) {
        if (g[t] == 0) continue;
        cur.assign(1, static_cast<int>(t));
        extend(extend, static_cast<int>(t), n);
    }
    return out;
}

}  // namespace detail

/// Cochain complex computing Ext(F, G) over the face poset: degree n is the sum
/// over strict chains s0 < ... < sn of Hom(F(s0), G(sn)).
template <Field K>
struct ExtComplex {
    std::vector<std::vector<std::vector<int>>> chains;  // per degree
    std::vector<std::vector<std::size_t>> offset;       // per degree, start of each chain's block
    std::vector<std::size_t> dims;

    ExtComplex(const CellularSheaf<K>& f, const CellularSheaf<K>& g) : f_(f), g_(g) {
        const CellComplex& x = f.complex();
        if (&x != &g.complex() && x.size() != g.complex().size()) throw structure_error("sheaves live on different complexes");
        int top = 0;
        for (const auto& c : x.cells()) top = std::max(top, c.dim);
        for (std::size_t n = 0; n <= static_cast<std::size_t>(top); ++n) {
            chains.push_back(detail::chains(x, n, f.stalks(), g.stalks()));
            std::vector<std::size_t> off;
            std::size_t d = 0;
            for (const auto& ch : chains.back()) {
                off.push_back(d);
                d += g.stalk(static_cast<std::size_t>(ch.back())) * f.stalk(static_cast<std::size_t>(ch.front()));
            }
            offset.push_back(std::move(off));
            dims.push_back(d);
        }
        for (std::size_t n = 0; n < chains.size(); ++n) {
            std::map<std::vector<int>, std::size_t> idx;
            for (std::size_t i = 0; i < chains[n].size(); ++i) idx.emplace(chains[n][i], i);
            index_.push_back(std::move(idx));
        }
    }

    /// Columns of d^n : C^n -> C^{n+1}.
    std::vector<std::map<std::size_t, K>> differential(std::size_t n) const {
        std::vector<std::map<std::size_t, K>> cols(dims[n]);
        if (n + 1 >= chains.size()) return cols;
        // d(phi)(s0..s_{n+1}) = G(s_n<s_{n+1}) phi(s0..s_n) + sum_i (-1)^i phi(.. omit s_i ..) + (-1)^{n+1} phi(s1..s_{n+1}) F(s0<s1)
        for (std::size_t ci = 0; ci < chains[n + 1].size(); ++ci) {
            const auto& ch = chains[n + 1][ci];
            const std::size_t a = static_cast<std::size_t>(ch.front()), b = static_cast<std::size_t>(ch.back());
            const std::size_t fa = f_.stalk(a), gb = g_.stalk(b);
            auto add = [&](const std::vector<int>& face, const Matrix<K>& left, const Matrix<K>& right, const K& sign) {
                // contribution of phi(face), a matrix G(face.back) x F(face.front), as left * phi * right
                auto it = index_[n].find(face);
                if (it == index_[n].end()) return;
                const std::size_t fr = f_.stalk(static_cast<std::size_t>(face.front()));
                const std::size_t gr = g_.stalk(static_cast<std::size_t>(face.back()));
                const std::size_t base = offset[n][it->second];
                for (std::size_t p = 0; p < gr; ++p)
                    for (std::size_t q = 0; q < fr; ++q) {
                        const std::size_t col = base + p * fr + q;
                        for (std::size_t i = 0; i < gb; ++i)
                            for (std::size_t j = 0; j < fa; ++j) {
                                K v = sign * left(i, p) * right(q, j);
                                if (v.is_zero()) continue;
                                const std::size_t row = offset[n + 1][ci] + i * fa + j;
                                auto e = cols[col].find(row);
                                if (e == cols[col].end())
                                    cols[col].emplace(row, v);
                                else if ((e->second += v).is_zero())
                                    cols[col].erase(e);
                            }
                    }
            };
            const int m = static_cast<int>(ch.size()) - 1;  // n + 1
            std::vector<int> face(ch.begin(), ch.end() - 1);
            add(face, g_.map(ch[static_cast<std::size_t>(m) - 1], ch.back()), Matrix<K>::identity(fa), K::one());
            for (int i = 1; i < m; ++i) {
                face.assign(ch.begin(), ch.end());
                face.erase(face.begin() + i);
                add(face, Matrix<K>::identity(gb), Matrix<K>::identity(fa), i % 2 == 0 ? K::one() : K::zero() - K::one());
            }
            face.assign(ch.begin() + 1, ch.end());
            add(face, Matrix<K>::identity(gb), f_.map(ch[0], ch[1]), m % 2 == 0 ? K::one() : K::zero() - K::one());
        }
        return cols;
    }

private:
    const CellularSheaf<K>& f_;
    const CellularSheaf<K>& g_;
    std::vector<std::map<std::vector<int>, std::size_t>> index_;
};

/// dim Ext^n(F, G) for n = 0 .. top cell dimension.
template <Field K>
std::vector<std::size_t> ext_dims(const CellularSheaf<K>& f, const CellularSheaf<K>& g) {
    ExtComplex<K> c(f, g);
    std::vector<std::size_t> rank(c.dims.size() + 1, 0);  // rank[n] = rank of d^{n-1}
    for (std::size_t n = 0; n < c.dims.size(); ++n) rank[n + 1] = detail::sparse_rank(c.differential(n));
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < c.dims.size(); ++n) out.push_back(c.dims[n] - rank[n + 1] - rank[n]);
    return out;
}

/// Natural transformations k_A -> k_B. Each basis morphism is constant on a
/// connected piece of the cells in A and B; a piece is killed when one of its
/// cells has a coface in B outside A or a face in A outside B.
struct ConstantHom {
    std::vector<int> piece;               // per cell: basis index of the surviving piece, or -1
    std::size_t dim = 0;
};

inline ConstantHom constant_hom(const CellComplex& x, const std::vector<bool>& a, const std::vector<bool>& b) {
    const std::size_t n = x.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    auto both = [&](std::size_t c) { return a[c] && b[c]; };
    std::vector<bool> dead(n, false);
    for (std::size_t t = 0; t < n; ++t)
        for (int si : x.faces(t)) {
            const auto s = static_cast<std::size_t>(si);
            if (both(s) && both(t)) parent[find(s)] = find(t);
            if (both(s) && b[t] && !a[t]) dead[s] = true;
            if (both(t) && a[s] && !b[s]) dead[t] = true;
        }
    for (std::size_t c = 0; c < n; ++c)
        if (both(c) && dead[c]) dead[find(c)] = true;
    ConstantHom out;
    out.piece.assign(n, -1);
    std::map<std::size_t, int> id;
    for (std::size_t c = 0; c < n; ++c) {
        if (!both(c) || dead[find(c)]) continue;
        auto [it, fresh] = id.emplace(find(c), static_cast<int>(id.size()));
        out.piece[c] = it->second;
    }
    out.dim = id.size();
    return out;
}

/// True when the identity on the cells of A and B defines a morphism k_A -> k_B.
inline bool identity_is_natural(const CellComplex& x, const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t t = 0; t < x.size(); ++t)
        for (int si : x.faces(t)) {
            const auto s = static_cast<std::size_t>(si);
            if (a[s] && b[s] && b[t] && !a[t]) return false;
            if (a[t] && b[t] && a[s] && !b[s]) return false;
        }
    return true;
}

}  // namespace tamarkin::plane
