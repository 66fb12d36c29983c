#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tamarkin/plane/region.hpp"

namespace tamarkin::plane {

/// Finite regular cell complex given by its face poset. faces(c) lists every
/// cell in the closure of c other than c itself.
class CellComplex {
public:
    struct Cell {
        int dim = 0;
        std::vector<int> faces;
        Point sample;  // a point of the open cell (unused for abstract complexes)
    };

    CellComplex() = default;
    explicit CellComplex(std::vector<Cell> cells) : cells_(std::move(cells)) { validate(); }

    std::size_t size() const { return cells_.size(); }
    const Cell& cell(std::size_t i) const { return cells_[i]; }
    const std::vector<Cell>& cells() const { return cells_; }
    int dim(std::size_t i) const { return cells_[i].dim; }
    const std::vector<int>& faces(std::size_t i) const { return cells_[i].faces; }

    /// Cells whose closure contains i (excluding i).
    const std::vector<std::vector<int>>& cofaces() const {
        if (cofaces_.size() != cells_.size()) {
            cofaces_.assign(cells_.size(), {});
            for (std::size_t c = 0; c < cells_.size(); ++c)
                for (int f : cells_[c].faces) cofaces_[static_cast<std::size_t>(f)].push_back(static_cast<int>(c));
        }
        return cofaces_;
    }

    std::size_t count(int d) const {
        std::size_t n = 0;
        for (const Cell& c : cells_) n += c.dim == d;
        return n;
    }

private:
    void validate() const {
        const std::size_t n = cells_.size();
        for (std::size_t c = 0; c < n; ++c) {
            std::set<int> fs(cells_[c].faces.begin(), cells_[c].faces.end());
            if (fs.size() != cells_[c].faces.size()) throw structure_error("repeated face in cell " + std::to_string(c));
            for (int f : fs) {
                if (f < 0 || static_cast<std::size_t>(f) >= n) throw structure_error("face index out of range");
                if (cells_[static_cast<std::size_t>(f)].dim >= cells_[c].dim) throw structure_error("face of cell " + std::to_string(c) + " has no smaller dimension");
                for (int g : cells_[static_cast<std::size_t>(f)].faces)
                    if (!fs.count(g)) throw structure_error("face relation of cell " + std::to_string(c) + " is not transitive");
            }
        }
    }

    std::vector<Cell> cells_;
    mutable std::vector<std::vector<int>> cofaces_;
};

/// Cell decomposition of a box refining the boundaries of the given regions:
/// vertical lines through every polygon vertex and every crossing of polygon
/// edges cut the box into slabs, and each slab is cut by the edge pieces that
/// span it. Every region is a union of cells; membership[r][c] says whether cell
/// c lies in region r.
struct Arrangement {
    CellComplex complex;
    std::vector<std::vector<bool>> membership;
    std::vector<Rat> lines;
    Rat t_min, t_max;
};

namespace detail {

struct Segment {
    Point a, b;  // a.x < b.x
    Rat at(const Rat& x) const { return a.t + (b.t - a.t) * (x - a.x) / (b.x - a.x); }
};

}  // namespace detail

inline Arrangement arrange(const std::vector<PlaneRegion>& regions) {
    using detail::Segment;
    std::vector<Segment> segs;
    std::set<Rat> xs;
    Rat t_lo, t_hi;
    bool any = false;
    for (const PlaneRegion& r : regions)
        for (const Polygon& q : r.polygons()) {
            const auto& v = q.vertices();
            for (std::size_t i = 0; i < v.size(); ++i) {
                const Point& p = v[i];
                const Point& n = v[(i + 1) % v.size()];
                xs.insert(p.x);
                t_lo = any ? min(t_lo, p.t) : p.t;
                t_hi = any ? max(t_hi, p.t) : p.t;
                any = true;
                if (p.x < n.x) segs.push_back({p, n});
                if (n.x < p.x) segs.push_back({n, p});
            }
        }
    if (!any) {
        t_lo = Rat(0);
        t_hi = Rat(0);
        xs.insert(Rat(0));
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& s, const Segment& u) {
        if (s.a.x != u.a.x) return s.a.x < u.a.x;
        if (s.a.t != u.a.t) return s.a.t < u.a.t;
        if (s.b.x != u.b.x) return s.b.x < u.b.x;
        return s.b.t < u.b.t;
    });
    segs.erase(std::unique(segs.begin(), segs.end(), [](const Segment& s, const Segment& u) { return s.a == u.a && s.b == u.b; }),
               segs.end());
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size() && segs[j].a.x < segs[i].b.x; ++j) {
            Rat lo = max(segs[i].a.x, segs[j].a.x), hi = min(segs[i].b.x, segs[j].b.x);
            if (!(lo < hi)) continue;
            Rat d0 = segs[i].at(lo) - segs[j].at(lo), d1 = segs[i].at(hi) - segs[j].at(hi);
            if (d0.sign() * d1.sign() < 0) xs.insert(lo + (hi - lo) * d0 / (d0 - d1));
        }
    Arrangement out;
    out.t_min = t_lo - 1;
    out.t_max = t_hi + 1;
    xs.insert(*xs.begin() - 1);
    xs.insert(*xs.rbegin() + 1);
    out.lines.assign(xs.begin(), xs.end());
    const auto& X = out.lines;
    const std::size_t nl = X.size();

    // pieces[k]: (t at X[k], t at X[k+1]) for every segment spanning slab k, plus the box
    std::vector<std::vector<std::pair<Rat, Rat>>> pieces(nl - 1);
    for (const Segment& s : segs) {
        std::size_t k0 = static_cast<std::size_t>(std::lower_bound(X.begin(), X.end(), s.a.x) - X.begin());
        std::size_t k1 = static_cast<std::size_t>(std::lower_bound(X.begin(), X.end(), s.b.x) - X.begin());
        for (std::size_t k = k0; k < k1; ++k) pieces[k].emplace_back(k == k0 ? s.a.t : s.at(X[k]), k + 1 == k1 ? s.b.t : s.at(X[k + 1]));
    }
    for (auto& p : pieces) {
        p.emplace_back(out.t_min, out.t_min);
        p.emplace_back(out.t_max, out.t_max);
        std::sort(p.begin(), p.end(), [](const auto& u, const auto& w) {
            Rat su = u.first + u.second, sw = w.first + w.second;
            if (su != sw) return su < sw;
            return u.first < w.first;
        });
        p.erase(std::unique(p.begin(), p.end()), p.end());
    }

    std::vector<CellComplex::Cell> cells;
    std::vector<std::size_t> column;  // 2k for cells on line k, 2k+1 for cells inside slab k
    // vertices per line, sorted by t
    std::vector<std::vector<Rat>> vt(nl);
    std::vector<std::vector<int>> vid(nl);
    for (std::size_t k = 0; k < nl; ++k) {
        std::set<Rat> ts{out.t_min, out.t_max};
        if (k > 0)
            for (const auto& pc : pieces[k - 1]) ts.insert(pc.second);
        if (k + 1 < nl)
            for (const auto& pc : pieces[k]) ts.insert(pc.first);
        vt[k].assign(ts.begin(), ts.end());
        for (const Rat& t : vt[k]) {
            vid[k].push_back(static_cast<int>(cells.size()));
            cells.push_back({0, {}, {X[k], t}});
            column.push_back(2 * k);
        }
    }
    auto vertex_at = [&](std::size_t k, const Rat& t) {
        auto it = std::lower_bound(vt[k].begin(), vt[k].end(), t);
        return vid[k][static_cast<std::size_t>(it - vt[k].begin())];
    };
    // vertical edges: line k, between vertex j and j+1
    std::vector<std::vector<int>> eid(nl);
    for (std::size_t k = 0; k < nl; ++k)
        for (std::size_t j = 0; j + 1 < vt[k].size(); ++j) {
            eid[k].push_back(static_cast<int>(cells.size()));
            cells.push_back({1, {vid[k][j], vid[k][j + 1]}, {X[k], (vt[k][j] + vt[k][j + 1]) / 2}});
            column.push_back(2 * k);
        }
    // edges of the vertical line k with both ends in [lo, hi], and their vertices
    auto span = [&](std::size_t k, const Rat& lo, const Rat& hi, std::vector<int>& into) {
        auto j0 = static_cast<std::size_t>(std::lower_bound(vt[k].begin(), vt[k].end(), lo) - vt[k].begin());
        auto j1 = static_cast<std::size_t>(std::lower_bound(vt[k].begin(), vt[k].end(), hi) - vt[k].begin());
        for (std::size_t j = j0; j <= j1; ++j) into.push_back(vid[k][j]);
        for (std::size_t j = j0; j < j1; ++j) into.push_back(eid[k][j]);
    };
    for (std::size_t k = 0; k + 1 < nl; ++k) {
        const Rat xm = (X[k] + X[k + 1]) / 2;
        std::vector<int> pid;
        for (const auto& [tl, tr] : pieces[k]) {
            pid.push_back(static_cast<int>(cells.size()));
            cells.push_back({1, {vertex_at(k, tl), vertex_at(k + 1, tr)}, {xm, (tl + tr) / 2}});
            column.push_back(2 * k + 1);
        }
        for (std::size_t j = 0; j + 1 < pieces[k].size(); ++j) {
            const auto& lo = pieces[k][j];
            const auto& hi = pieces[k][j + 1];
            std::vector<int> faces{pid[j], pid[j + 1]};
            span(k, lo.first, hi.first, faces);
            span(k + 1, lo.second, hi.second, faces);
            Rat tm = (lo.first + lo.second + hi.first + hi.second) / 4;
            cells.push_back({2, faces, {xm, tm}});
            column.push_back(2 * k + 1);
        }
    }
    out.complex = CellComplex(std::move(cells));
    for (const PlaneRegion& r : regions) {
        // candidate polygons per column, from each polygon's x-range
        std::vector<std::vector<const Polygon*>> cand(2 * nl);
        for (const Polygon& q : r.polygons()) {
            auto k0 = static_cast<std::size_t>(std::lower_bound(X.begin(), X.end(), q.min_x()) - X.begin());
            auto k1 = static_cast<std::size_t>(std::lower_bound(X.begin(), X.end(), q.max_x()) - X.begin());
            for (std::size_t col = 2 * k0; col <= 2 * k1; ++col) cand[col].push_back(&q);
        }
        std::vector<bool> in(out.complex.size(), false);
        for (std::size_t c = 0; c < out.complex.size(); ++c)
            for (const Polygon* q : cand[column[c]])
                if (q->contains(out.complex.cell(c).sample)) {
                    in[c] = true;
                    break;
                }
        out.membership.push_back(std::move(in));
    }
    return out;
}

}  // namespace tamarkin::plane
