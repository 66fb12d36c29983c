#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "tamarkin/core/barcode.hpp"
#include "tamarkin/core/error.hpp"
#include "tamarkin/core/matrix.hpp"
#include "tamarkin/core/rat.hpp"

namespace tamarkin::grid {

/// One homological degree of a grid presentation: a vector space per grid point
/// and a structure matrix per consecutive pair (maps[i] : V_i -> V_{i+1}).
template <Field K>
struct Strand {
    std::vector<std::size_t> dims;
    std::vector<Matrix<K>> maps;
    friend bool operator==(const Strand&, const Strand&) = default;
};

/// Persistence module over R presented on a finite strictly increasing grid.
///
/// The value at t is the value at the largest grid point <= t. Below the first
/// point the module is zero, unless `left_infinite` is set, in which case it
/// continues the first value (so everything alive at the first point was born
/// at -inf). From `right_death` on the module is zero; +inf means generators
/// alive at the last point persist forever.
template <Field K>
class GridModule {
public:
    GridModule() = default;
    GridModule(std::vector<Rat> grid, std::map<int, Strand<K>> degrees, bool left_infinite = false,
               Rat right_death = Rat::infinity())
        : grid_(std::move(grid)), degrees_(std::move(degrees)), left_infinite_(left_infinite),
          right_death_(std::move(right_death)) {
        validate();
    }

    const std::vector<Rat>& grid() const { return grid_; }
    const std::map<int, Strand<K>>& degrees() const { return degrees_; }
    bool left_infinite() const { return left_infinite_; }
    const Rat& right_death() const { return right_death_; }

    std::vector<int> degree_list() const {
        std::vector<int> d;
        for (const auto& [k, s] : degrees_) d.push_back(k);
        return d;
    }

    /// -1 below the grid, n at or beyond right_death, else the cell index.
    long cell(const Rat& t) const {
        if (grid_.empty()) return -1;
        if (t >= right_death_) return static_cast<long>(grid_.size());
        if (t < grid_.front()) return -1;
        auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
        return static_cast<long>(it - grid_.begin()) - 1;
    }

    std::size_t dim_at_cell(int degree, long c) const {
        auto it = degrees_.find(degree);
        if (it == degrees_.end()) return 0;
        if (c == -1) return left_infinite_ ? it->second.dims.front() : 0;
        if (c >= static_cast<long>(grid_.size())) return 0;
        return it->second.dims[static_cast<std::size_t>(c)];
    }

    std::size_t dim(int degree, const Rat& t) const { return dim_at_cell(degree, cell(t)); }

    /// Structure map V(s) -> V(t) for s <= t.
    Matrix<K> structure(int degree, const Rat& s, const Rat& t) const {
        if (t < s) throw parameter_error("structure map needs s <= t");
        return structure_cells(degree, cell(s), cell(t));
    }

    Matrix<K> structure_cells(int degree, long from, long to) const {
        std::size_t ds = dim_at_cell(degree, from), dt = dim_at_cell(degree, to);
        if (ds == 0 || dt == 0) return Matrix<K>(dt, ds);
        const Strand<K>& s = degrees_.at(degree);
        long start = std::max(from, 0L);
        Matrix<K> m = Matrix<K>::identity(s.dims[static_cast<std::size_t>(start)]);
        for (long i = start; i < to; ++i) m = s.maps[static_cast<std::size_t>(i)] * m;
        return m;
    }

    /// Number of bars of the decomposition, summed over degrees.
    std::size_t total_dimension() const;

    friend bool operator==(const GridModule&, const GridModule&) = default;

private:
    void validate() const {
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            if (!grid_[i].is_finite()) throw structure_error("grid points must be finite");
            if (i && !(grid_[i - 1] < grid_[i])) throw structure_error("grid must be strictly increasing");
        }
        if (!grid_.empty() && !(grid_.back() < right_death_))
            throw structure_error("right_death must lie beyond the last grid point");
        for (const auto& [deg, s] : degrees_) {
            if (s.dims.size() != grid_.size())
                throw structure_error("degree " + std::to_string(deg) + ": expected " + std::to_string(grid_.size()) + " dims");
            if (s.maps.size() + 1 != std::max<std::size_t>(grid_.size(), 1))
                throw structure_error("degree " + std::to_string(deg) + ": expected one map per consecutive grid pair");
            for (std::size_t i = 0; i < s.maps.size(); ++i)
                if (s.maps[i].rows() != s.dims[i + 1] || s.maps[i].cols() != s.dims[i])
                    throw structure_error("degree " + std::to_string(deg) + ": map " + std::to_string(i + 1) + " -> " +
                                          std::to_string(i + 2) + " has shape " + s.maps[i].shape());
        }
    }

    std::vector<Rat> grid_;
    std::map<int, Strand<K>> degrees_;
    bool left_infinite_ = false;
    Rat right_death_ = Rat::infinity();
};

/// Grid presentation of a barcode: one basis vector per bar at every grid point
/// where the bar is alive, structure maps sending a bar to itself.
template <Field K>
GridModule<K> to_grid(const GradedBarcode& barcode, const std::vector<Rat>& extra_points = {}) {
    std::set<Rat> pts;
    bool left_inf = false;
    for (const Bar& b : barcode) {
        if (b.birth.is_finite()) pts.insert(b.birth);
        else left_inf = true;
        if (b.death.is_finite()) pts.insert(b.death);
    }
    for (const Rat& p : extra_points) pts.insert(p);
    if (pts.empty()) pts.insert(Rat(0));
    if (left_inf) pts.insert(*pts.begin() - Rat(1));
    std::vector<Rat> grid(pts.begin(), pts.end());

    std::map<int, std::vector<const Bar*>> by_degree;
    for (const Bar& b : barcode) by_degree[b.degree].push_back(&b);

    std::map<int, Strand<K>> degrees;
    for (const auto& [deg, bars] : by_degree) {
        // alive[i] = indices of bars alive at grid point i
        std::vector<std::vector<std::size_t>> alive(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = 0; j < bars.size(); ++j)
                if (bars[j]->birth <= grid[i] && grid[i] < bars[j]->death) alive[i].push_back(j);
        Strand<K> s;
        for (auto& a : alive) s.dims.push_back(a.size());
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            Matrix<K> m(alive[i + 1].size(), alive[i].size());
            for (std::size_t c = 0; c < alive[i].size(); ++c)
                for (std::size_t r = 0; r < alive[i + 1].size(); ++r)
                    if (alive[i][c] == alive[i + 1][r]) m(r, c) = K::one();
            s.maps.push_back(std::move(m));
        }
        degrees.emplace(deg, std::move(s));
    }
    return GridModule<K>(std::move(grid), std::move(degrees), left_inf, Rat::infinity());
}

/// Interval decomposition by rank inclusion-exclusion over the grid:
/// mult[i, j) = r(i, j-1) - r(i-1, j-1) - r(i, j) + r(i-1, j),
/// where r(i, j) is the rank of the structure map from point i to point j.
/// A virtual point before the grid stands for -inf when the module is
/// left-infinite; the virtual point after the grid stands for right_death.
template <Field K>
GradedBarcode decompose(const GridModule<K>& m) {
    GradedBarcode out;
    const long n = static_cast<long>(m.grid().size());
    const long first = m.left_infinite() ? -1 : 0;
    for (int deg : m.degree_list()) {
        // rank table over cells first..n (cell n is the zero cell)
        auto idx = [&](long c) { return static_cast<std::size_t>(c - first); };
        const std::size_t size = static_cast<std::size_t>(n - first + 1);
        std::vector<std::vector<long>> r(size, std::vector<long>(size, 0));
        for (long i = first; i < n; ++i) {
            std::size_t di = m.dim_at_cell(deg, i);
            if (di == 0) continue;
            Matrix<K> acc = m.structure_cells(deg, i, i);
            r[idx(i)][idx(i)] = static_cast<long>(acc.rank());
            for (long j = std::max(i, 0L); j < n; ++j) {
                if (j > i) {
                    if (j > std::max(i, 0L)) acc = m.degrees().at(deg).maps[static_cast<std::size_t>(j - 1)] * acc;
                    r[idx(i)][idx(j)] = static_cast<long>(acc.rank());
                }
            }
        }
        auto rank = [&](long i, long j) -> long {
            if (i < first || j >= n || i > j) return 0;
            return r[idx(i)][idx(j)];
        };
        for (long i = first; i < n; ++i) {
            for (long j = i + 1; j <= n; ++j) {
                long mult = rank(i, j - 1) - rank(i - 1, j - 1) - rank(i, j) + rank(i - 1, j);
                if (mult < 0) throw structure_error("negative interval multiplicity; structure maps are inconsistent");
                Rat birth = i < 0 ? Rat::neg_infinity() : m.grid()[static_cast<std::size_t>(i)];
                Rat death = j >= n ? m.right_death() : m.grid()[static_cast<std::size_t>(j)];
                for (long k = 0; k < mult; ++k) out.add(Bar(birth, death, deg));
            }
        }
    }
    return out;
}

template <Field K>
std::size_t GridModule<K>::total_dimension() const {
    return decompose(*this).size();
}

}  // namespace tamarkin::grid
