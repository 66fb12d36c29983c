#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "tamarkin/core/error.hpp"
#include "tamarkin/core/matrix.hpp"
#include "tamarkin/grid/grid_module.hpp"

namespace tamarkin::grid {

/// Sample points on which every natural transformation F -> T_c G is
/// determined: all grid points of F, all grid points of G moved back by c,
/// the finite right ends, and one point below everything when F is
/// left-infinite. Between consecutive points both F and T_c G are constant.
template <Field K>
std::vector<Rat> morphism_points(const GridModule<K>& f, const GridModule<K>& g, const Rat& c) {
    std::set<Rat> pts(f.grid().begin(), f.grid().end());
    for (const Rat& t : g.grid()) pts.insert(t - c);
    if (f.right_death().is_finite()) pts.insert(f.right_death());
    if (g.right_death().is_finite()) pts.insert(g.right_death() - c);
    if (pts.empty()) pts.insert(Rat(0));
    if (f.left_infinite()) pts.insert(*pts.begin() - Rat(1));
    return {pts.begin(), pts.end()};
}

template <Field K>
std::vector<int> union_degrees(const GridModule<K>& f, const GridModule<K>& g) {
    std::set<int> d;
    for (int x : f.degree_list()) d.insert(x);
    for (int x : g.degree_list()) d.insert(x);
    return {d.begin(), d.end()};
}

/// Natural transformation F -> T_shift G, with T_c G(t) = G(t + c), stored by
/// its components at morphism_points(F, G, shift).
template <Field K>
class GridMorphism {
public:
    GridMorphism(GridModule<K> source, GridModule<K> target, Rat shift)
        : source_(std::move(source)), target_(std::move(target)), shift_(std::move(shift)) {
        if (!shift_.is_finite() || shift_.sign() < 0) throw parameter_error("morphism shift must be finite and >= 0");
        points_ = morphism_points(source_, target_, shift_);
        for (int d : union_degrees(source_, target_)) {
            auto& comps = components_[d];
            for (const Rat& p : points_) comps.emplace_back(target_.dim(d, p + shift_), source_.dim(d, p));
        }
    }

    /// Morphism whose component at each sample point is produced by `fn`.
    static GridMorphism sampled(GridModule<K> source, GridModule<K> target, Rat shift,
                                const std::function<Matrix<K>(int, const Rat&)>& fn) {
        GridMorphism m(std::move(source), std::move(target), std::move(shift));
        for (auto& [d, comps] : m.components_)
            for (std::size_t k = 0; k < comps.size(); ++k) {
                Matrix<K> x = fn(d, m.points_[k]);
                if (x.rows() != comps[k].rows() || x.cols() != comps[k].cols())
                    throw structure_error("component shape " + x.shape() + " does not match " + comps[k].shape());
                comps[k] = std::move(x);
            }
        return m;
    }

    const GridModule<K>& source() const { return source_; }
    const GridModule<K>& target() const { return target_; }
    const Rat& shift() const { return shift_; }
    const std::vector<Rat>& points() const { return points_; }
    const std::map<int, std::vector<Matrix<K>>>& components() const { return components_; }
    std::map<int, std::vector<Matrix<K>>>& components() { return components_; }

    /// Component F(t) -> G(t + shift).
    Matrix<K> at(int degree, const Rat& t) const {
        std::size_t rows = target_.dim(degree, t + shift_), cols = source_.dim(degree, t);
        if (rows == 0 || cols == 0) return Matrix<K>(rows, cols);
        const auto& comps = components_.at(degree);
        auto it = std::upper_bound(points_.begin(), points_.end(), t);
        std::size_t k = it == points_.begin() ? 0 : static_cast<std::size_t>(it - points_.begin()) - 1;
        return comps[k];
    }

    /// Whether every naturality square between consecutive sample points commutes.
    bool is_natural() const {
        for (const auto& [d, comps] : components_)
            for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
                Matrix<K> lhs = target_.structure(d, points_[k] + shift_, points_[k + 1] + shift_) * comps[k];
                Matrix<K> rhs = comps[k + 1] * source_.structure(d, points_[k], points_[k + 1]);
                if (!(lhs == rhs)) return false;
            }
        return true;
    }

    bool is_zero() const {
        for (const auto& [d, comps] : components_)
            for (const auto& m : comps)
                if (!m.is_zero()) return false;
        return true;
    }

    /// All component entries in a fixed order (degree, point, row, column).
    std::vector<K> flatten() const {
        std::vector<K> out;
        for (const auto& [d, comps] : components_)
            for (const auto& m : comps)
                for (std::size_t i = 0; i < m.rows(); ++i)
                    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
        return out;
    }

    friend GridMorphism operator+(GridMorphism a, const GridMorphism& b) {
        a.require_parallel(b);
        for (auto& [d, comps] : a.components_)
            for (std::size_t k = 0; k < comps.size(); ++k) comps[k] = comps[k] + b.components_.at(d)[k];
        return a;
    }
    friend GridMorphism operator*(const K& s, GridMorphism a) {
        for (auto& [d, comps] : a.components_)
            for (auto& m : comps) m = s * m;
        return a;
    }
    friend bool operator==(const GridMorphism& a, const GridMorphism& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.shift_ == b.shift_ && a.components_ == b.components_;
    }

private:
    void require_parallel(const GridMorphism& b) const {
        if (!(source_ == b.source_ && target_ == b.target_ && shift_ == b.shift_))
            throw parameter_error("adding morphisms with different source, target or shift");
    }

    GridModule<K> source_, target_;
    Rat shift_;
    std::vector<Rat> points_;
    std::map<int, std::vector<Matrix<K>>> components_;
};

/// Basis of the space of natural transformations F -> T_c G, from the exact
/// nullspace of the naturality equations on the common sample points.
template <Field K>
std::vector<GridMorphism<K>> morphism_space(const GridModule<K>& f, const GridModule<K>& g, const Rat& c) {
    if (!c.is_finite() || c.sign() < 0) throw parameter_error("morphism_space needs a finite shift c >= 0");
    GridMorphism<K> zero(f, g, c);
    const auto& pts = zero.points();
    std::vector<GridMorphism<K>> basis;
    for (const auto& [d, comps] : zero.components()) {
        // unknown offsets: entry (i, j) of component k sits at offset[k] + i * cols + j
        std::vector<std::size_t> offset(pts.size() + 1, 0);
        for (std::size_t k = 0; k < pts.size(); ++k) offset[k + 1] = offset[k] + comps[k].rows() * comps[k].cols();
        const std::size_t unknowns = offset.back();
        if (unknowns == 0) continue;
        std::vector<std::vector<K>> eqs;
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            Matrix<K> gs = g.structure(d, pts[k] + c, pts[k + 1] + c);
            Matrix<K> fs = f.structure(d, pts[k], pts[k + 1]);
            std::size_t r0 = comps[k].rows(), c0 = comps[k].cols(), r1 = comps[k + 1].rows(), c1 = comps[k + 1].cols();
            // (gs * phi_k - phi_{k+1} * fs)(i, j) = 0 for i < r1, j < c0
            for (std::size_t i = 0; i < r1; ++i)
                for (std::size_t j = 0; j < c0; ++j) {
                    std::vector<K> row(unknowns, K::zero());
                    for (std::size_t l = 0; l < r0; ++l) row[offset[k] + l * c0 + j] += gs(i, l);
                    for (std::size_t l = 0; l < c1; ++l) row[offset[k + 1] + i * c1 + l] -= fs(l, j);
                    eqs.push_back(std::move(row));
                }
        }
        Matrix<K> system(eqs.size(), unknowns);
        for (std::size_t r = 0; r < eqs.size(); ++r)
            for (std::size_t u = 0; u < unknowns; ++u) system(r, u) = eqs[r][u];
        for (const auto& v : system.nullspace()) {
            GridMorphism<K> m = zero;
            auto& mc = m.components().at(d);
            for (std::size_t k = 0; k < pts.size(); ++k)
                for (std::size_t i = 0; i < mc[k].rows(); ++i)
                    for (std::size_t j = 0; j < mc[k].cols(); ++j) mc[k](i, j) = v[offset[k] + i * mc[k].cols() + j];
            basis.push_back(std::move(m));
        }
    }
    return basis;
}

/// beta o alpha for alpha : F -> T_a G and beta : G -> T_b H, as F -> T_{a+b} H.
/// (This is T_a beta composed with alpha.)
template <Field K>
GridMorphism<K> compose(const GridMorphism<K>& beta, const GridMorphism<K>& alpha) {
    if (!(alpha.target() == beta.source())) throw parameter_error("composing morphisms whose modules do not match");
    const Rat a = alpha.shift();
    return GridMorphism<K>::sampled(alpha.source(), beta.target(), a + beta.shift(), [&](int d, const Rat& t) {
        return beta.at(d, t + a) * alpha.at(d, t);
    });
}

/// The canonical morphism tau_{0,c} : F -> T_c F given by the structure maps.
template <Field K>
GridMorphism<K> tau(const GridModule<K>& f, const Rat& c) {
    return GridMorphism<K>::sampled(f, f, c, [&](int d, const Rat& t) { return f.structure(d, t, t + c); });
}

template <Field K>
GridMorphism<K> identity(const GridModule<K>& f) {
    return tau(f, Rat(0));
}

/// sum_i coeffs[i] * basis[i]; `zero` fixes source, target and shift.
template <Field K>
GridMorphism<K> combine(GridMorphism<K> zero, const std::vector<GridMorphism<K>>& basis, const std::vector<K>& coeffs) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!coeffs[i].is_zero()) zero = zero + coeffs[i] * basis[i];
    return zero;
}

}  // namespace tamarkin::grid
