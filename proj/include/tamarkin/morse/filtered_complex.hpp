#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tamarkin/core/barcode.hpp"
#include "tamarkin/core/matrix.hpp"

namespace tamarkin::morse {

struct Generator {
    std::string id;
    int degree = 0;
    Rat value;
};

/// Finite filtered chain complex over a field. boundary(y, x) is the coefficient
/// of generator y in the boundary of generator x. The boundary never raises the
/// filtration: a nonzero coefficient needs value(y) <= value(x).
template <Field K>
class FilteredComplex {
public:
    FilteredComplex() = default;
    FilteredComplex(std::vector<Generator> gens, Matrix<K> boundary) : gens_(std::move(gens)), boundary_(std::move(boundary)) {
        validate();
    }

    const std::vector<Generator>& generators() const { return gens_; }
    const Matrix<K>& boundary() const { return boundary_; }
    std::size_t size() const { return gens_.size(); }

    std::size_t index_of(const std::string& id) const {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].id == id) return i;
        throw parameter_error("unknown generator '" + id + "'");
    }

    /// Critical values: the distinct generator values in increasing order.
    std::vector<Rat> critical_values() const {
        std::set<Rat> v;
        for (const Generator& g : gens_) v.insert(g.value);
        return {v.begin(), v.end()};
    }

private:
    void validate() const {
        const std::size_t n = gens_.size();
        if (boundary_.rows() != n || boundary_.cols() != n)
            throw structure_error("boundary matrix is " + boundary_.shape() + " for " + std::to_string(n) + " generators");
        std::set<std::string> ids;
        for (const Generator& g : gens_) {
            if (!g.value.is_finite()) throw structure_error("generator '" + g.id + "' has an infinite value");
            if (!ids.insert(g.id).second) throw structure_error("duplicate generator id '" + g.id + "'");
        }
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                if (boundary_(y, x).is_zero()) continue;
                if (gens_[y].degree != gens_[x].degree - 1)
                    throw structure_error("boundary of '" + gens_[x].id + "' has a term '" + gens_[y].id + "' of the wrong degree");
                if (gens_[x].value < gens_[y].value)
                    throw structure_error("boundary of '" + gens_[x].id + "' raises the filtration");
            }
        if (!(boundary_ * boundary_).is_zero()) throw structure_error("boundary does not square to zero");
    }

    std::vector<Generator> gens_;
    Matrix<K> boundary_;
};

/// Persistence pairing by column reduction in filtration order.
struct Pairing {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (negative-simplex partner y, x) with low(x) = y
    std::vector<std::size_t> essential;                      // unpaired positive generators
};

template <Field K>
Pairing reduce(const FilteredComplex<K>& c) {
    const auto& gens = c.generators();
    const std::size_t n = gens.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (gens[a].value != gens[b].value) return gens[a].value < gens[b].value;
        return gens[a].degree < gens[b].degree;
    });
    // columns in filtration order, rows in filtration order
    std::vector<std::vector<K>> col(n, std::vector<K>(n, K::zero()));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) col[j][i] = c.boundary()(order[i], order[j]);
    auto low = [&](const std::vector<K>& v) -> long {
        for (std::size_t i = n; i-- > 0;)
            if (!v[i].is_zero()) return static_cast<long>(i);
        return -1;
    };
    std::map<long, std::size_t> owner;  // low row -> reduced column
    Pairing out;
    std::vector<bool> negative(n, false), paired(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        long l = low(col[j]);
        while (l >= 0 && owner.count(l)) {
            const auto& other = col[owner[l]];
            K f = col[j][static_cast<std::size_t>(l)] * other[static_cast<std::size_t>(l)].inverse();
            for (std::size_t i = 0; i < n; ++i) col[j][i] -= f * other[i];
            l = low(col[j]);
        }
        if (l >= 0) {
            owner[l] = j;
            negative[j] = true;
            paired[static_cast<std::size_t>(l)] = true;
            out.pairs.push_back({order[static_cast<std::size_t>(l)], order[j]});
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (!negative[j] && !paired[j]) out.essential.push_back(order[j]);
    return out;
}

/// Barcode of c -> H_*(C_{<= c}).
template <Field K>
GradedBarcode sublevel_persistence(const FilteredComplex<K>& c) {
    const auto& gens = c.generators();
    Pairing p = reduce(c);
    GradedBarcode out;
    for (auto [y, x] : p.pairs)
        if (gens[y].value < gens[x].value) out.add(Bar(gens[y].value, gens[x].value, gens[y].degree));
    for (std::size_t y : p.essential) out.add(Bar(gens[y].value, Rat::infinity(), gens[y].degree));
    return out;
}

/// Barcode of c -> H_*(C / C_{<= c}). A finite pair (y, x) gives a relative cycle x
/// in degree deg(x) for c in [value(y), value(x)); an essential class y gives a
/// class in degree deg(y) for c < value(y).
template <Field K>
GradedBarcode quotient_persistence(const FilteredComplex<K>& c) {
    const auto& gens = c.generators();
    Pairing p = reduce(c);
    GradedBarcode out;
    for (auto [y, x] : p.pairs)
        if (gens[y].value < gens[x].value) out.add(Bar(gens[y].value, gens[x].value, gens[x].degree));
    for (std::size_t y : p.essential) out.add(Bar(Rat::neg_infinity(), gens[y].value, gens[y].degree));
    return out;
}

/// dim H_k of the subcomplex spanned by the generators selected by `keep`.
template <Field K, class Pred>
std::size_t homology_dim(const FilteredComplex<K>& c, int k, Pred keep) {
    const auto& gens = c.generators();
    std::vector<std::size_t> in_k, in_km1, in_kp1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!keep(gens[i])) continue;
        if (gens[i].degree == k) in_k.push_back(i);
        if (gens[i].degree == k - 1) in_km1.push_back(i);
        if (gens[i].degree == k + 1) in_kp1.push_back(i);
    }
    auto block = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
        Matrix<K> m(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = c.boundary()(rows[i], cols[j]);
        return m.rank();
    };
    return in_k.size() - block(in_km1, in_k) - block(in_k, in_kp1);
}

/// Direct rank computations of dim H_k(C_{<= c}) and dim H_k(C / C_{<= c}).
template <Field K>
std::size_t sublevel_dim(const FilteredComplex<K>& c, int k, const Rat& t) {
    return homology_dim(c, k, [&](const Generator& g) { return g.value <= t; });
}

template <Field K>
std::size_t quotient_dim(const FilteredComplex<K>& c, int k, const Rat& t) {
    return homology_dim(c, k, [&](const Generator& g) { return t < g.value; });
}

}  // namespace tamarkin::morse
