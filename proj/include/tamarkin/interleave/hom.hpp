#pragma once

#include <map>
#include <vector>

#include "tamarkin/core/barcode.hpp"
#include "tamarkin/core/error.hpp"
#include "tamarkin/core/matrix.hpp"
#include "tamarkin/grid/grid_module.hpp"
#include "tamarkin/grid/morphism.hpp"

namespace tamarkin::interleave {

/// Hom_c(k_[b1,d1), k_[b2,d2)) is one-dimensional iff b2 <= b1 + c, d2 <= d1 + c
/// and b1 + c < d2 (and the degrees agree); otherwise it is zero.
inline bool hom_nonzero(const Bar& source, const Bar& target, const Rat& c) {
    if (source.degree != target.degree) return false;
    return target.birth <= source.birth + c && target.death <= source.death + c && source.birth + c < target.death;
}

inline void require_shift(const Rat& c, const char* what) {
    if (!c.is_finite() || c.sign() < 0) throw parameter_error(std::string(what) + " must be finite and >= 0");
}

/// Morphism F -> T_c G between barcodes, as coefficients on bar-pair generators:
/// coef(j, i) multiplies the canonical generator of Hom_c(F_i, G_j), which is the
/// identity wherever both bars are alive. Entries whose Hom space is zero are
/// kept at zero.
template <Field K>
class BarMorphism {
public:
    BarMorphism(GradedBarcode source, GradedBarcode target, Rat shift)
        : source_(std::move(source)), target_(std::move(target)), shift_(std::move(shift)),
          coef_(target_.size(), source_.size()) {
        require_shift(shift_, "morphism shift");
    }

    /// Builds from a coefficient matrix; entries outside the Hom support are
    /// rejected.
    BarMorphism(GradedBarcode source, GradedBarcode target, Rat shift, Matrix<K> coef)
        : BarMorphism(std::move(source), std::move(target), std::move(shift)) {
        if (coef.rows() != coef_.rows() || coef.cols() != coef_.cols())
            throw structure_error("coefficient matrix has shape " + coef.shape() + ", expected " + coef_.shape());
        for (std::size_t j = 0; j < coef.rows(); ++j)
            for (std::size_t i = 0; i < coef.cols(); ++i)
                if (!coef(j, i).is_zero() && !supported(j, i))
                    throw structure_error("coefficient on bar pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                          ") whose shifted Hom space is zero");
        coef_ = std::move(coef);
    }

    const GradedBarcode& source() const { return source_; }
    const GradedBarcode& target() const { return target_; }
    const Rat& shift() const { return shift_; }
    const Matrix<K>& coef() const { return coef_; }

    bool supported(std::size_t j, std::size_t i) const { return hom_nonzero(source_[i], target_[j], shift_); }

    /// Sets coef(j, i); ignored (kept zero) when the Hom space is zero.
    void set(std::size_t j, std::size_t i, const K& value) {
        if (supported(j, i)) coef_(j, i) = value;
    }

    bool is_zero() const { return coef_.is_zero(); }

    friend bool operator==(const BarMorphism& a, const BarMorphism& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.shift_ == b.shift_ && a.coef_ == b.coef_;
    }

    /// Same morphism on the grid presentations produced by grid::to_grid.
    grid::GridMorphism<K> to_grid() const {
        auto f = grid::to_grid<K>(source_);
        auto g = grid::to_grid<K>(target_);
        auto local = [](const GradedBarcode& b) {
            // bar index -> (degree, position among that degree's bars)
            std::map<int, std::vector<std::size_t>> by_degree;
            for (std::size_t i = 0; i < b.size(); ++i) by_degree[b[i].degree].push_back(i);
            return by_degree;
        };
        auto fs = local(source_), gs = local(target_);
        return grid::GridMorphism<K>::sampled(f, g, shift_, [&](int d, const Rat& t) {
            std::vector<std::size_t> fi, gj;
            for (std::size_t i : fs[d])
                if (source_[i].birth <= t && t < source_[i].death) fi.push_back(i);
            for (std::size_t j : gs[d])
                if (target_[j].birth <= t + shift_ && t + shift_ < target_[j].death) gj.push_back(j);
            Matrix<K> m(gj.size(), fi.size());
            for (std::size_t r = 0; r < gj.size(); ++r)
                for (std::size_t c = 0; c < fi.size(); ++c)
                    if (supported(gj[r], fi[c])) m(r, c) = coef_(gj[r], fi[c]);
            return m;
        });
    }

private:
    GradedBarcode source_, target_;
    Rat shift_;
    Matrix<K> coef_;
};

/// T_a beta o alpha for alpha : F -> T_a G and beta : G -> T_b H. A composite of
/// canonical generators is the canonical generator of the composite Hom space
/// when that space is nonzero, and zero otherwise.
template <Field K>
BarMorphism<K> compose(const BarMorphism<K>& beta, const BarMorphism<K>& alpha) {
    if (!(alpha.target() == beta.source()) || alpha.target().bars() != beta.source().bars())
        throw parameter_error("composing morphisms whose barcodes do not match");
    BarMorphism<K> out(alpha.source(), beta.target(), alpha.shift() + beta.shift());
    Matrix<K> prod = beta.coef() * alpha.coef();
    for (std::size_t k = 0; k < prod.rows(); ++k)
        for (std::size_t i = 0; i < prod.cols(); ++i) out.set(k, i, prod(k, i));
    return out;
}

/// tau_{0,c} : F -> T_c F, diagonal with a nonzero entry exactly on bars longer than c.
template <Field K>
BarMorphism<K> tau(const GradedBarcode& f, const Rat& c) {
    require_shift(c, "tau shift");
    BarMorphism<K> out(f, f, c);
    for (std::size_t i = 0; i < f.size(); ++i) out.set(i, i, K::one());
    return out;
}

template <Field K>
BarMorphism<K> identity(const GradedBarcode& f) {
    return tau<K>(f, Rat(0));
}

/// Torsion-detecting test: F is c-torsion iff tau_{0,c}(F) = 0.
template <Field K>
bool is_torsion(const GradedBarcode& f, const Rat& c) {
    return tau<K>(f, c).is_zero();
}

}  // namespace tamarkin::interleave
