#pragma once

#include <set>
#include <string>
#include <vector>

#include "tamarkin/core/novikov.hpp"
#include "tamarkin/energy/novikov_module.hpp"
#include "tamarkin/morse/filtered_complex.hpp"

namespace tamarkin::morse {

/// Filtered complex with Novikov coefficients: boundary(y, x) is the coefficient
/// of y in the boundary of x, and every term T^l y must satisfy
/// l >= value(y) - value(x), so the boundary never raises the filtration.
template <Field K>
class NovikovComplex {
public:
    using Scalar = NovikovScalar<K>;

    NovikovComplex() = default;
    NovikovComplex(std::vector<Generator> gens, std::vector<std::vector<Scalar>> boundary, Rat precision)
        : gens_(std::move(gens)), boundary_(std::move(boundary)), precision_(std::move(precision)) {
        validate();
    }

    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<std::vector<Scalar>>& boundary() const { return boundary_; }
    const Rat& precision() const { return precision_; }

    /// Presentation of C_k / im(d_{k+1}); this is H_k when d_k vanishes on C_k.
    energy::NovikovPresentation<K> homology_presentation(int k) const {
        std::vector<std::size_t> in_k, in_kp1;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].degree == k) in_k.push_back(i);
            if (gens_[i].degree == k + 1) in_kp1.push_back(i);
        }
        for (std::size_t x : in_k)
            for (std::size_t y = 0; y < gens_.size(); ++y)
                if (!boundary_[y][x].is_exact_zero())
                    throw unsupported_error("homology presentation needs d_" + std::to_string(k) + " = 0");
        energy::NovikovPresentation<K> p;
        p.generators = in_k.size();
        p.precision = precision_;
        for (std::size_t x : in_kp1) {
            std::vector<Scalar> row;
            for (std::size_t y : in_k) row.push_back(boundary_[y][x]);
            p.relations.push_back(std::move(row));
        }
        for (std::size_t y : in_k) p.generator_shifts.push_back(gens_[y].value);
        return p;
    }

private:
    void validate() const {
        const std::size_t n = gens_.size();
        if (boundary_.size() != n) throw structure_error("boundary has the wrong number of rows");
        std::set<std::string> ids;
        for (const Generator& g : gens_)
            if (!ids.insert(g.id).second) throw structure_error("duplicate generator id '" + g.id + "'");
        for (const auto& row : boundary_)
            if (row.size() != n) throw structure_error("boundary row has the wrong length");
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                const Scalar& e = boundary_[y][x];
                if (e.is_zero()) continue;
                if (gens_[y].degree != gens_[x].degree - 1)
                    throw structure_error("boundary of '" + gens_[x].id + "' has a term '" + gens_[y].id + "' of the wrong degree");
                if (e.valuation() < gens_[y].value - gens_[x].value)
                    throw structure_error("boundary of '" + gens_[x].id + "' raises the filtration");
            }
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t z = 0; z < n; ++z) {
                Scalar s = Scalar::zero(precision_);
                for (std::size_t y = 0; y < n; ++y) s += boundary_[z][y] * boundary_[y][x];
                if (!s.is_zero()) throw structure_error("boundary does not square to zero");
            }
    }

    std::vector<Generator> gens_;
    std::vector<std::vector<Scalar>> boundary_;
    Rat precision_ = default_novikov_precision();
};

/// Two-critical-point model of a closed one-form on the circle whose graph
/// encloses areas A+ and A- with the zero section.
///
/// The Novikov complex has q (index 0) and p (index 1) with
/// d p = T^{A+} q - T^{A-} q, one term per flow line. The unrolled model is one
/// fundamental domain of the cover: q0 at 0, p at A+, q1 = (deck image of q0) at
/// A+ - A-, with d p = q0 - q1.
template <Field K>
struct CircleOneForm {
    NovikovComplex<K> novikov;
    FilteredComplex<K> unrolled;
    Rat expected_energy;
};

template <Field K>
CircleOneForm<K> circle_one_form(const Rat& a_plus, const Rat& a_minus, const Rat& precision = default_novikov_precision()) {
    if (!a_plus.is_finite() || !a_minus.is_finite() || a_plus.sign() <= 0 || a_minus.sign() <= 0)
        throw parameter_error("areas must be positive and finite");
    if (a_plus == a_minus)
        throw parameter_error("equal areas give an exact one-form; the two flow lines cancel and the module is free");
    using S = NovikovScalar<K>;
    std::vector<Generator> gens{{"q", 0, Rat(0)}, {"p", 1, Rat(0)}};
    std::vector<std::vector<S>> d(2, std::vector<S>(2, S::zero(precision)));
    d[0][1] = S::monomial(K::one(), a_plus, precision) - S::monomial(K::one(), a_minus, precision);
    CircleOneForm<K> out;
    out.novikov = NovikovComplex<K>(gens, d, precision);
    std::vector<Generator> ug{{"q0", 0, Rat(0)}, {"q1", 0, a_plus - a_minus}, {"p", 1, a_plus}};
    Matrix<K> ud(3, 3);
    ud(0, 2) = K::one();
    ud(1, 2) = -K::one();
    out.unrolled = FilteredComplex<K>(ug, ud);
    out.expected_energy = min(a_plus, a_minus);
    return out;
}

/// Longest finite bar.
inline Rat finite_torsion_threshold(const GradedBarcode& b) {
    Rat best(0);
    for (const Bar& x : b)
        if (x.birth.is_finite() && x.death.is_finite()) best = max(best, x.death - x.birth);
    return best;
}

/// Energy read off the Novikov module H_0 by torsion_exponent.
template <Field K>
Rat circle_energy_novikov(const CircleOneForm<K>& c) {
    auto t = energy::torsion_exponent(c.novikov.homology_presentation(0));
    return t.value;
}

/// Energy read off the quotient persistence of the unrolled model.
template <Field K>
Rat circle_energy_quotient(const CircleOneForm<K>& c) {
    return finite_torsion_threshold(quotient_persistence(c.unrolled));
}

}  // namespace tamarkin::morse
