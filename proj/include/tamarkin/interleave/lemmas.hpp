#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tamarkin/energy/hom_persistence.hpp"
#include "tamarkin/grid/certificate.hpp"
#include "tamarkin/interleave/certificate.hpp"
#include "tamarkin/interleave/decide.hpp"

namespace tamarkin::interleave {

/// (F0,F1) (a0,b0)-interleaved and (F1,F2) (a1,b1)-interleaved give
/// (F0,F2) (a0+a1, b0+b1)-interleaved, by composing the morphisms.
template <Field K>
InterleavingCertificate<K> compose_certificates(const InterleavingCertificate<K>& c01, const InterleavingCertificate<K>& c12) {
    c01.require_verified("first certificate");
    c12.require_verified("second certificate");
    if (c01.g.bars() != c12.f.bars()) throw parameter_error("certificates do not share the middle barcode");
    InterleavingCertificate<K> out{c01.f,
                                   c12.g,
                                   c01.a + c12.a,
                                   c01.b + c12.b,
                                   compose(c12.alpha, c01.alpha),
                                   compose(c01.beta, c12.beta),
                                   compose(c01.gamma, c12.gamma),
                                   compose(c12.delta, c01.delta)};
    out.require_verified("compose_certificates");
    return out;
}

/// Certificate for larger shifts a' >= a, b' >= b, by composing with tau.
template <Field K>
InterleavingCertificate<K> weaken(const InterleavingCertificate<K>& c, const Rat& a2, const Rat& b2) {
    c.require_verified("weaken input");
    if (a2 < c.a || b2 < c.b) throw parameter_error("weaken needs a' >= a and b' >= b");
    InterleavingCertificate<K> out{c.f,
                                   c.g,
                                   a2,
                                   b2,
                                   compose(tau<K>(c.g, a2 - c.a), c.alpha),
                                   compose(tau<K>(c.f, b2 - c.b), c.beta),
                                   compose(tau<K>(c.f, b2 - c.b), c.gamma),
                                   compose(tau<K>(c.g, a2 - c.a), c.delta)};
    out.require_verified("weaken");
    return out;
}

/// Interleaving of Hom persistence modules: from (F0,F1) (a_F,b_F) and (G0,G1)
/// (a_G,b_G), the pair (HomMod(F0,G0), HomMod(F1,G1)) at shifts
/// (b_F + a_G, a_F + b_G). The morphisms are found by the factorization search
/// on the Hom persistence barcodes at exactly those shifts and re-verified.
template <Field K>
InterleavingCertificate<K> hom_certificate(const InterleavingCertificate<K>& cf, const InterleavingCertificate<K>& cg,
                                           const SearchBounds& bounds = {}) {
    cf.require_verified("F certificate");
    cg.require_verified("G certificate");
    GradedBarcode h0 = energy::hom_persistence(cf.f, cg.f);
    GradedBarcode h1 = energy::hom_persistence(cf.g, cg.g);
    Rat a = cf.b + cg.a, b = cf.a + cg.b;
    auto d = is_interleaved<K>(h0, h1, a, b, bounds);
    if (d.decision != Decision::yes)
        throw verification_error(std::string("Hom persistence modules not certified at the lemma's shifts (decision: ") +
                                 to_string(d.decision) + ")");
    return *d.certificate;
}

/// Step certificate for a pure translation: G = T_u F (bars moved by -u) when
/// u >= 0 gives shifts (0, u); u < 0 gives G = F moved by |u| and shifts (|u|, 0).
/// Returns G together with the certificate for (F, G).
template <Field K>
std::pair<GradedBarcode, InterleavingCertificate<K>> pure_shift_certificate(const GradedBarcode& f, const Rat& u) {
    if (!u.is_finite()) throw parameter_error("shift must be finite");
    GradedBarcode g = translate(f, -u);
    Rat a = u.sign() < 0 ? -u : Rat(0), b = u.sign() > 0 ? u : Rat(0);
    BarMorphism<K> fwd(f, g, a), back(g, f, b);
    for (std::size_t i = 0; i < f.size(); ++i) {
        fwd.set(i, i, K::one());
        back.set(i, i, K::one());
    }
    InterleavingCertificate<K> c{f, g, a, b, fwd, back, back, fwd};
    c.require_verified("pure_shift_certificate");
    return {g, c};
}

/// Chains step certificates along a family F_{s_0}, ..., F_{s_n}: the total shifts
/// are the sums of the step shifts (Riemann sums of the step bounds).
template <Field K>
InterleavingCertificate<K> homotopy_compose(const std::vector<InterleavingCertificate<K>>& steps) {
    if (steps.empty()) throw parameter_error("homotopy_compose needs at least one step");
    for (std::size_t k = 0; k < steps.size(); ++k)
        if (!steps[k].verify()) throw verification_error("step " + std::to_string(k) + " does not verify: " + steps[k].check());
    InterleavingCertificate<K> total = steps.front();
    for (std::size_t k = 1; k < steps.size(); ++k) total = compose_certificates(total, steps[k]);
    return total;
}

/// Same, deciding each step (F_k, F_{k+1}) at the supplied bounds (a_k, b_k).
template <Field K>
InterleavingCertificate<K> homotopy_compose(const std::vector<GradedBarcode>& family, const std::vector<Rat>& a_bounds,
                                            const std::vector<Rat>& b_bounds, const SearchBounds& bounds = {}) {
    if (family.size() < 2 || a_bounds.size() + 1 != family.size() || b_bounds.size() + 1 != family.size())
        throw parameter_error("homotopy_compose needs n+1 barcodes and n step bounds");
    std::vector<InterleavingCertificate<K>> steps;
    for (std::size_t k = 0; k + 1 < family.size(); ++k) {
        auto d = is_interleaved<K>(family[k], family[k + 1], a_bounds[k], b_bounds[k], bounds);
        if (d.decision != Decision::yes)
            throw verification_error("step " + std::to_string(k) + " is not interleaved at its bounds (" + to_string(d.decision) + ")");
        steps.push_back(*d.certificate);
    }
    return homotopy_compose(steps);
}

/// Pure-shift family: step k translates by u_k = h_k * ds. Returns the family and
/// the composed certificate for (F_{s_0}, F_{s_n}).
template <Field K>
std::pair<std::vector<GradedBarcode>, InterleavingCertificate<K>> shift_family(const GradedBarcode& f0,
                                                                              const std::vector<Rat>& h, const Rat& ds) {
    std::vector<GradedBarcode> family{f0};
    std::vector<InterleavingCertificate<K>> steps;
    for (const Rat& hk : h) {
        auto [next, cert] = pure_shift_certificate<K>(family.back(), hk * ds);
        family.push_back(next);
        steps.push_back(std::move(cert));
    }
    if (steps.empty()) return {family, identity_certificate<K>(f0)};
    return {family, homotopy_compose(steps)};
}

/// Lifting certificate for a short exact sequence 0 -> F -> G -> H -> 0 of grid
/// modules with F c-torsion: (G, H) is (0, c)-interleaved with
/// alpha = delta = pi and beta = gamma the descent of tau_{0,c}(G) through pi
/// (well defined because tau_{0,c}(G) kills the image of F).
template <Field K>
grid::GridCertificate<K> ses_certificate(const grid::GridMorphism<K>& iota, const grid::GridMorphism<K>& pi, const Rat& c) {
    require_shift(c, "ses shift");
    if (iota.shift().sign() != 0 || pi.shift().sign() != 0) throw structure_error("sequence maps must have shift 0");
    if (!(iota.target() == pi.source())) throw structure_error("sequence maps do not compose");
    if (!iota.is_natural() || !pi.is_natural()) throw structure_error("sequence maps are not natural");
    const auto& f = iota.source();
    const auto& g = iota.target();
    const auto& h = pi.target();
    std::set<Rat> pts(iota.points().begin(), iota.points().end());
    pts.insert(pi.points().begin(), pi.points().end());
    for (int d : grid::union_degrees(g, h))
        for (const Rat& t : pts) {
            Matrix<K> i_t = iota.at(d, t), p_t = pi.at(d, t);
            std::size_t df = f.dim(d, t), dg = g.dim(d, t), dh = h.dim(d, t);
            if (dg != df + dh || i_t.rank() != df || p_t.rank() != dh || !(p_t * i_t).is_zero())
                throw structure_error("sequence is not exact at t = " + t.to_string() + " in degree " + std::to_string(d));
        }
    if (!grid::tau(f, c).is_zero()) throw parameter_error("F is not " + c.to_string() + "-torsion");

    auto beta = grid::GridMorphism<K>::sampled(h, g, c, [&](int d, const Rat& t) {
        Matrix<K> p_t = pi.at(d, t);
        Matrix<K> tau_t = g.structure(d, t, t + c);
        Matrix<K> x(tau_t.rows(), p_t.rows());
        Matrix<K> pt = p_t.transpose();
        for (std::size_t r = 0; r < tau_t.rows(); ++r) {
            std::vector<K> rhs(tau_t.cols());
            for (std::size_t j = 0; j < tau_t.cols(); ++j) rhs[j] = tau_t(r, j);
            std::optional<std::vector<K>> sol;
            if (pt.cols() == 0) {
                bool zero = true;
                for (const K& v : rhs) zero = zero && v.is_zero();
                if (zero) sol = std::vector<K>{};
            } else {
                sol = pt.solve(rhs);
            }
            if (!sol) throw verification_error("tau_{0,c}(G) does not descend through the quotient map");
            for (std::size_t j = 0; j < x.cols(); ++j) x(r, j) = (*sol)[j];
        }
        return x;
    });
    grid::GridCertificate<K> out{g, h, Rat(0), c, pi, beta, beta, pi};
    std::string why = out.check();
    if (!why.empty()) throw verification_error("ses_certificate: " + why);
    return out;
}

}  // namespace tamarkin::interleave
