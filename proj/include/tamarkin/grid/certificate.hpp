#pragma once

#include <string>

#include "tamarkin/grid/morphism.hpp"

namespace tamarkin::grid {

/// Interleaving certificate between grid modules; same conditions as the
/// barcode-level certificate:
///   (1) T_a beta o alpha = tau_{0,a+b}(F),  (2) T_b delta o gamma = tau_{0,a+b}(G).
template <Field K>
struct GridCertificate {
    GridModule<K> f, g;
    Rat a, b;
    GridMorphism<K> alpha, beta, gamma, delta;

    std::string check() const {
        for (const auto* m : {&alpha, &delta})
            if (!(m->source() == f && m->target() == g && m->shift() == a)) return "alpha/delta must map F -> T_a G";
        for (const auto* m : {&beta, &gamma})
            if (!(m->source() == g && m->target() == f && m->shift() == b)) return "beta/gamma must map G -> T_b F";
        for (const auto* m : {&alpha, &beta, &gamma, &delta})
            if (!m->is_natural()) return "a morphism is not natural";
        if (!(compose(beta, alpha) == tau(f, a + b))) return "condition (1) fails";
        if (!(compose(delta, gamma) == tau(g, a + b))) return "condition (2) fails";
        return {};
    }
    bool verify() const { return check().empty(); }
};

}  // namespace tamarkin::grid
