#pragma once

#include <array>
#include <string>
#include <string_view>

#include "tamarkin/core/field.hpp"
#include "tamarkin/core/text.hpp"
#include "tamarkin/interleave/hom.hpp"

namespace tamarkin::interleave {

/// Four morphisms alpha, delta : F -> T_a G and beta, gamma : G -> T_b F with
///   (1) T_a beta o alpha = tau_{0,a+b}(F),
///   (2) T_b delta o gamma = tau_{0,a+b}(G).
template <Field K>
struct InterleavingCertificate {
    GradedBarcode f, g;
    Rat a, b;
    BarMorphism<K> alpha, beta, gamma, delta;

    /// Empty string when both conditions hold exactly, else what failed.
    std::string check() const {
        if (!(alpha.source().bars() == f.bars() && alpha.target().bars() == g.bars() && delta.source().bars() == f.bars() &&
              delta.target().bars() == g.bars() && beta.source().bars() == g.bars() && beta.target().bars() == f.bars() &&
              gamma.source().bars() == g.bars() && gamma.target().bars() == f.bars()))
            return "morphisms do not connect F and G";
        if (alpha.shift() != a || delta.shift() != a || beta.shift() != b || gamma.shift() != b)
            return "morphism shifts do not match (a, b)";
        if (!(compose(beta, alpha) == tau<K>(f, a + b))) return "condition (1) fails: T_a beta o alpha != tau_{0,a+b}(F)";
        if (!(compose(delta, gamma) == tau<K>(g, a + b))) return "condition (2) fails: T_b delta o gamma != tau_{0,a+b}(G)";
        return {};
    }
    bool verify() const { return check().empty(); }

    void require_verified(const std::string& what) const {
        std::string why = check();
        if (!why.empty()) throw verification_error(what + ": " + why);
    }
};

template <Field K>
InterleavingCertificate<K> identity_certificate(const GradedBarcode& f) {
    auto id = identity<K>(f);
    return {f, f, Rat(0), Rat(0), id, id, id, id};
}

/// Text form "cert v1":
///
///   cert v1
///   field f2
///   shifts a=1 b=1
///   morphism alpha
///   0 0 1            (source bar index, target bar index, coefficient)
///   morphism beta
///   ...
///
/// Bar indices refer to the order of bars in F and G as given to the parser.
template <Field K>
std::string write_certificate(const InterleavingCertificate<K>& c) {
    std::string out = "cert v1\nfield " + to_string(K::tag()) + "\nshifts a=" + c.a.to_string() + " b=" + c.b.to_string() + "\n";
    const std::array<std::pair<const char*, const BarMorphism<K>*>, 4> blocks{
        {{"alpha", &c.alpha}, {"beta", &c.beta}, {"gamma", &c.gamma}, {"delta", &c.delta}}};
    for (const auto& [name, m] : blocks) {
        out += std::string("morphism ") + name + "\n";
        for (std::size_t i = 0; i < m->coef().cols(); ++i)
            for (std::size_t j = 0; j < m->coef().rows(); ++j)
                if (!m->coef()(j, i).is_zero())
                    out += std::to_string(i) + " " + std::to_string(j) + " " + m->coef()(j, i).to_string() + "\n";
    }
    return out;
}

template <Field K>
InterleavingCertificate<K> parse_certificate(std::string_view doc, const GradedBarcode& f, const GradedBarcode& g,
                                             const std::string& source = "<cert>") {
    text::Reader in(source, doc);
    in.expect_header("cert");
    if (in.done()) in.fail(in.last_line(), 1, "missing 'field' line");
    {
        const auto& line = in.next();
        if (line.tokens.size() != 2 || line.tokens[0].text != "field") in.fail(line, line.tokens[0], "expected 'field <tag>'");
        auto tag = parse_field_tag(line.tokens[1].text);
        if (!tag || *tag != K::tag()) in.fail(line, line.tokens[1], "field must be " + to_string(K::tag()));
    }
    if (in.done()) in.fail(in.last_line(), 1, "missing 'shifts' line");
    const auto& sl = in.next();
    if (sl.tokens.size() != 3 || sl.tokens[0].text != "shifts") in.fail(sl, sl.tokens[0], "expected 'shifts a=<rat> b=<rat>'");
    Rat a = in.rat(sl, sl.tokens[1], in.value_of(sl, sl.tokens[1], "a"));
    Rat b = in.rat(sl, sl.tokens[2], in.value_of(sl, sl.tokens[2], "b"));
    if (!a.is_finite() || a.sign() < 0) in.fail(sl, sl.tokens[1], "shift a must be finite and >= 0");
    if (!b.is_finite() || b.sign() < 0) in.fail(sl, sl.tokens[2], "shift b must be finite and >= 0");

    std::map<std::string, BarMorphism<K>> blocks;
    const std::map<std::string, bool> forward{{"alpha", true}, {"beta", false}, {"gamma", false}, {"delta", true}};
    BarMorphism<K>* current = nullptr;
    while (!in.done()) {
        const auto& line = in.next();
        if (line.tokens[0].text == "morphism") {
            if (line.tokens.size() != 2 || !forward.count(line.tokens[1].text))
                in.fail(line, line.tokens[0], "expected 'morphism alpha|beta|gamma|delta'");
            const std::string& name = line.tokens[1].text;
            if (blocks.count(name)) in.fail(line, line.tokens[1], "duplicate block '" + name + "'");
            bool fwd = forward.at(name);
            current = &blocks.emplace(name, BarMorphism<K>(fwd ? f : g, fwd ? g : f, fwd ? a : b)).first->second;
            continue;
        }
        if (!current) in.fail(line, line.tokens[0], "entry before any 'morphism' line");
        if (line.tokens.size() != 3) in.fail(line, line.tokens[0], "expected '<source-index> <target-index> <coefficient>'");
        long i = in.integer(line, line.tokens[0], line.tokens[0].text);
        long j = in.integer(line, line.tokens[1], line.tokens[1].text);
        if (i < 0 || static_cast<std::size_t>(i) >= current->source().size()) in.fail(line, line.tokens[0], "source index out of range");
        if (j < 0 || static_cast<std::size_t>(j) >= current->target().size()) in.fail(line, line.tokens[1], "target index out of range");
        auto r = Rat::parse(line.tokens[2].text);
        if (!r || !r->is_finite()) in.fail(line, line.tokens[2], "malformed coefficient");
        if (!current->supported(static_cast<std::size_t>(j), static_cast<std::size_t>(i)))
            in.fail(line, line.tokens[0], "bar pair has zero shifted Hom space");
        current->set(static_cast<std::size_t>(j), static_cast<std::size_t>(i), K::from_rat(*r));
    }
    for (const auto& [name, fwd] : forward)
        if (!blocks.count(name)) in.fail(in.last_line(), 1, "missing 'morphism " + name + "' block");
    return {f, g, a, b, blocks.at("alpha"), blocks.at("beta"), blocks.at("gamma"), blocks.at("delta")};
}

}  // namespace tamarkin::interleave
