#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tamarkin/core/field.hpp"
#include "tamarkin/core/text.hpp"
#include "tamarkin/morse/filtered_complex.hpp"
#include "tamarkin/morse/morse_graph.hpp"
#include "tamarkin/morse/novikov_complex.hpp"

namespace tamarkin::morse {

/// Contents of a "filtered v1" file before the coefficient field is fixed.
///
///   filtered v1
///   field f2|f3|q                    or   novikov precision=<rat> [field=<tag>]
///   gen id=<str> degree=<int> value=<rat>
///   bnd <id> = <coef>*<id> + ...     (Novikov terms: <coef>*T^<rat>*<id>)
struct FilteredDocument {
    struct Term {
        std::size_t target;  // generator whose coefficient this is
        std::size_t source;  // generator whose boundary contains it
        Rat coef;
        Rat exponent;
    };
    FieldTag field = FieldTag::f2;
    bool novikov = false;
    Rat precision = default_novikov_precision();
    std::vector<Generator> generators;
    std::vector<Term> terms;

    template <Field K>
    FilteredComplex<K> field_complex() const {
        if (novikov) throw parameter_error("document has Novikov coefficients");
        Matrix<K> d(generators.size(), generators.size());
        for (const Term& t : terms) d(t.target, t.source) += K::from_rat(t.coef);
        return FilteredComplex<K>(generators, d);
    }

    template <Field K>
    NovikovComplex<K> novikov_complex() const {
        using S = NovikovScalar<K>;
        std::vector<std::vector<S>> d(generators.size(), std::vector<S>(generators.size(), S::zero(precision)));
        for (const Term& t : terms) d[t.target][t.source] += S::monomial(K::from_rat(t.coef), t.exponent, precision);
        return NovikovComplex<K>(generators, d, precision);
    }
};

inline FilteredDocument parse_filtered(std::string_view doc, const std::string& source = "<filtered>") {
    text::Reader in(source, doc);
    in.expect_header("filtered");
    FilteredDocument out;
    if (in.done()) in.fail(in.last_line(), 1, "missing 'field' or 'novikov' line");
    {
        const auto& line = in.next();
        const std::string& kw = line.tokens[0].text;
        if (kw == "field") {
            if (line.tokens.size() != 2) in.fail(line, line.tokens[0], "expected 'field f2|f3|q'");
            auto tag = parse_field_tag(line.tokens[1].text);
            if (!tag) in.fail(line, line.tokens[1], "unknown field '" + line.tokens[1].text + "'");
            out.field = *tag;
        } else if (kw == "novikov") {
            out.novikov = true;
            if (line.tokens.size() < 2 || line.tokens.size() > 3) in.fail(line, line.tokens[0], "expected 'novikov precision=<rat> [field=<tag>]'");
            out.precision = in.rat(line, line.tokens[1], in.value_of(line, line.tokens[1], "precision"));
            if (!out.precision.is_finite() || out.precision.sign() <= 0) in.fail(line, line.tokens[1], "precision must be positive and finite");
            if (line.tokens.size() == 3) {
                auto tag = parse_field_tag(in.value_of(line, line.tokens[2], "field"));
                if (!tag) in.fail(line, line.tokens[2], "unknown field");
                out.field = *tag;
            }
        } else {
            in.fail(line, line.tokens[0], "expected 'field' or 'novikov'");
        }
    }
    std::map<std::string, std::size_t> ids;
    std::vector<const text::Line*> bnd;
    while (!in.done()) {
        const auto& line = in.next();
        const std::string& kw = line.tokens[0].text;
        if (kw == "gen") {
            if (line.tokens.size() != 4) in.fail(line, line.tokens[0], "expected 'gen id=<str> degree=<int> value=<rat>'");
            Generator g;
            g.id = std::string(in.value_of(line, line.tokens[1], "id"));
            g.degree = static_cast<int>(in.integer(line, line.tokens[2], in.value_of(line, line.tokens[2], "degree")));
            g.value = in.rat(line, line.tokens[3], in.value_of(line, line.tokens[3], "value"));
            if (!g.value.is_finite()) in.fail(line, line.tokens[3], "generator values must be finite");
            if (!ids.emplace(g.id, out.generators.size()).second) in.fail(line, line.tokens[1], "duplicate generator '" + g.id + "'");
            out.generators.push_back(g);
        } else if (kw == "bnd") {
            bnd.push_back(&line);
        } else {
            in.fail(line, line.tokens[0], "expected 'gen' or 'bnd', got '" + kw + "'");
        }
    }
    auto lookup = [&](const text::Line& line, const text::Token& tok, const std::string& id) {
        auto it = ids.find(id);
        if (it == ids.end()) in.fail(line, tok, "unknown generator '" + id + "'");
        return it->second;
    };
    for (const text::Line* l : bnd) {
        const auto& line = *l;
        if (line.tokens.size() < 3 || line.tokens[2].text != "=") in.fail(line, line.tokens[0], "expected 'bnd <id> = <terms>'");
        std::size_t src = lookup(line, line.tokens[1], line.tokens[1].text);
        for (std::size_t k = 3; k < line.tokens.size(); ++k) {
            const auto& tok = line.tokens[k];
            if ((k - 3) % 2 == 1) {
                if (tok.text != "+") in.fail(line, tok, "expected '+' between terms");
                continue;
            }
            std::vector<std::string> parts;
            std::size_t start = 0;
            for (std::size_t i = 0; i <= tok.text.size(); ++i)
                if (i == tok.text.size() || tok.text[i] == '*') {
                    parts.push_back(tok.text.substr(start, i - start));
                    start = i + 1;
                }
            FilteredDocument::Term term{0, src, Rat(1), Rat(0)};
            if (parts.size() == 2 && !out.novikov) {
                term.coef = in.rat(line, tok, parts[0]);
            } else if (parts.size() == 3 && out.novikov && parts[1].rfind("T^", 0) == 0) {
                term.coef = in.rat(line, tok, parts[0]);
                term.exponent = in.rat(line, tok, std::string_view(parts[1]).substr(2));
                if (!term.exponent.is_finite() || term.exponent.sign() < 0) in.fail(line, tok, "exponents must be finite and >= 0");
            } else {
                in.fail(line, tok, out.novikov ? "expected '<coef>*T^<rat>*<id>'" : "expected '<coef>*<id>'");
            }
            if (!term.coef.is_finite()) in.fail(line, tok, "coefficient must be finite");
            term.target = lookup(line, tok, parts.back());
            out.terms.push_back(term);
        }
        if (line.tokens.size() % 2 == 1) in.fail(line, line.tokens.back(), "dangling '+' or missing terms");
    }
    return out;
}

template <Field K>
std::string write_filtered(const FilteredComplex<K>& c) {
    std::string out = "filtered v1\nfield " + to_string(K::tag()) + "\n";
    const auto& gens = c.generators();
    for (const Generator& g : gens)
        out += "gen id=" + g.id + " degree=" + std::to_string(g.degree) + " value=" + g.value.to_string() + "\n";
    for (std::size_t x = 0; x < gens.size(); ++x) {
        std::string terms;
        for (std::size_t y = 0; y < gens.size(); ++y) {
            if (c.boundary()(y, x).is_zero()) continue;
            if (!terms.empty()) terms += " + ";
            terms += c.boundary()(y, x).to_string() + "*" + gens[y].id;
        }
        if (!terms.empty()) out += "bnd " + gens[x].id + " = " + terms + "\n";
    }
    return out;
}

template <Field K>
std::string write_novikov_complex(const NovikovComplex<K>& c) {
    std::string out = "filtered v1\nnovikov precision=" + c.precision().to_string() + " field=" + to_string(K::tag()) + "\n";
    const auto& gens = c.generators();
    for (const Generator& g : gens)
        out += "gen id=" + g.id + " degree=" + std::to_string(g.degree) + " value=" + g.value.to_string() + "\n";
    for (std::size_t x = 0; x < gens.size(); ++x) {
        std::string terms;
        for (std::size_t y = 0; y < gens.size(); ++y)
            for (const auto& t : c.boundary()[y][x].terms()) {
                if (!terms.empty()) terms += " + ";
                terms += t.coef.to_string() + "*T^" + t.exponent.to_string() + "*" + gens[y].id;
            }
        if (!terms.empty()) out += "bnd " + gens[x].id + " = " + terms + "\n";
    }
    return out;
}

/// "morsegraph v1": `point id=<str> index=<int> value=<rat>` and `connect <p> <q>`
/// lines, a connection running from p (index k+1) to q (index k).
inline MorseGraph parse_morse_graph(std::string_view doc, const std::string& source = "<morsegraph>") {
    text::Reader in(source, doc);
    in.expect_header("morsegraph");
    std::vector<CriticalPoint> points;
    std::vector<std::pair<std::string, std::string>> connections;
    std::map<std::string, int> index;
    std::vector<const text::Line*> pending;
    while (!in.done()) {
        const auto& line = in.next();
        const std::string& kw = line.tokens[0].text;
        if (kw == "point") {
            if (line.tokens.size() != 4) in.fail(line, line.tokens[0], "expected 'point id=<str> index=<int> value=<rat>'");
            CriticalPoint p;
            p.id = std::string(in.value_of(line, line.tokens[1], "id"));
            p.index = static_cast<int>(in.integer(line, line.tokens[2], in.value_of(line, line.tokens[2], "index")));
            p.value = in.rat(line, line.tokens[3], in.value_of(line, line.tokens[3], "value"));
            if (!p.value.is_finite()) in.fail(line, line.tokens[3], "critical values must be finite");
            if (!index.emplace(p.id, p.index).second) in.fail(line, line.tokens[1], "duplicate point '" + p.id + "'");
            points.push_back(p);
        } else if (kw == "connect") {
            if (line.tokens.size() != 3) in.fail(line, line.tokens[0], "expected 'connect <p> <q>'");
            pending.push_back(&line);
        } else {
            in.fail(line, line.tokens[0], "expected 'point' or 'connect', got '" + kw + "'");
        }
    }
    for (const text::Line* l : pending) {
        const auto& p = l->tokens[1];
        const auto& q = l->tokens[2];
        if (!index.count(p.text)) in.fail(*l, p, "unknown point '" + p.text + "'");
        if (!index.count(q.text)) in.fail(*l, q, "unknown point '" + q.text + "'");
        if (index[p.text] != index[q.text] + 1) in.fail(*l, p, "connection needs index difference exactly 1");
        connections.emplace_back(p.text, q.text);
    }
    return MorseGraph(points, connections);
}

inline std::string write_morse_graph(const MorseGraph& g) {
    std::string out = "morsegraph v1\n";
    for (const CriticalPoint& p : g.points())
        out += "point id=" + p.id + " index=" + std::to_string(p.index) + " value=" + p.value.to_string() + "\n";
    for (const auto& [p, q] : g.connections()) out += "connect " + p + " " + q + "\n";
    return out;
}

}  // namespace tamarkin::morse
