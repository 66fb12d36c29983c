#pragma once

#include <string>
#include <string_view>

#include "tamarkin/core/field.hpp"
#include "tamarkin/core/text.hpp"
#include "tamarkin/grid/grid_module.hpp"

namespace tamarkin::grid {

/// Text form "gridmod v1":
///
///   gridmod v1
///   field f2
///   grid 0 1 2
///   left -inf          (optional: module continues below the first point)
///   right 5            (optional: death of generators alive at the end; default inf)
///   degree 0           (optional, default 0; starts a block)
///   dims 1 1 0
///   map 1 -> 2
///   1
///   map 2 -> 3
///
/// Matrix entries follow each `map` line in row-major order, over any number of lines.
template <Field K>
std::string write_gridmod(const GridModule<K>& m) {
    std::string out = "gridmod v1\nfield " + to_string(K::tag()) + "\ngrid";
    for (const Rat& t : m.grid()) out += " " + t.to_string();
    out += "\n";
    if (m.left_infinite()) out += "left -inf\n";
    if (m.right_death().is_finite()) out += "right " + m.right_death().to_string() + "\n";
    for (const auto& [deg, s] : m.degrees()) {
        out += "degree " + std::to_string(deg) + "\ndims";
        for (std::size_t d : s.dims) out += " " + std::to_string(d);
        out += "\n";
        for (std::size_t i = 0; i < s.maps.size(); ++i) {
            out += "map " + std::to_string(i + 1) + " -> " + std::to_string(i + 2) + "\n";
            const auto& a = s.maps[i];
            for (std::size_t r = 0; r < a.rows(); ++r) {
                for (std::size_t c = 0; c < a.cols(); ++c) out += (c ? " " : "") + a(r, c).to_string();
                if (a.cols()) out += "\n";
            }
        }
    }
    return out;
}

/// Field tag declared by a gridmod document (second line).
inline FieldTag gridmod_field(std::string_view doc, const std::string& source = "<gridmod>") {
    text::Reader in(source, doc);
    in.expect_header("gridmod");
    if (in.done()) in.fail(in.last_line(), 1, "missing 'field' line");
    const auto& line = in.next();
    if (line.tokens.size() != 2 || line.tokens[0].text != "field") in.fail(line, line.tokens[0], "expected 'field <tag>'");
    auto tag = parse_field_tag(line.tokens[1].text);
    if (!tag) in.fail(line, line.tokens[1], "unknown field '" + line.tokens[1].text + "'");
    return *tag;
}

template <Field K>
GridModule<K> parse_gridmod(std::string_view doc, const std::string& source = "<gridmod>") {
    if (gridmod_field(doc, source) != K::tag())
        throw ParseError(source, 2, 7, "field does not match the requested field " + to_string(K::tag()));
    text::Reader in(source, doc);
    in.next();
    in.next();
    if (in.done()) in.fail(in.last_line(), 1, "missing 'grid' line");
    const auto& gl = in.next();
    if (gl.tokens[0].text != "grid") in.fail(gl, gl.tokens[0], "expected 'grid t1 t2 ...'");
    std::vector<Rat> grid;
    for (std::size_t i = 1; i < gl.tokens.size(); ++i) {
        Rat t = in.rat(gl, gl.tokens[i]);
        if (!t.is_finite()) in.fail(gl, gl.tokens[i], "grid points must be finite");
        if (!grid.empty() && !(grid.back() < t)) in.fail(gl, gl.tokens[i], "grid must be strictly increasing");
        grid.push_back(t);
    }
    bool left = false;
    Rat right = Rat::infinity();
    std::map<int, Strand<K>> degrees;
    int degree = 0;
    auto is_keyword = [](const std::string& w) {
        return w == "left" || w == "right" || w == "degree" || w == "dims" || w == "map";
    };
    while (!in.done()) {
        const auto& line = in.next();
        const std::string& kw = line.tokens[0].text;
        if (kw == "left") {
            if (line.tokens.size() != 2 || line.tokens[1].text != "-inf") in.fail(line, line.tokens[0], "expected 'left -inf'");
            left = true;
        } else if (kw == "right") {
            if (line.tokens.size() != 2) in.fail(line, line.tokens[0], "expected 'right <rat|inf>'");
            right = in.rat(line, line.tokens[1]);
            if (!grid.empty() && !(grid.back() < right)) in.fail(line, line.tokens[1], "right end must exceed the last grid point");
        } else if (kw == "degree") {
            if (line.tokens.size() != 2) in.fail(line, line.tokens[0], "expected 'degree <int>'");
            degree = static_cast<int>(in.integer(line, line.tokens[1], line.tokens[1].text));
        } else if (kw == "dims") {
            if (degrees.count(degree)) in.fail(line, line.tokens[0], "duplicate block for degree " + std::to_string(degree));
            if (line.tokens.size() != grid.size() + 1)
                in.fail(line, line.tokens[0], "expected " + std::to_string(grid.size()) + " dims");
            Strand<K> s;
            for (std::size_t i = 1; i < line.tokens.size(); ++i) {
                long d = in.integer(line, line.tokens[i], line.tokens[i].text);
                if (d < 0) in.fail(line, line.tokens[i], "negative dimension");
                s.dims.push_back(static_cast<std::size_t>(d));
            }
            degrees.emplace(degree, std::move(s));
        } else if (kw == "map") {
            auto it = degrees.find(degree);
            if (it == degrees.end()) in.fail(line, line.tokens[0], "'map' before 'dims'");
            Strand<K>& s = it->second;
            std::size_t i = s.maps.size() + 1;
            if (line.tokens.size() != 4 || line.tokens[2].text != "->" ||
                in.integer(line, line.tokens[1], line.tokens[1].text) != static_cast<long>(i) ||
                in.integer(line, line.tokens[3], line.tokens[3].text) != static_cast<long>(i + 1))
                in.fail(line, line.tokens[0], "expected 'map " + std::to_string(i) + " -> " + std::to_string(i + 1) + "'");
            if (i >= grid.size()) in.fail(line, line.tokens[0], "more maps than consecutive grid pairs");
            Matrix<K> a(s.dims[i], s.dims[i - 1]);
            std::size_t need = a.rows() * a.cols(), got = 0;
            while (got < need) {
                if (in.done() || is_keyword(in.peek().tokens[0].text))
                    in.fail(line, line.tokens[0], "map " + std::to_string(i) + " -> " + std::to_string(i + 1) + " needs " +
                                                      std::to_string(need) + " entries, found " + std::to_string(got));
                const auto& el = in.next();
                for (const auto& tok : el.tokens) {
                    if (got == need) in.fail(el, tok, "too many matrix entries");
                    auto r = Rat::parse(tok.text);
                    if (!r || !r->is_finite()) in.fail(el, tok, "malformed entry '" + tok.text + "'");
                    try {
                        a(got / a.cols(), got % a.cols()) = K::from_rat(*r);
                    } catch (const Error& e) {
                        in.fail(el, tok, e.what());
                    }
                    ++got;
                }
            }
            s.maps.push_back(std::move(a));
        } else {
            in.fail(line, line.tokens[0], "unexpected '" + kw + "'");
        }
    }
    for (auto& [deg, s] : degrees)
        if (s.maps.size() + 1 != std::max<std::size_t>(grid.size(), 1))
            in.fail(in.last_line(), 1, "degree " + std::to_string(deg) + " is missing structure maps");
    return GridModule<K>(std::move(grid), std::move(degrees), left, right);
}

}  // namespace tamarkin::grid
