#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tamarkin/core/text.hpp"
#include "tamarkin/plane/region.hpp"

namespace tamarkin::plane {

/// "region v1": a sequence of blocks
///
///   polygon
///   vertex <x> <t>                  (three or more, convex)
///   edge <i> include|exclude        (edge i joins vertex i and i+1; default include)
///   vertexflag <i> include|exclude  (default include)
inline PlaneRegion parse_region(std::string_view doc, const std::string& source = "<region>") {
    text::Reader in(source, doc);
    in.expect_header("region");
    struct Block {
        const text::Line* start;
        std::vector<Point> v;
        std::vector<std::pair<const text::Line*, std::pair<long, bool>>> edges, verts;
    };
    std::vector<Block> blocks;
    while (!in.done()) {
        const auto& line = in.next();
        const std::string& kw = line.tokens[0].text;
        if (kw == "polygon") {
            if (line.tokens.size() != 1) in.fail(line, line.tokens[1], "'polygon' takes no arguments");
            blocks.push_back({&line, {}, {}, {}});
            continue;
        }
        if (blocks.empty()) in.fail(line, line.tokens[0], "expected 'polygon' before '" + kw + "'");
        Block& b = blocks.back();
        if (kw == "vertex") {
            if (line.tokens.size() != 3) in.fail(line, line.tokens[0], "expected 'vertex <x> <t>'");
            Point p{in.rat(line, line.tokens[1]), in.rat(line, line.tokens[2])};
            if (!p.x.is_finite()) in.fail(line, line.tokens[1], "coordinates must be finite");
            if (!p.t.is_finite()) in.fail(line, line.tokens[2], "coordinates must be finite");
            b.v.push_back(p);
        } else if (kw == "edge" || kw == "vertexflag") {
            if (line.tokens.size() != 3) in.fail(line, line.tokens[0], "expected '" + kw + " <i> include|exclude'");
            long i = in.integer(line, line.tokens[1], line.tokens[1].text);
            const std::string& f = line.tokens[2].text;
            if (f != "include" && f != "exclude") in.fail(line, line.tokens[2], "expected 'include' or 'exclude'");
            (kw == "edge" ? b.edges : b.verts).push_back({&line, {i, f == "include"}});
        } else {
            in.fail(line, line.tokens[0], "expected 'polygon', 'vertex', 'edge' or 'vertexflag', got '" + kw + "'");
        }
    }
    std::vector<Polygon> polys;
    for (const Block& b : blocks) {
        const std::size_t n = b.v.size();
        std::vector<bool> ein(n, true), vin(n, true);
        auto apply = [&](const auto& list, std::vector<bool>& flags) {
            for (const auto& [line, entry] : list) {
                if (entry.first < 0 || static_cast<std::size_t>(entry.first) >= n) in.fail(*line, line->tokens[1], "index out of range");
                flags[static_cast<std::size_t>(entry.first)] = entry.second;
            }
        };
        apply(b.edges, ein);
        apply(b.verts, vin);
        try {
            polys.emplace_back(b.v, ein, vin);
        } catch (const Error& e) {
            in.fail(*b.start, b.start->tokens[0], e.what());
        }
    }
    return PlaneRegion(polys);
}

inline std::string write_region(const PlaneRegion& r) {
    std::string out = "region v1\n";
    for (const Polygon& q : r.polygons()) {
        out += "polygon\n";
        for (const Point& p : q.vertices()) out += "vertex " + p.x.to_string() + " " + p.t.to_string() + "\n";
        for (std::size_t i = 0; i < q.size(); ++i)
            if (!q.edge_flags()[i]) out += "edge " + std::to_string(i) + " exclude\n";
        for (std::size_t i = 0; i < q.size(); ++i)
            if (!q.vertex_flags()[i]) out += "vertexflag " + std::to_string(i) + " exclude\n";
    }
    return out;
}

}  // namespace tamarkin::plane
