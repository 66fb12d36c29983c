#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tamarkin/core/error.hpp"
#include "tamarkin/core/rat.hpp"

namespace tamarkin::plane {

struct Point {
    Rat x, t;
    friend bool operator==(const Point&, const Point&) = default;
};

/// (b - a) x (c - a); positive when a, b, c turn counterclockwise.
inline Rat orient(const Point& a, const Point& b, const Point& c) {
    return (b.x - a.x) * (c.t - a.t) - (b.t - a.t) * (c.x - a.x);
}

/// Strictly convex polygon, stored counterclockwise. Edge i joins vertex i to
/// vertex i+1; each edge and each vertex carries an inclusion flag, the open
/// interior is always included.
class Polygon {
public:
    enum class Location { outside, interior, edge, vertex };
    struct Hit {
        Location where = Location::outside;
        std::size_t index = 0;  // edge or vertex index
    };

    Polygon() = default;
    Polygon(std::vector<Point> vertices, std::vector<bool> edge_in, std::vector<bool> vertex_in)
        : v_(std::move(vertices)), edge_in_(std::move(edge_in)), vertex_in_(std::move(vertex_in)) {
        const std::size_t n = v_.size();
        if (n < 3) throw Error(Error::Kind::input, "polygon needs at least 3 vertices");
        if (edge_in_.size() != n || vertex_in_.size() != n) throw Error(Error::Kind::input, "polygon flag count mismatch");
        for (const Point& p : v_)
            if (!p.x.is_finite() || !p.t.is_finite()) throw Error(Error::Kind::input, "polygon vertices must be finite");
        Rat area2(0);
        for (std::size_t i = 0; i < n; ++i) area2 += v_[i].x * v_[(i + 1) % n].t - v_[(i + 1) % n].x * v_[i].t;
        if (area2.is_zero()) throw Error(Error::Kind::input, "degenerate polygon with zero area");
        if (area2.sign() < 0) {
            // reverse orientation; edge i of the reversed list is edge n-2-i of the old one
            std::vector<Point> v(v_.rbegin(), v_.rend());
            std::vector<bool> vin(vertex_in_.rbegin(), vertex_in_.rend()), ein(n);
            for (std::size_t i = 0; i < n; ++i) ein[i] = edge_in_[(2 * n - 2 - i) % n];
            v_ = std::move(v);
            vertex_in_ = std::move(vin);
            edge_in_ = std::move(ein);
        }
        for (std::size_t i = 0; i < n; ++i)
            if (orient(v_[i], v_[(i + 1) % n], v_[(i + 2) % n]).sign() <= 0)
                throw Error(Error::Kind::input, "polygon is not strictly convex at vertex " + std::to_string((i + 1) % n));
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = v_[i];
            const Point& b = v_[(i + 1) % n];
            Line l;
            l.a = (b.x - a.x).value();
            l.b = (b.t - a.t).value();
            l.c = l.a * a.t.value() - l.b * a.x.value();
            lines_.push_back(l);
        }
    }

    const std::vector<Point>& vertices() const { return v_; }
    const std::vector<bool>& edge_flags() const { return edge_in_; }
    const std::vector<bool>& vertex_flags() const { return vertex_in_; }
    std::size_t size() const { return v_.size(); }

    Hit locate(const Point& p) const {
        const std::size_t n = v_.size();
        const mpq_class& x = p.x.value();
        const mpq_class& t = p.t.value();
        std::size_t zeros = 0, first = n, last = n;
        for (std::size_t i = 0; i < n; ++i) {
            const Line& l = lines_[i];
            int s = cmp(l.a * t, l.b * x + l.c);
            if (s < 0) return {};
            if (s == 0) {
                ++zeros;
                if (first == n) first = i;
                last = i;
            }
        }
        if (zeros == 0) return {Location::interior, 0};
        if (zeros == 1) return {Location::edge, first};
        // on two edges: the shared vertex
        return {Location::vertex, (first == 0 && last == n - 1) ? 0 : last};
    }

    bool contains(const Point& p) const {
        Hit h = locate(p);
        switch (h.where) {
            case Location::interior: return true;
            case Location::edge: return edge_in_[h.index];
            case Location::vertex: return vertex_in_[h.index];
            default: return false;
        }
    }

    /// Twice the area (positive).
    Rat twice_area() const {
        Rat a(0);
        for (std::size_t i = 0; i < v_.size(); ++i) a += v_[i].x * v_[(i + 1) % v_.size()].t - v_[(i + 1) % v_.size()].x * v_[i].t;
        return a;
    }

    Rat min_x() const {
        Rat m = v_[0].x;
        for (const Point& p : v_) m = min(m, p.x);
        return m;
    }
    Rat max_x() const {
        Rat m = v_[0].x;
        for (const Point& p : v_) m = max(m, p.x);
        return m;
    }

    friend bool operator==(const Polygon& p, const Polygon& q) {
        return p.v_ == q.v_ && p.edge_in_ == q.edge_in_ && p.vertex_in_ == q.vertex_in_;
    }

private:
    // edge i is {a t - b x - c = 0}, the interior on the positive side
    struct Line {
        mpq_class a, b, c;
    };

    std::vector<Point> v_;
    std::vector<Line> lines_;
    std::vector<bool> edge_in_, vertex_in_;
};

/// Union of flagged convex polygons in the (x, t)-plane.
class PlaneRegion {
public:
    PlaneRegion() = default;
    explicit PlaneRegion(std::vector<Polygon> polygons) : polys_(std::move(polygons)) {}

    const std::vector<Polygon>& polygons() const { return polys_; }
    bool empty() const { return polys_.empty(); }

    bool contains(const Point& p) const {
        for (const Polygon& q : polys_)
            if (q.contains(p)) return true;
        return false;
    }

    /// Translation by c in the t-direction.
    PlaneRegion translated(const Rat& c) const {
        std::vector<Polygon> out;
        for (const Polygon& q : polys_) {
            auto v = q.vertices();
            for (Point& p : v) p.t += c;
            out.emplace_back(v, q.edge_flags(), q.vertex_flags());
        }
        return PlaneRegion(out);
    }

    /// (x, t) -> (sx x, st t) with sx, st > 0.
    PlaneRegion scaled(const Rat& sx, const Rat& st) const {
        if (!sx.is_finite() || !st.is_finite() || sx.sign() <= 0 || st.sign() <= 0) throw parameter_error("scale factors must be positive");
        std::vector<Polygon> out;
        for (const Polygon& q : polys_) {
            auto v = q.vertices();
            for (Point& p : v) p = {p.x * sx, p.t * st};
            out.emplace_back(v, q.edge_flags(), q.vertex_flags());
        }
        return PlaneRegion(out);
    }

    /// Sum of polygon areas (the polygons of a region built here never overlap).
    Rat polygon_area_sum() const {
        Rat a(0);
        for (const Polygon& q : polys_) a += q.twice_area();
        return a / 2;
    }

    friend bool operator==(const PlaneRegion&, const PlaneRegion&) = default;

private:
    std::vector<Polygon> polys_;
};

inline Polygon closed_polygon(std::vector<Point> v) {
    const std::size_t n = v.size();
    return Polygon(std::move(v), std::vector<bool>(n, true), std::vector<bool>(n, true));
}

inline Polygon open_polygon(std::vector<Point> v) {
    const std::size_t n = v.size();
    return Polygon(std::move(v), std::vector<bool>(n, false), std::vector<bool>(n, false));
}

inline Polygon rectangle(const Rat& x0, const Rat& t0, const Rat& x1, const Rat& t1, bool closed = true) {
    std::vector<Point> v{{x0, t0}, {x1, t0}, {x1, t1}, {x0, t1}};
    return closed ? closed_polygon(v) : open_polygon(v);
}

}  // namespace tamarkin::plane
