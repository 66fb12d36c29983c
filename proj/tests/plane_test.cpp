#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "support/generators.hpp"
#include "tamarkin/plane/arrangement.hpp"
#include "tamarkin/plane/oracle.hpp"
#include "tamarkin/plane/region.hpp"
#include "tamarkin/plane/region_io.hpp"
#include "tamarkin/plane/sheaf.hpp"
#include "tamarkin/plane/sweep.hpp"

using namespace tamarkin;
using namespace tamarkin::plane;
using tamarkin::testgen::make_rng;
using tamarkin::testgen::random_rat;
using tamarkin::testgen::uniform_int;

namespace {

using Cells = std::vector<std::pair<int, std::vector<int>>>;

CellComplex abstract(const Cells& spec) {
    std::vector<CellComplex::Cell> cells;
    for (const auto& [dim, faces] : spec) cells.push_back({dim, faces, {}});
    return CellComplex(cells);
}

CellComplex triangle() { return abstract({{0, {}}, {0, {}}, {0, {}}, {1, {0, 1}}, {1, {1, 2}}, {1, {0, 2}}, {2, {0, 1, 2, 3, 4, 5}}}); }

CellComplex square() {
    return abstract({{0, {}}, {0, {}}, {0, {}}, {0, {}}, {1, {0, 1}}, {1, {1, 2}}, {1, {2, 3}}, {1, {0, 3}}, {2, {0, 1, 2, 3, 4, 5, 6, 7}}});
}

CellComplex path() { return abstract({{0, {}}, {0, {}}, {0, {}}, {0, {}}, {1, {0, 1}}, {1, {1, 2}}, {1, {2, 3}}}); }

CellComplex two_triangles() {
    // triangles 012 and 123 glued along the edge 12
    return abstract({{0, {}},
                     {0, {}},
                     {0, {}},
                     {0, {}},
                     {1, {0, 1}},
                     {1, {1, 2}},
                     {1, {0, 2}},
                     {1, {1, 3}},
                     {1, {2, 3}},
                     {2, {0, 1, 2, 4, 5, 6}},
                     {2, {1, 2, 3, 5, 7, 8}}});
}

std::vector<std::vector<bool>> locally_closed_sets(const CellComplex& x) {
    std::vector<std::vector<bool>> out;
    for (unsigned mask = 0; mask < (1u << x.size()); ++mask) {
        std::vector<bool> in(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) in[i] = (mask >> i) & 1u;
        if (is_locally_closed(x, in)) out.push_back(in);
    }
    return out;
}

Polygon random_convex(std::mt19937_64& rng, bool random_flags) {
    for (;;) {
        std::vector<Point> v;
        const int n = static_cast<int>(uniform_int(rng, 3, 4));
        if (n == 4) {
            Rat x0 = random_rat(rng, 0, 4, 2), t0 = random_rat(rng, 0, 4, 2);
            Rat w = random_rat(rng, 1, 3, 2), h = random_rat(rng, 1, 3, 2);
            v = {{x0, t0}, {x0 + w, t0}, {x0 + w, t0 + h}, {x0, t0 + h}};
        } else {
            for (int i = 0; i < 3; ++i) v.push_back({random_rat(rng, 0, 5, 2), random_rat(rng, 0, 5, 2)});
            if (orient(v[0], v[1], v[2]).is_zero()) continue;
        }
        std::vector<bool> ein(v.size(), true), vin(v.size(), true);
        if (random_flags)
            for (std::size_t i = 0; i < v.size(); ++i) {
                ein[i] = uniform_int(rng, 0, 1) == 1;
                vin[i] = uniform_int(rng, 0, 1) == 1;
            }
        return Polygon(v, ein, vin);
    }
}

// Exact intersection points of two closed segments that cross transversally.
std::optional<Point> crossing(const Point& a, const Point& b, const Point& c, const Point& d) {
    Rat den = (b.x - a.x) * (d.t - c.t) - (b.t - a.t) * (d.x - c.x);
    if (den.is_zero()) return std::nullopt;
    Rat s = ((c.x - a.x) * (d.t - c.t) - (c.t - a.t) * (d.x - c.x)) / den;
    Rat u = ((c.x - a.x) * (b.t - a.t) - (c.t - a.t) * (b.x - a.x)) / den;
    if (s.sign() < 0 || Rat(1) < s || u.sign() < 0 || Rat(1) < u) return std::nullopt;
    return Point{a.x + s * (b.x - a.x), a.t + s * (b.t - a.t)};
}

std::set<std::pair<Rat, Rat>> vertex_points(const Arrangement& a) {
    std::set<std::pair<Rat, Rat>> out;
    for (const auto& c : a.complex.cells())
        if (c.dim == 0) out.insert({c.sample.x, c.sample.t});
    return out;
}

}  // namespace

TEST(Polygon, NormalizesOrientationAndKeepsFlags) {
    // clockwise input with only the edge from (0,1) to (1,1) excluded
    Polygon p({{0, 0}, {0, 1}, {1, 1}, {1, 0}}, {true, false, true, true}, {true, true, true, true});
    EXPECT_TRUE(p.contains({Rat(1, 2), Rat(0)}));
    EXPECT_FALSE(p.contains({Rat(1, 2), Rat(1)}));
    EXPECT_TRUE(p.contains({Rat(0), Rat(1, 2)}));
    EXPECT_TRUE(p.contains({Rat(1), Rat(1)}));
    EXPECT_FALSE(p.contains({Rat(2), Rat(1, 2)}));
    EXPECT_EQ(p.twice_area(), Rat(2));
}

TEST(Polygon, RejectsDegenerateAndNonConvexInput) {
    auto kind = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return Error::Kind::undefined;
    };
    EXPECT_EQ(kind([] { closed_polygon({{0, 0}, {1, 1}, {2, 2}}); }), Error::Kind::input);
    EXPECT_EQ(kind([] { closed_polygon({{0, 0}, {2, 0}, {1, Rat(1, 4)}, {2, 2}, {0, 2}}); }), Error::Kind::input);
    EXPECT_EQ(kind([] { closed_polygon({{0, 0}, {1, 0}}); }), Error::Kind::input);
}

TEST(Arrangement, UnitSquareIsNineCellsInsideItsBox) {
    PlaneRegion sq({rectangle(0, 0, 1, 1)});
    Arrangement a = arrange({sq});
    std::size_t by_dim[3] = {0, 0, 0};
    for (std::size_t c = 0; c < a.complex.size(); ++c)
        if (a.membership[0][c]) ++by_dim[a.complex.dim(c)];
    EXPECT_EQ(by_dim[0], 4u);
    EXPECT_EQ(by_dim[1], 4u);
    EXPECT_EQ(by_dim[2], 1u);
    EXPECT_GT(a.complex.size(), 9u);
    // Euler characteristic of the closed box
    EXPECT_EQ(static_cast<long>(a.complex.count(0)) - static_cast<long>(a.complex.count(1)) + static_cast<long>(a.complex.count(2)), 1);
}

TEST(Arrangement, OverlappingPolygonsHaveEveryCrossingAsVertex) {
    PlaneRegion a({rectangle(0, 0, 2, 2)});
    PlaneRegion b({closed_polygon({{Rat(1, 2), 1}, {Rat(5, 2), 1}, {Rat(3, 2), 3}})});
    Arrangement arr = arrange({a, b});
    auto pts = vertex_points(arr);
    EXPECT_TRUE(pts.count({Rat(1), Rat(2)}));
    EXPECT_TRUE(pts.count({Rat(2), Rat(2)}));
    EXPECT_TRUE(pts.count({Rat(2), Rat(1)}));
}

TEST(Arrangement, RandomPairsAreUnionsOfMarkedCells) {
    auto rng = make_rng(41);
    for (int round = 0; round < 60; ++round) {
        PlaneRegion r0({random_convex(rng, true)}), r1({random_convex(rng, true)});
        Arrangement a = arrange({r0, r1});
        const auto pts = vertex_points(a);
        // every crossing of boundary edges is a vertex
        for (const Polygon& p : r0.polygons())
            for (const Polygon& q : r1.polygons())
                for (std::size_t i = 0; i < p.size(); ++i)
                    for (std::size_t j = 0; j < q.size(); ++j) {
                        auto c = crossing(p.vertices()[i], p.vertices()[(i + 1) % p.size()], q.vertices()[j], q.vertices()[(j + 1) % q.size()]);
                        if (c) {
                            EXPECT_TRUE(pts.count({c->x, c->t})) << "round " << round;
                        }
                    }
        // barycenters of the vertex faces and random interior points agree with the marks
        for (std::size_t c = 0; c < a.complex.size(); ++c) {
            std::vector<Point> corners;
            for (int f : a.complex.faces(c))
                if (a.complex.dim(static_cast<std::size_t>(f)) == 0) corners.push_back(a.complex.cell(static_cast<std::size_t>(f)).sample);
            if (corners.empty()) corners.push_back(a.complex.cell(c).sample);
            std::vector<Point> probes;
            Point bary{Rat(0), Rat(0)};
            for (const Point& p : corners) bary = {bary.x + p.x, bary.t + p.t};
            probes.push_back({bary.x / static_cast<long>(corners.size()), bary.t / static_cast<long>(corners.size())});
            for (int k = 0; k < 3 && corners.size() > 1; ++k) {
                Rat total(0);
                Point s{Rat(0), Rat(0)};
                for (const Point& p : corners) {
                    Rat w(uniform_int(rng, 1, 9));
                    total += w;
                    s = {s.x + w * p.x, s.t + w * p.t};
                }
                probes.push_back({s.x / total, s.t / total});
            }
            for (const Point& p : probes) {
                EXPECT_EQ(r0.contains(p), a.membership[0][c]) << "round " << round << " cell " << c;
                EXPECT_EQ(r1.contains(p), a.membership[1][c]) << "round " << round << " cell " << c;
            }
        }
    }
}

TEST(Sheaf, LocalClosednessOnTheFacePoset) {
    CellComplex t = triangle();
    EXPECT_TRUE(is_locally_closed(t, {true, true, true, true, true, true, true}));
    EXPECT_TRUE(is_locally_closed(t, {false, false, false, false, false, false, true}));
    // open edge plus one endpoint is half-open, still locally closed
    EXPECT_TRUE(is_locally_closed(t, {true, false, false, true, false, false, false}));
    // a vertex and the open face without the edges in between
    EXPECT_FALSE(is_locally_closed(t, {true, false, false, false, false, false, true}));
    EXPECT_THROW(constant_sheaf<F2>(t, {true, false, false, false, false, false, true}), Error);
}

TEST(Sheaf, ExtComplexSquaresToZero) {
    CellComplex x = two_triangles();
    auto sets = locally_closed_sets(x);
    auto rng = make_rng(5);
    for (int round = 0; round < 40; ++round) {
        const auto& a = sets[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(sets.size()) - 1))];
        const auto& b = sets[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(sets.size()) - 1))];
        auto f = constant_sheaf<F3>(x, a);
        auto g = constant_sheaf<F3>(x, b);
        ExtComplex<F3> c(f, g);
        auto d0 = c.differential(0), d1 = c.differential(1);
        // compose column by column: d1 applied to each column of d0
        for (const auto& col : d0) {
            std::map<std::size_t, F3> out;
            for (const auto& [row, v] : col)
                for (const auto& [r2, w] : d1[row]) out[r2] += v * w;
            for (const auto& [r2, v] : out) EXPECT_TRUE(v.is_zero());
        }
    }
}

TEST(Sheaf, ExtAgreesWithProjectiveResolutionOnTinyComplexes) {
    for (const CellComplex& x : {triangle(), path(), square()}) {
        auto sets = locally_closed_sets(x);
        for (const auto& a : sets)
            for (const auto& b : sets) {
                auto f = constant_sheaf<F2>(x, a);
                auto g = constant_sheaf<F2>(x, b);
                ASSERT_EQ(ext_dims(f, g), ext_dims_by_resolution(f, g));
            }
    }
    CellComplex x = two_triangles();
    auto sets = locally_closed_sets(x);
    auto rng = make_rng(8);
    for (int round = 0; round < 1500; ++round) {
        const auto& a = sets[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(sets.size()) - 1))];
        const auto& b = sets[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(sets.size()) - 1))];
        auto f = constant_sheaf<F3>(x, a);
        auto g = constant_sheaf<F3>(x, b);
        ASSERT_EQ(ext_dims(f, g), ext_dims_by_resolution(f, g));
    }
}

TEST(Sheaf, KnownExtGroups) {
    CellComplex t = triangle();
    std::vector<bool> all(7, true), open_face(7, false), boundary(7, true);
    open_face[6] = true;
    boundary[6] = false;
    auto kt = constant_sheaf<Q>(t, all);
    auto ko = constant_sheaf<Q>(t, open_face);
    auto kb = constant_sheaf<Q>(t, boundary);
    // closed disk, open disk and circle
    EXPECT_EQ(ext_dims(kt, kt), (std::vector<std::size_t>{1, 0, 0}));
    EXPECT_EQ(ext_dims(kb, kb), (std::vector<std::size_t>{1, 1, 0}));
    EXPECT_EQ(ext_dims(kt, ko), (std::vector<std::size_t>{0, 0, 1}));
    EXPECT_EQ(ext_dims(ko, kt), (std::vector<std::size_t>{1, 0, 0}));
}

TEST(Sheaf, ConstantHomMatchesExtDegreeZero) {
    for (const CellComplex& x : {triangle(), square(), two_triangles()}) {
        auto sets = locally_closed_sets(x);
        for (std::size_t i = 0; i < sets.size(); i += 3)
            for (std::size_t j = 0; j < sets.size(); j += 5) {
                auto f = constant_sheaf<F2>(x, sets[i]);
                auto g = constant_sheaf<F2>(x, sets[j]);
                ASSERT_EQ(constant_hom(x, sets[i], sets[j]).dim, ext_dims(f, g)[0]);
            }
    }
}

TEST(DerivedHom, SquareExamples) {
    PlaneRegion sq({rectangle(0, 0, 1, 1)});
    EXPECT_EQ(derived_hom_dims<F2>(sq, sq), (std::vector<std::size_t>{1, 0, 0}));
    PlaneRegion far({rectangle(3, 3, 4, 5)});
    EXPECT_EQ(derived_hom_dims<F2>(sq, far), (std::vector<std::size_t>{0, 0, 0}));
    EXPECT_EQ(derived_hom_dims<F2>(far, sq), (std::vector<std::size_t>{0, 0, 0}));
    PlaneRegion open({rectangle(0, 0, 1, 1, false)});
    EXPECT_EQ(derived_hom_dims<F2>(sq, open), (std::vector<std::size_t>{0, 0, 1}));
}

TEST(DerivedHom, NonLocallyClosedFlagsAreInputErrors) {
    // edge (0,0)-(1,0) excluded but both endpoints included
    PlaneRegion bad({Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {false, true, true, true}, {true, true, true, true})});
    try {
        derived_hom_dims<F2>(bad, bad);
        FAIL() << "expected an input error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::input);
    }
}

TEST(DerivedHom, IdentityExistsForConnectedRegions) {
    auto rng = make_rng(17);
    int checked = 0;
    while (checked < 25) {
        PlaneRegion r({random_convex(rng, true)});
        Arrangement a = arrange({r});
        if (!is_locally_closed(a.complex, a.membership[0])) continue;
        ++checked;
        EXPECT_GE(derived_hom_dims<F2>(r, r)[0], 1u);
    }
}

TEST(SphereRegion, FlagsFollowTheHalfOpenDescription) {
    PlaneRegion z = sphere_region(Rat(1, 10));
    for (const Polygon& p : z.polygons()) {
        const auto& v = p.vertices();
        for (std::size_t i = 0; i < p.size(); ++i) {
            const Point& a = v[i];
            const Point& b = v[(i + 1) % p.size()];
            if (a.x == b.x) {
                EXPECT_TRUE(p.edge_flags()[i]);
                continue;
            }
            // counterclockwise: edges running right are lower, edges running left are upper
            EXPECT_EQ(p.edge_flags()[i], a.x < b.x);
        }
        for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(p.vertex_flags()[i], v[i].t.sign() < 0);
    }
    EXPECT_TRUE(z.contains({Rat(0), Rat(-1, 3)}));
    EXPECT_FALSE(z.contains({Rat(0), Rat(1, 3)}));
    EXPECT_FALSE(z.contains({Rat(-1), Rat(0)}));
    EXPECT_FALSE(z.contains({Rat(1), Rat(0)}));
}

TEST(SphereRegion, CoarseMeshIsLocallyClosed) {
    PlaneRegion z = sphere_region(Rat(1, 2));
    EXPECT_EQ(z.polygons().size(), 4u);
    Arrangement a = arrange({z});
    EXPECT_TRUE(is_locally_closed(a.complex, a.membership[0]));
    EXPECT_THROW(sphere_region(Rat(0)), Error);
    EXPECT_THROW(sphere_region(Rat(2, 3)), Error);
    EXPECT_THROW(sphere_region(Rat(1, 10), Rat(-1)), Error);
}

TEST(SphereRegion, AreaAndBoundaryError) {
    PlaneRegion z = sphere_region(Rat(1, 100));
    const double area = z.polygon_area_sum().to_double();
    EXPECT_NEAR(area, M_PI / 4, 0.01 * M_PI / 4);
    const double mesh = 0.01, c = sphere_error_constant().to_double();
    for (const Polygon& p : z.polygons()) {
        const auto& v = p.vertices();
        for (std::size_t i = 0; i < p.size(); ++i) {
            const Point& a = v[i];
            const Point& b = v[(i + 1) % p.size()];
            if (a.x == b.x || a.t.sign() > 0 || b.t.sign() > 0) continue;
            for (double s : {0.0, 0.25, 0.5, 0.75}) {
                double x = a.x.to_double() + s * (b.x.to_double() - a.x.to_double());
                double t = a.t.to_double() + s * (b.t.to_double() - a.t.to_double());
                double exact = -std::pow(1 - x * x, 1.5) / 3;
                EXPECT_LE(std::abs(t - exact), c * mesh);
            }
        }
    }
}

TEST(HomSweep, SphereThresholdIsTwoThirds) {
    PlaneRegion z = sphere_region(Rat(1, 10));
    SweepResult r = hom_sweep(z, z, Rat(1));
    EXPECT_EQ(r.base_dim, 1u);
    EXPECT_EQ(r.threshold, Rat(2, 3));
    for (const SweepSample& s : r.samples) {
        EXPECT_EQ(s.hom_dim, s.c < Rat(2, 3) ? 1u : 0u) << s.c.to_string();
        EXPECT_EQ(s.composite_zero, !(s.c < Rat(2, 3))) << s.c.to_string();
    }
}

TEST(HomSweep, StepFunctionMatchesDerivedHom) {
    PlaneRegion z = sphere_region(Rat(1, 10));
    SweepResult r = hom_sweep(z, z, Rat(1));
    for (std::size_t i = 0; i < r.samples.size(); i += 7) {
        const SweepSample& s = r.samples[i];
        auto dims = derived_hom_dims<F2>(z, z.translated(s.c));
        EXPECT_EQ(dims[0], s.hom_dim) << s.c.to_string();
    }
}

TEST(HomSweep, EpsilonScaling) {
    for (Rat eps : {Rat(1), Rat(1, 2), Rat(1, 4)}) {
        PlaneRegion z = sphere_region(Rat(1, 10), eps);
        SweepResult r = hom_sweep(z, z, eps * eps);
        EXPECT_EQ(r.threshold, Rat(2, 3) * eps * eps);
        EXPECT_GT(r.threshold.sign(), 0);
    }
}

TEST(HomSweep, SeparatedRegionHasThresholdZero) {
    PlaneRegion z = sphere_region(Rat(1, 10));
    SweepResult r = hom_sweep(z, z.translated(Rat(2)), Rat(1));
    EXPECT_EQ(r.base_dim, 0u);
    EXPECT_EQ(r.threshold, Rat(0));
}

TEST(HomSweep, ThresholdShrinksWithZp) {
    PlaneRegion z({Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {true, true, false, true}, {true, true, false, false})});
    Rat previous = Rat::infinity();
    for (int k = 0; k < 8; ++k) {
        Rat bottom(k, 10);
        PlaneRegion zp({Polygon({{0, bottom}, {1, bottom}, {1, 1}, {0, 1}}, {true, true, false, true}, {true, true, false, false})});
        SweepResult r = hom_sweep(z, zp, Rat(2));
        EXPECT_EQ(r.threshold, Rat(1) - bottom);
        EXPECT_LE(r.threshold, previous);
        previous = r.threshold;
    }
    PlaneRegion sphere = sphere_region(Rat(1, 10));
    previous = Rat::infinity();
    for (Rat s : {Rat(1), Rat(3, 4), Rat(1, 2), Rat(1, 4)}) {
        SweepResult r = hom_sweep(sphere, sphere.scaled(Rat(1), s), Rat(1));
        EXPECT_LE(r.threshold, previous) << s.to_string();
        previous = r.threshold;
    }
}

TEST(HomSweep, MeshRefinementErrorIsNonIncreasing) {
    Rat previous = Rat::infinity();
    for (long n : {10L, 20L, 50L}) {
        PlaneRegion z = sphere_region(Rat(1, n));
        SweepResult r = hom_sweep(z, z, Rat(1));
        Rat err = abs(r.threshold - Rat(2, 3));
        EXPECT_LE(err, previous) << n;
        EXPECT_LE(err, Rat(1, 20));
        previous = err;
    }
}

TEST(RegionIo, RoundTripAndDiagnostics) {
    PlaneRegion z = sphere_region(Rat(1, 4));
    EXPECT_EQ(parse_region(write_region(z)), z);
    PlaneRegion q = parse_region("region v1\npolygon\nvertex 0 0\nvertex 1 0\nvertex 1/2 1\nedge 2 exclude\nvertexflag 2 exclude\n");
    EXPECT_FALSE(q.contains({Rat(1, 2), Rat(1)}));
    EXPECT_TRUE(q.contains({Rat(1, 2), Rat(0)}));
    auto where = [](const std::string& doc) {
        try {
            parse_region(doc);
        } catch (const ParseError& e) {
            return std::make_pair(e.line(), e.column());
        }
        return std::make_pair(-1, -1);
    };
    EXPECT_EQ(where("region v2\n"), std::make_pair(1, 8));
    EXPECT_EQ(where("region v1\nvertex 0 0\n"), std::make_pair(2, 1));
    EXPECT_EQ(where("region v1\npolygon\nvertex 0 x\n"), std::make_pair(3, 10));
    EXPECT_EQ(where("region v1\npolygon\nvertex 0 0\nvertex 1 0\nvertex 1/2 1\nedge 3 exclude\n"), std::make_pair(6, 6));
    EXPECT_EQ(where("region v1\npolygon\nvertex 0 0\nvertex 1 1\nvertex 2 2\n"), std::make_pair(2, 1));
}
