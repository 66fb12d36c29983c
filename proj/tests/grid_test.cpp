#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "tamarkin/grid/grid_io.hpp"
#include "tamarkin/grid/grid_module.hpp"
#include "tamarkin/grid/morphism.hpp"
#include "tamarkin/grid/oracle.hpp"

using namespace tamarkin;
using namespace tamarkin::grid;
using tamarkin::testgen::make_rng;
using tamarkin::testgen::random_barcode;
using tamarkin::testgen::uniform_int;

namespace {

GridModule<F2> bar_module(Rat b, Rat d) { return to_grid<F2>(GradedBarcode{Bar(b, d, 0)}); }

Matrix<F2> column(std::initializer_list<int> entries) {
    Matrix<F2> m(entries.size(), 1);
    std::size_t i = 0;
    for (int e : entries) m(i++, 0) = F2::from_int(e);
    return m;
}

}  // namespace

TEST(GridDecompose, SingleGenerator) {
    std::map<int, Strand<F2>> deg{{0, {{1, 1, 0}, {column({1}), Matrix<F2>(0, 1)}}}};
    GridModule<F2> m({0, 1, 2}, deg);
    EXPECT_EQ(decompose(m), (GradedBarcode{Bar(0, 2, 0)}));
}

TEST(GridDecompose, InjectiveMapGivesTwoBars) {
    std::map<int, Strand<F2>> deg{{0, {{1, 2}, {column({1, 1})}}}};
    GridModule<F2> m({0, 1}, deg);
    EXPECT_EQ(decompose(m), (GradedBarcode{Bar(0, Rat::infinity(), 0), Bar(1, Rat::infinity(), 0)}));
    GridModule<F2> finite({0, 1}, deg, false, Rat(3));
    EXPECT_EQ(decompose(finite), (GradedBarcode{Bar(0, 3, 0), Bar(1, 3, 0)}));
}

TEST(GridDecompose, RejectsMalformedShapes) {
    std::map<int, Strand<F2>> deg{{0, {{1, 2}, {Matrix<F2>(1, 1)}}}};
    EXPECT_THROW(GridModule<F2>({0, 1}, deg), Error);
    EXPECT_THROW(GridModule<F2>({1, 0}, {}), Error);
}

TEST(GridDecompose, RoundTripsRandomBarcodes) {
    auto rng = make_rng(21);
    testgen::BarcodeShape shape;
    shape.max_degree = 2;
    shape.infinite_percent = 20;
    for (int i = 0; i < 200; ++i) {
        auto b = random_barcode(rng, shape);
        if (uniform_int(rng, 0, 3) == 0) b.add(Bar(Rat::neg_infinity(), Rat(uniform_int(rng, 0, 6)), 0));
        EXPECT_EQ(decompose(to_grid<F2>(b)), b);
        EXPECT_EQ(decompose(to_grid<Q>(b)), b);
    }
}

TEST(GridMorphism, SpaceDimensionsOnExamples) {
    auto unit = bar_module(0, 1);
    EXPECT_EQ(morphism_space(unit, unit, Rat(0)).size(), 1u);
    EXPECT_EQ(morphism_space(unit, unit, Rat(1, 2)).size(), 1u);
    EXPECT_EQ(morphism_space(unit, unit, Rat(1)).size(), 0u);
    EXPECT_EQ(morphism_space(unit, GridModule<F2>(), Rat(1, 2)).size(), 0u);
    EXPECT_EQ(morphism_space(bar_module(0, 4), bar_module(1, 3), Rat(1)).size(), 1u);
    EXPECT_THROW(morphism_space(unit, unit, Rat(-1)), Error);
}

TEST(GridMorphism, BasisElementsAreNatural) {
    auto rng = make_rng(22);
    testgen::BarcodeShape shape;
    shape.max_bars = 4;
    shape.max_degree = 1;
    shape.infinite_percent = 15;
    for (int i = 0; i < 100; ++i) {
        auto f = to_grid<F3>(random_barcode(rng, shape));
        auto g = to_grid<F3>(random_barcode(rng, shape));
        Rat c(uniform_int(rng, 0, 8), 2);
        for (const auto& m : morphism_space(f, g, c)) {
            EXPECT_TRUE(m.is_natural());
            EXPECT_FALSE(m.is_zero());
        }
    }
}

TEST(GridMorphism, TauComposesAdditively) {
    auto rng = make_rng(23);
    testgen::BarcodeShape shape;
    shape.infinite_percent = 20;
    for (int i = 0; i < 50; ++i) {
        auto f = to_grid<F2>(random_barcode(rng, shape));
        Rat c(uniform_int(rng, 0, 6), 2), d(uniform_int(rng, 0, 6), 2);
        EXPECT_EQ(compose(tau(f, d), tau(f, c)), tau(f, c + d));
        EXPECT_TRUE(tau(f, c).is_natural());
    }
}

TEST(GridOracle, Examples) {
    auto f = bar_module(0, 4), g = bar_module(1, 3);
    EXPECT_TRUE(brute_force_interleaved(f, f, 0, 0));
    EXPECT_TRUE(brute_force_interleaved(f, g, 1, 1));
    EXPECT_FALSE(brute_force_interleaved(f, g, Rat(1, 2), 1));
    EXPECT_FALSE(brute_force_interleaved(f, g, Rat(1, 2), Rat(1, 2)));
}

TEST(GridOracle, ZeroTargetMeansTorsion) {
    auto rng = make_rng(24);
    testgen::BarcodeShape shape;
    shape.max_degree = 1;
    for (int i = 0; i < 60; ++i) {
        auto b = random_barcode(rng, shape);
        Rat a(uniform_int(rng, 0, 6), 2), c(uniform_int(rng, 0, 6), 2);
        EXPECT_EQ(brute_force_interleaved(to_grid<F2>(b), GridModule<F2>(), a, c), torsion_threshold(b) <= a + c);
    }
}

TEST(GridOracle, MonotoneAndSymmetric) {
    auto rng = make_rng(25);
    testgen::BarcodeShape shape;
    shape.max_bars = 3;
    shape.hi = 4;
    shape.infinite_percent = 10;
    for (int i = 0; i < 60; ++i) {
        auto f = to_grid<F2>(random_barcode(rng, shape));
        auto g = to_grid<F2>(random_barcode(rng, shape));
        Rat a(uniform_int(rng, 0, 4), 2), b(uniform_int(rng, 0, 4), 2);
        bool here = brute_force_interleaved(f, g, a, b);
        EXPECT_EQ(here, brute_force_interleaved(g, f, b, a));
        if (here) {
            EXPECT_TRUE(brute_force_interleaved(f, g, a + Rat(1, 2), b));
            EXPECT_TRUE(brute_force_interleaved(f, g, a, b + 1));
        }
    }
}

TEST(GridOracle, RefusesLargeModules) {
    GradedBarcode big;
    for (int i = 0; i < 7; ++i) big.add(Bar(i, i + 1, 0));
    EXPECT_THROW(brute_force_interleaved(to_grid<F2>(big), GridModule<F2>(), 0, 0), Error);
}

TEST(GridIo, RoundTrip) {
    auto rng = make_rng(26);
    testgen::BarcodeShape shape;
    shape.max_degree = 2;
    shape.infinite_percent = 30;
    for (int i = 0; i < 50; ++i) {
        auto m = to_grid<F3>(random_barcode(rng, shape));
        EXPECT_EQ(parse_gridmod<F3>(write_gridmod(m)), m);
    }
    std::map<int, Strand<F2>> deg{{0, {{1, 1, 0}, {column({1}), Matrix<F2>(0, 1)}}}};
    GridModule<F2> left({0, 1, 2}, deg, true, Rat(5));
    EXPECT_EQ(parse_gridmod<F2>(write_gridmod(left)), left);
}

TEST(GridIo, Errors) {
    EXPECT_THROW(parse_gridmod<F2>("gridmod v1\nfield f3\ngrid 0\n"), ParseError);
    try {
        parse_gridmod<F2>("gridmod v1\nfield f2\ngrid 0 1\ndims 1 1\nmap 1 -> 2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 5);
    }
    EXPECT_THROW(parse_gridmod<F2>("gridmod v1\nfield f2\ngrid 0 1\ndims 1 1\nmap 1 -> 2\n1 1\n"), ParseError);
    EXPECT_THROW(parse_gridmod<F2>("gridmod v1\nfield f2\ngrid 1 0\n"), ParseError);
    auto m = parse_gridmod<F2>("gridmod v1\nfield f2\ngrid 0 1 2\ndims 1 1 0\nmap 1 -> 2\n1\nmap 2 -> 3\n");
    EXPECT_EQ(decompose(m), (GradedBarcode{Bar(0, 2, 0)}));
}
