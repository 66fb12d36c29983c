#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "tamarkin/energy/hom_persistence.hpp"
#include "tamarkin/energy/novikov_module.hpp"
#include "tamarkin/interleave/distance.hpp"

using namespace tamarkin;
using namespace tamarkin::energy;
using tamarkin::testgen::make_rng;
using tamarkin::testgen::random_barcode;
using tamarkin::testgen::uniform_int;

namespace {

GradedBarcode one_bar(Rat b, Rat d) { return GradedBarcode{Bar(b, d, 0)}; }

using N3 = NovikovScalar<F3>;

N3 random_entry(std::mt19937_64& rng, const Rat& precision) {
    std::vector<N3::Term> terms;
    int count = uniform_int(rng, 0, 2);
    for (int k = 0; k < count; ++k)
        terms.push_back({F3::from_int(uniform_int(rng, 1, 2)), Rat(uniform_int(rng, 0, 12), 4)});
    return N3::from_terms(terms, precision);
}

}  // namespace

TEST(HomPersistence, Examples) {
    auto f = one_bar(0, 4);
    EXPECT_EQ(hom_persistence_deg0(f, f), one_bar(0, 4));
    auto sphere = one_bar(0, Rat(2, 3));
    EXPECT_EQ(e_d(sphere, sphere), Rat(2, 3));
    EXPECT_EQ(e_d(sphere, GradedBarcode{}), Rat(0));
    for (Rat eps : {Rat(1), Rat(1, 2), Rat(1, 4)}) {
        auto scaled = scale(sphere, eps * eps);
        EXPECT_EQ(e_d(scaled, scaled), Rat(2, 3) * eps * eps);
    }
    // G-bars far to the left of F-bars: no morphisms F -> T_c G for c >= 0.
    GradedBarcode far_f{Bar(10, 11, 0), Bar(12, 13, 0)}, far_g{Bar(0, 1, 0), Bar(2, Rat(5, 2), 0)};
    EXPECT_TRUE(hom_persistence_deg0(far_f, far_g).empty());
}

TEST(HomPersistence, ClosedFormMatchesGridComplex) {
    auto rng = make_rng(51);
    testgen::BarcodeShape shape;
    shape.max_bars = 3;
    shape.max_degree = 1;
    shape.infinite_percent = 15;
    for (int i = 0; i < 80; ++i) {
        auto f = random_barcode(rng, shape), g = random_barcode(rng, shape);
        EXPECT_EQ(hom_persistence(f, g), hom_persistence_grid<F2>(f, g));
    }
}

TEST(HomPersistence, DimensionsMatchBarCountsAndStabilizeBeyondWindow) {
    auto rng = make_rng(52);
    testgen::BarcodeShape shape;
    shape.max_bars = 3;
    for (int i = 0; i < 40; ++i) {
        auto f = random_barcode(rng, shape), g = random_barcode(rng, shape);
        auto h = hom_persistence_deg0(f, g);
        auto fm = grid::to_grid<F2>(f), gm = grid::to_grid<F2>(g);
        Rat window = Rat(shape.hi - shape.lo);
        for (int k = 0; k <= 4 * (shape.hi - shape.lo) + 4; ++k) {
            Rat c(k, 4);
            std::size_t bars = 0;
            for (const Bar& b : h)
                if (b.birth <= c && c < b.death) ++bars;
            EXPECT_EQ(grid::morphism_space(fm, gm, c).size(), bars);
            if (c > window) {
                EXPECT_EQ(bars, 0u);
            }
        }
    }
}

TEST(Energy, MonotoneInEachArgument) {
    auto rng = make_rng(53);
    testgen::BarcodeShape shape;
    shape.max_degree = 1;
    shape.infinite_percent = 10;
    for (int i = 0; i < 300; ++i) {
        auto f = random_barcode(rng, shape), g = random_barcode(rng, shape);
        Rat e = e_d(f, g);
        EXPECT_TRUE(e <= e_d(f, f));
        EXPECT_TRUE(e <= e_d(g, g));
        EXPECT_EQ(e, torsion_threshold(hom_persistence(f, g)));
    }
}

TEST(Energy, HomDistanceBound) {
    auto rng = make_rng(54);
    testgen::BarcodeShape shape;
    shape.max_bars = 2;
    shape.hi = 4;
    int exact = 0;
    for (int i = 0; i < 200; ++i) {
        auto f0 = random_barcode(rng, shape), f1 = random_barcode(rng, shape);
        auto g0 = random_barcode(rng, shape), g1 = random_barcode(rng, shape);
        Rat bound = interleave::translation_distance<F2>(f0, f1).upper + interleave::translation_distance<F2>(g0, g1).upper;
        auto d = interleave::translation_distance<F2>(hom_persistence(f0, g0), hom_persistence(f1, g1));
        EXPECT_TRUE(d.lower <= bound);
        if (d.exact) {
            ++exact;
            EXPECT_TRUE(d.value <= bound);
        }
    }
    EXPECT_EQ(exact, 200);
}

TEST(TorsionExponent, DiagonalExamples) {
    EXPECT_EQ(torsion_exponent(diagonal_presentation<F2>({Rat(1, 5), Rat(9, 10)})).value, Rat(9, 10));
    EXPECT_EQ(torsion_exponent(diagonal_presentation<F2>({Rat(1, 2), Rat(6, 5)})).value, Rat(6, 5));
    EXPECT_EQ(torsion_exponent(diagonal_presentation<F2>({})).value, Rat(0));
    NovikovPresentation<F2> free;
    free.generators = 2;
    free.relations = {{NovikovScalar<F2>::monomial(F2::one(), 1), NovikovScalar<F2>::zero()}};
    auto r = torsion_exponent(free);
    EXPECT_TRUE(r.free);
    EXPECT_TRUE(r.value.is_pos_inf());
}

TEST(TorsionExponent, MatchesAnnihilatorOracle) {
    auto rng = make_rng(55);
    const Rat precision(16);
    int below = 0;
    for (int i = 0; i < 100; ++i) {
        NovikovPresentation<F3> p;
        p.generators = 3;
        p.precision = precision;
        for (int r = 0; r < 3; ++r) {
            std::vector<N3> row;
            for (int c = 0; c < 3; ++c) row.push_back(random_entry(rng, precision));
            p.relations.push_back(row);
        }
        Rat oracle = annihilator_oracle(p, 4);
        if (oracle < precision) {
            ++below;
            auto t = torsion_exponent(p);
            EXPECT_FALSE(t.free);
            EXPECT_EQ(t.value, oracle);
        } else {
            try {
                EXPECT_TRUE(torsion_exponent(p).free);
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), Error::Kind::precision);
            }
        }
    }
    EXPECT_GT(below, 50);
}

TEST(NovikovModule, ExamplesAndAgreementWithHomPersistence) {
    auto f = one_bar(0, 3), g = one_bar(1, 2);
    EXPECT_EQ(torsion_exponent(novikov_module<F2>(f, f)).value, Rat(3));
    EXPECT_EQ(torsion_exponent(novikov_module<F2>(g, f)).value, Rat(1));
    EXPECT_EQ(novikov_module<F2>(f, GradedBarcode{}).generators, 0u);
    auto sphere = one_bar(0, Rat(2, 3));
    EXPECT_EQ(torsion_exponent(novikov_module<F2>(sphere, sphere)).value, Rat(2, 3));
    EXPECT_THROW(novikov_module<F2>(one_bar(0, Rat::infinity()), f), Error);
    auto rng = make_rng(56);
    testgen::BarcodeShape shape;
    shape.max_degree = 1;
    for (int i = 0; i < 200; ++i) {
        auto a = random_barcode(rng, shape), b = random_barcode(rng, shape);
        auto p = novikov_module<F2>(a, b, Rat(8));
        EXPECT_EQ(torsion_exponent(p).value, torsion_threshold(hom_persistence_deg0(a, b)));
        EXPECT_EQ(torsion_exponent(p).value, annihilator_oracle(p, 2));
    }
}
