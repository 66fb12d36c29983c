#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "tamarkin/interleave/lemmas.hpp"

using namespace tamarkin;
using namespace tamarkin::interleave;
using tamarkin::testgen::make_rng;
using tamarkin::testgen::random_barcode;
using tamarkin::testgen::uniform_int;

namespace {

GradedBarcode one_bar(Rat b, Rat d) { return GradedBarcode{Bar(b, d, 0)}; }

template <Field K>
BarMorphism<K> diagonal(const GradedBarcode& f, const GradedBarcode& g) {
    BarMorphism<K> m(f, g, 0);
    for (std::size_t i = 0; i < f.size(); ++i) m.set(i, i, K::one());
    return m;
}

struct Split {
    GradedBarcode f, g, h;
};

// Each bar [b,d) of G is cut at b < m <= d into a sub [m,d) and a quotient [b,m).
// Bar i sits in degree i, so the three barcodes are indexed identically.
Split random_split(std::mt19937_64& rng) {
    Split s;
    int n = uniform_int(rng, 1, 4);
    for (int i = 0; i < n; ++i) {
        int b = uniform_int(rng, 0, 6), len = uniform_int(rng, 2, 6), cut = uniform_int(rng, 1, len - 1);
        Rat bb(b, 2), m(b + cut, 2), d(b + len, 2);
        s.g.add(Bar(bb, d, i));
        s.f.add(Bar(m, d, i));
        s.h.add(Bar(bb, m, i));
    }
    return s;
}

}  // namespace

TEST(ComposeCertificates, ShiftsAddAndVerify) {
    auto f0 = one_bar(0, 4), f1 = one_bar(1, 3), f2 = one_bar(1, 4);
    auto c01 = *is_interleaved<F2>(f0, f1, 1, 1).certificate;
    auto c12 = *is_interleaved<F2>(f1, f2, 1, 1).certificate;
    auto c02 = compose_certificates(c01, c12);
    EXPECT_TRUE(c02.verify());
    EXPECT_EQ(c02.a, Rat(2));
    EXPECT_EQ(c02.b, Rat(2));
    EXPECT_THROW(compose_certificates(c01, c01), Error);
}

TEST(ComposeCertificates, RandomChains) {
    auto rng = make_rng(41);
    testgen::BarcodeShape shape;
    shape.max_bars = 3;
    shape.max_degree = 1;
    int composed = 0;
    for (int i = 0; i < 60; ++i) {
        auto f = random_barcode(rng, shape), g = random_barcode(rng, shape), h = random_barcode(rng, shape);
        Rat a(uniform_int(rng, 0, 6), 2), b(uniform_int(rng, 0, 6), 2);
        auto x = is_interleaved<F3>(f, g, a, b), y = is_interleaved<F3>(g, h, b, a);
        if (x.decision != Decision::yes || y.decision != Decision::yes) continue;
        auto c = compose_certificates(*x.certificate, *y.certificate);
        EXPECT_TRUE(c.verify());
        EXPECT_EQ(is_interleaved<F3>(f, h, a + b, a + b).decision, Decision::yes);
        ++composed;
    }
    EXPECT_GT(composed, 5);
}

TEST(Weaken, LargerShiftsStillVerify) {
    auto f = one_bar(0, 4), g = one_bar(1, 3);
    auto c = *is_interleaved<F2>(f, g, 1, 1).certificate;
    for (int a2 = 2; a2 <= 8; ++a2)
        for (int b2 = 2; b2 <= 8; b2 += 3) EXPECT_TRUE(weaken(c, Rat(a2, 2), Rat(b2, 2)).verify());
    EXPECT_THROW(weaken(c, Rat(1, 2), 1), Error);
}

TEST(HomCertificate, ShiftsFromBothFactors) {
    auto rng = make_rng(42);
    testgen::BarcodeShape shape;
    shape.max_bars = 2;
    shape.hi = 4;
    int built = 0;
    for (int i = 0; i < 40; ++i) {
        auto f0 = random_barcode(rng, shape), f1 = random_barcode(rng, shape);
        auto g0 = random_barcode(rng, shape), g1 = random_barcode(rng, shape);
        Rat af(uniform_int(rng, 0, 4), 2), bf(uniform_int(rng, 0, 4), 2);
        Rat ag(uniform_int(rng, 0, 4), 2), bg(uniform_int(rng, 0, 4), 2);
        auto cf = is_interleaved<F2>(f0, f1, af, bf), cg = is_interleaved<F2>(g0, g1, ag, bg);
        if (cf.decision != Decision::yes || cg.decision != Decision::yes) continue;
        auto h = hom_certificate(*cf.certificate, *cg.certificate);
        EXPECT_TRUE(h.verify());
        EXPECT_EQ(h.a, bf + ag);
        EXPECT_EQ(h.b, af + bg);
        ++built;
    }
    EXPECT_GT(built, 5);
}

TEST(PureShift, StepCertificatesAndRiemannSum) {
    GradedBarcode f{Bar(0, 3, 0), Bar(1, Rat::infinity(), 1), Bar(Rat::neg_infinity(), 2, 0)};
    for (int u = -6; u <= 6; ++u) {
        auto [g, c] = pure_shift_certificate<Q>(f, Rat(u, 2));
        EXPECT_TRUE(c.verify());
        EXPECT_EQ(c.a + c.b, Rat(u < 0 ? -u : u, 2));
    }
    std::vector<Rat> h{Rat(1), Rat(1, 2), Rat(-1, 2), Rat(-1), Rat(0), Rat(1, 3)};
    auto [family, total] = shift_family<F2>(f, h, Rat(1, 4));
    EXPECT_EQ(family.size(), h.size() + 1);
    EXPECT_TRUE(total.verify());
    Rat sum_abs(0);
    for (const Rat& x : h) sum_abs += (x.sign() < 0 ? -x : x) * Rat(1, 4);
    EXPECT_EQ(total.a + total.b, sum_abs);
}

TEST(HomotopyCompose, ReportsFailingStep) {
    std::vector<GradedBarcode> family{one_bar(0, 4), one_bar(1, 3), one_bar(1, 4)};
    auto c = homotopy_compose<F2>(family, {Rat(1), Rat(1)}, {Rat(1), Rat(1)});
    EXPECT_TRUE(c.verify());
    try {
        homotopy_compose<F2>(family, {Rat(1), Rat(0)}, {Rat(1), Rat(0)});
        FAIL() << "expected a failing step";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("step 1"), std::string::npos);
    }
    EXPECT_THROW(homotopy_compose<F2>(family, {Rat(1)}, {Rat(1)}), Error);
}

TEST(SesCertificate, BasicExample) {
    auto f = one_bar(2, 3), g = one_bar(0, 3), h = one_bar(0, 2);
    auto iota = diagonal<F2>(f, g).to_grid(), pi = diagonal<F2>(g, h).to_grid();
    auto cert = ses_certificate(iota, pi, 1);
    EXPECT_TRUE(cert.verify());
    EXPECT_EQ(cert.b, Rat(1));
    EXPECT_THROW(ses_certificate(iota, pi, Rat(1, 2)), Error);
    auto zero = grid::GridMorphism<F2>(pi.source(), pi.target(), 0);
    EXPECT_THROW(ses_certificate(iota, zero, 1), Error);
    EXPECT_EQ(is_interleaved<F2>(g, h, 0, 1).decision, Decision::yes);
}

TEST(SesCertificate, RandomBarSplits) {
    auto rng = make_rng(43);
    for (int i = 0; i < 60; ++i) {
        auto s = random_split(rng);
        auto iota = diagonal<F3>(s.f, s.g).to_grid(), pi = diagonal<F3>(s.g, s.h).to_grid();
        Rat c = torsion_threshold(s.f);
        auto cert = ses_certificate(iota, pi, c);
        EXPECT_TRUE(cert.verify());
        EXPECT_EQ(is_interleaved<F3>(s.g, s.h, 0, c).decision, Decision::yes);
        if (c > Rat(1, 2)) {
            EXPECT_THROW(ses_certificate(iota, pi, c - Rat(1, 2)), Error);
        }
    }
}
