#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <mutex>
#include <thread>
#include <vector>

#include "tamarkin/plane/sheaf.hpp"

namespace tamarkin::plane {

/// dim Hom(k_Z, k_Zp[n]) for n = 0, 1, 2, computed on the common arrangement.
template <Field K>
std::vector<std::size_t> derived_hom_dims(const PlaneRegion& z, const PlaneRegion& zp) {
    Arrangement a = arrange({z, zp});
    auto f = constant_sheaf<K>(a.complex, a.membership[0]);
    auto g = constant_sheaf<K>(a.complex, a.membership[1]);
    return ext_dims(f, g);
}

struct SweepSample {
    Rat c;
    bool critical = false;
    std::size_t hom_dim = 0;      // dim Hom(k_Z, T_c k_Zp) in degree 0
    bool composite_zero = false;  // every morphism k_Z -> k_Zp dies in Hom(k_Z, T_c k_Zp)
};

struct SweepResult {
    std::vector<Rat> critical;
    std::vector<SweepSample> samples;  // critical values and the midpoints between them, in order
    std::size_t base_dim = 0;          // dim Hom(k_Z, k_Zp)
    Rat threshold;                     // +inf when the composite survives up to c_max
};

/// Values of c at which the combinatorics of {Z, Zp, Zp + c} can change: a vertex
/// of Zp + c meets a vertex or edge of Z or Zp, or an edge of Zp + c meets one
/// of their vertices.
inline std::vector<Rat> critical_shifts(const PlaneRegion& z, const PlaneRegion& zp, const Rat& c_max) {
    struct Seg {
        Point a, b;
    };
    auto segments = [](const PlaneRegion& r) {
        std::vector<Seg> out;
        for (const Polygon& q : r.polygons())
            for (std::size_t i = 0; i < q.size(); ++i) {
                Point p = q.vertices()[i], n = q.vertices()[(i + 1) % q.size()];
                if (p.x > n.x) std::swap(p, n);
                out.push_back({p, n});
            }
        return out;
    };
    auto vertices = [](const PlaneRegion& r) {
        std::vector<Point> out;
        for (const Polygon& q : r.polygons())
            for (const Point& p : q.vertices()) out.push_back(p);
        std::sort(out.begin(), out.end(), [](const Point& u, const Point& w) { return u.x != w.x ? u.x < w.x : u.t < w.t; });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    std::set<Rat> cs{Rat(0), c_max};
    auto keep = [&](const Rat& c) {
        if (c.sign() >= 0 && c <= c_max) cs.insert(c);
    };
    const auto moving_v = vertices(zp);
    const auto moving_s = segments(zp);
    for (const PlaneRegion* r : {&z, &zp}) {
        const auto fixed_v = vertices(*r);
        const auto fixed_s = segments(*r);
        auto on = [](const Seg& s, const Point& v, bool& hit) -> Rat {
            hit = s.a.x <= v.x && v.x <= s.b.x;
            if (!hit) return Rat(0);
            if (s.a.x == s.b.x) return s.a.t;  // vertical: endpoints give the critical values
            return s.a.t + (s.b.t - s.a.t) * (v.x - s.a.x) / (s.b.x - s.a.x);
        };
        for (const Point& v : moving_v) {
            for (const Seg& s : fixed_s) {
                bool hit = false;
                Rat t = on(s, v, hit);
                if (hit) keep(t - v.t);
                if (hit && s.a.x == s.b.x) keep(s.b.t - v.t);
            }
        }
        for (const Point& w : fixed_v)
            for (const Seg& s : moving_s) {
                bool hit = false;
                Rat t = on(s, w, hit);
                if (hit) keep(w.t - t);
                if (hit && s.a.x == s.b.x) keep(w.t - s.b.t);
            }
    }
    return {cs.begin(), cs.end()};
}

namespace detail {

inline SweepSample sweep_sample(const PlaneRegion& z, const PlaneRegion& zp, const Rat& c) {
    Arrangement a = arrange({z, zp, zp.translated(c)});
    const auto& x = a.complex;
    for (std::size_t r = 0; r < 3; ++r)
        if (!is_locally_closed(x, a.membership[r])) throw Error(Error::Kind::input, "region is not locally closed");
    if (!identity_is_natural(x, a.membership[1], a.membership[2]))
        throw Error(Error::Kind::input, "translation by " + c.to_string() + " does not give a morphism k_Zp -> T_c k_Zp");
    ConstantHom base = constant_hom(x, a.membership[0], a.membership[1]);
    SweepSample s;
    s.c = c;
    s.hom_dim = constant_hom(x, a.membership[0], a.membership[2]).dim;
    // the composite of a basis morphism with the translation is its restriction to the cells of Zp + c
    s.composite_zero = true;
    for (std::size_t cell = 0; cell < x.size(); ++cell)
        if (base.piece[cell] >= 0 && a.membership[2][cell]) s.composite_zero = false;
    return s;
}

}  // namespace detail

/// Degree-0 Hom step function over c in [0, c_max] and the vanishing threshold
/// inf{c : Hom(k_Z, k_Zp) -> Hom(k_Z, T_c k_Zp) is zero}. Samples are evaluated on
/// up to `jobs` threads.
inline SweepResult hom_sweep(const PlaneRegion& z, const PlaneRegion& zp, const Rat& c_max, unsigned jobs = 1) {
    if (!c_max.is_finite() || c_max.sign() < 0) throw parameter_error("c_max must be finite and >= 0");
    SweepResult out;
    out.critical = critical_shifts(z, zp, c_max);
    std::vector<Rat> at;
    std::vector<bool> crit;
    for (std::size_t i = 0; i < out.critical.size(); ++i) {
        if (i > 0) {
            at.push_back((out.critical[i - 1] + out.critical[i]) / 2);
            crit.push_back(false);
        }
        at.push_back(out.critical[i]);
        crit.push_back(true);
    }
    out.samples.resize(at.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&] {
        for (std::size_t i; (i = next++) < at.size();) {
            try {
                out.samples[i] = detail::sweep_sample(z, zp, at[i]);
                out.samples[i].critical = crit[i];
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(at.size())));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    out.base_dim = out.samples.front().hom_dim;
    out.threshold = Rat::infinity();
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        if (out.samples[i].composite_zero) {
            // zero on an open interval means zero from its left end on
            out.threshold = out.samples[i].critical ? out.samples[i].c : out.samples[i - 1].c;
            break;
        }
    return out;
}

/// Denominator used for the rational approximation of (1 - x^2)^{3/2} / 3.
inline constexpr long sphere_resolution = 1000000;

/// (1 - x^2) floor(sqrt(1 - x^2) D) / (3 D) with D = sphere_resolution: a rational
/// value at most 1/(3D) below (1 - x^2)^{3/2} / 3, exact where the root is rational
/// with denominator dividing D.
inline Rat sphere_height(const Rat& x) {
    Rat u = Rat(1) - x * x;
    if (u.sign() <= 0) return Rat(0);
    mpq_class scaled = u.value() * mpq_class(sphere_resolution) * mpq_class(sphere_resolution);
    mpz_class whole = scaled.get_num() / scaled.get_den();
    mpz_class root = sqrt(whole);
    return u * Rat(mpq_class(root, mpz_class(3 * sphere_resolution)));
}

/// Lipschitz constant of (1 - x^2)^{3/2} / 3 on [-1, 1]; the PL boundary stays
/// within sphere_error_constant * mesh of the curve in the t-direction.
inline Rat sphere_error_constant() { return Rat(1, 2); }

/// PL model of {-h(x) <= t < h(x), |x| < 1} with h(x) = (1 - x^2)^{3/2} / 3,
/// scaled by (x, t) -> (epsilon x, epsilon^2 t). The x-grid starts at -1 with
/// step `mesh` and always contains 1. Lower edges and vertices are included,
/// upper ones excluded, interior vertical edges included.
inline PlaneRegion sphere_region(const Rat& mesh, const Rat& epsilon = Rat(1)) {
    if (!mesh.is_finite() || mesh.sign() <= 0 || Rat(1, 2) < mesh) throw parameter_error("mesh must lie in (0, 1/2]");
    if (!epsilon.is_finite() || epsilon.sign() <= 0) throw parameter_error("epsilon must be positive");
    std::vector<Rat> xs;
    for (Rat x(-1); x < Rat(1); x += mesh) xs.push_back(x);
    xs.push_back(Rat(1));
    std::vector<Polygon> polys;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const Rat &x0 = xs[i], &x1 = xs[i + 1];
        const Rat h0 = sphere_height(x0), h1 = sphere_height(x1);
        std::vector<Point> v;
        std::vector<bool> ein, vin;
        // counterclockwise: lower left, lower right, upper right, upper left
        if (h0.is_zero()) {
            v = {{x0, Rat(0)}, {x1, -h1}, {x1, h1}};
            ein = {true, true, false};
            vin = {false, true, false};
        } else if (h1.is_zero()) {
            v = {{x0, -h0}, {x1, Rat(0)}, {x0, h0}};
            ein = {true, false, true};
            vin = {true, false, false};
        } else {
            v = {{x0, -h0}, {x1, -h1}, {x1, h1}, {x0, h0}};
            ein = {true, true, false, true};
            vin = {true, true, false, false};
        }
        for (Point& p : v) p = {p.x * epsilon, p.t * epsilon * epsilon};
        polys.emplace_back(v, ein, vin);
    }
    return PlaneRegion(polys);
}

}  // namespace tamarkin::plane
