#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tamarkin/core/barcode_io.hpp"
#include "tamarkin/core/text.hpp"
#include "tamarkin/energy/hom_persistence.hpp"
#include "tamarkin/energy/novikov_module.hpp"
#include "tamarkin/interleave/distance.hpp"
#include "tamarkin/interleave/lemmas.hpp"
#include "tamarkin/morse/morse_io.hpp"
#include "tamarkin/plane/region_io.hpp"
#include "tamarkin/plane/sweep.hpp"
#include "tamarkin/morse/novikov_complex.hpp"

namespace tamarkin::cli {

/// Exit statuses of the command-line tool.
enum Exit : int {
    ok = 0,
    other = 1,
    input = 2,         // unreadable or malformed input, field mismatch, bad usage
    precondition = 3,  // a documented precondition of the operation fails
    unknown = 4,       // the outcome lies outside the exhaustive search bound
    verification = 5,  // a produced certificate failed to verify
};

/// Everything one invocation needs. `command` is the subcommand path, e.g.
/// "distance", "plane sweep" or "example sphere".
struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<FieldTag> field;
    std::optional<Rat> precision;
    unsigned jobs = 1;
    std::uint64_t seed = 0;

    std::optional<Rat> a, b, cmax, mesh, epsilon, aplus, aminus;
    std::string values;  // comma-separated rationals
    int bars = 4;
    bool deg0_only = false;
    bool quotient = false;

    std::string certificate;  // output paths; empty means not requested
    std::string report;
    std::string out;
};

inline int exit_code(const Error& e) {
    switch (e.kind()) {
        case Error::Kind::input: return Exit::input;
        case Error::Kind::oracle_scope: return Exit::unknown;
        case Error::Kind::verification: return Exit::verification;
        default: return Exit::precondition;
    }
}

namespace detail {

inline std::string join(const std::vector<Rat>& xs) {
    std::string s;
    for (const Rat& x : xs) s += (s.empty() ? "" : " ") + x.to_string();
    return s;
}

inline std::string bars_text(const GradedBarcode& b) {
    std::string s;
    for (const Bar& x : b.sorted())
        s += "  degree " + std::to_string(x.degree) + ": [" + x.birth.to_string() + ", " + x.death.to_string() + ")\n";
    return s.empty() ? "  (none)\n" : s;
}

/// Calls body.template operator()<K>() for the field named by tag.
template <class Body>
decltype(auto) with_field(FieldTag tag, Body&& body) {
    switch (tag) {
        case FieldTag::f2: return body.template operator()<F2>();
        case FieldTag::f3: return body.template operator()<F3>();
        case FieldTag::f5: return body.template operator()<Fp<5>>();
        case FieldTag::f7: return body.template operator()<Fp<7>>();
        default: return body.template operator()<Q>();
    }
}

inline void need_inputs(const RunConfig& cfg, std::size_t n) {
    if (cfg.inputs.size() != n)
        throw Error(Error::Kind::input, "'" + cfg.command + "' expects " + std::to_string(n) + " input file(s), got " + std::to_string(cfg.inputs.size()));
}

template <class T>
const T& need(const std::optional<T>& v, const std::string& flag) {
    if (!v) throw Error(Error::Kind::input, "missing required option " + flag);
    return *v;
}

/// Barcodes from the inputs, which must all declare the same field (and match
/// --field when given).
inline std::pair<FieldTag, std::vector<GradedBarcode>> load_barcodes(const RunConfig& cfg, std::size_t n) {
    need_inputs(cfg, n);
    std::vector<GradedBarcode> out;
    std::optional<FieldTag> seen;
    for (const std::string& path : cfg.inputs) {
        BarcodeDocument d = parse_barcode(text::read_file(path), path);
        if (seen && *seen != d.field)
            throw Error(Error::Kind::input, "field mismatch: " + path + " uses " + to_string(d.field) + ", earlier input uses " + to_string(*seen));
        if (cfg.field && *cfg.field != d.field)
            throw Error(Error::Kind::input, "field mismatch: " + path + " uses " + to_string(d.field) + ", --field is " + to_string(*cfg.field));
        seen = d.field;
        out.push_back(d.barcode);
    }
    return {cfg.field.value_or(seen.value_or(FieldTag::f2)), out};
}

inline Rat precision_of(const RunConfig& cfg) { return cfg.precision.value_or(default_novikov_precision()); }

}  // namespace detail

inline int run_distance(const RunConfig& cfg, std::ostream& out) {
    auto [tag, bc] = detail::load_barcodes(cfg, 2);
    return detail::with_field(tag, [&]<Field K>() {
        auto r = interleave::translation_distance<K>(bc[0], bc[1]);
        if (!r.exact) {
            out << "unknown in [" << r.lower.to_string() << ", " << r.upper.to_string() << "]\n";
            return static_cast<int>(Exit::unknown);
        }
        out << r.value.to_string() << (r.attained ? " attained" : " approached") << "\n";
        out << "provenance: translation_distance over " << r.decisions << " is_interleaved decisions";
        if (r.witness) out << "; witness (a, b) = (" << r.witness_a.to_string() << ", " << r.witness_b.to_string() << ")";
        out << "\n";
        if (!cfg.certificate.empty()) {
            if (!r.witness) throw Error(Error::Kind::undefined, "no finite certificate exists (infinite distance)");
            std::string text = interleave::write_certificate(*r.witness);
            auto back = interleave::parse_certificate<K>(text, bc[0], bc[1], cfg.certificate);
            back.require_verified("certificate re-read");
            text::write_file(cfg.certificate, text);
            out << "certificate: " << cfg.certificate << " (verified)\n";
        }
        return static_cast<int>(Exit::ok);
    });
}

inline int run_interleaved(const RunConfig& cfg, std::ostream& out) {
    auto [tag, bc] = detail::load_barcodes(cfg, 2);
    const Rat a = detail::need(cfg.a, "--a"), b = detail::need(cfg.b, "--b");
    return detail::with_field(tag, [&]<Field K>() {
        auto d = interleave::is_interleaved<K>(bc[0], bc[1], a, b);
        out << interleave::to_string(d.decision) << "\n";
        if (d.decision == interleave::Decision::unknown) return static_cast<int>(Exit::unknown);
        if (d.certificate && !cfg.certificate.empty()) {
            std::string text = interleave::write_certificate(*d.certificate);
            interleave::parse_certificate<K>(text, bc[0], bc[1], cfg.certificate).require_verified("certificate re-read");
            text::write_file(cfg.certificate, text);
            out << "certificate: " << cfg.certificate << " (verified)\n";
        }
        return static_cast<int>(Exit::ok);
    });
}

inline int run_torsion(const RunConfig& cfg, std::ostream& out) {
    auto [tag, bc] = detail::load_barcodes(cfg, 1);
    (void)tag;
    out << torsion_threshold(bc[0]).to_string() << "\n";
    return Exit::ok;
}

inline int run_energy(const RunConfig& cfg, std::ostream& out) {
    auto [tag, bc] = detail::load_barcodes(cfg, 2);
    (void)tag;
    GradedBarcode h = cfg.deg0_only ? energy::hom_persistence_deg0(bc[0], bc[1]) : energy::hom_persistence(bc[0], bc[1]);
    Rat e = torsion_threshold(h);
    std::string report = "hom persistence in c (degree = cohomological degree of the Hom complex)\n" + detail::bars_text(h) +
                         "e_D = " + e.to_string() + (cfg.deg0_only ? " (degree 0 only)" : "") + "\n" +
                         "provenance: " + cfg.inputs[0] + ", " + cfg.inputs[1] + " -> hom_persistence -> torsion_threshold\n";
    if (!cfg.report.empty()) text::write_file(cfg.report, report);
    out << e.to_string() << "\n";
    return Exit::ok;
}

inline int run_novikov(const RunConfig& cfg, std::ostream& out) {
    auto [tag, bc] = detail::load_barcodes(cfg, 2);
    return detail::with_field(tag, [&]<Field K>() {
        auto p = energy::novikov_module<K>(bc[0], bc[1], detail::precision_of(cfg));
        auto t = energy::torsion_exponent(p);
        out << (t.free ? "inf free" : t.value.to_string()) << "\n";
        out << "generators " << p.generators << ", elementary exponents: " << detail::join(t.exponents) << "\n";
        return static_cast<int>(Exit::ok);
    });
}

inline int run_morse(const RunConfig& cfg, std::ostream& out) {
    detail::need_inputs(cfg, 1);
    const std::string& path = cfg.inputs[0];
    morse::FilteredDocument doc = morse::parse_filtered(text::read_file(path), path);
    if (cfg.field && *cfg.field != doc.field)
        throw Error(Error::Kind::input, "field mismatch: " + path + " uses " + to_string(doc.field) + ", --field is " + to_string(*cfg.field));
    return detail::with_field(doc.field, [&]<Field K>() {
        if (doc.novikov) {
            auto c = doc.novikov_complex<K>();
            int lo = 0, hi = 0;
            for (const auto& g : doc.generators) lo = std::min(lo, g.degree), hi = std::max(hi, g.degree);
            for (int k = lo; k <= hi; ++k) {
                auto t = energy::torsion_exponent(c.template homology_presentation(k));
                out << "H" << k << " torsion exponent " << (t.free ? std::string("inf free") : t.value.to_string())
                    << "; exponents: " << detail::join(t.exponents) << "\n";
            }
            return static_cast<int>(Exit::ok);
        }
        auto c = doc.field_complex<K>();
        GradedBarcode b = cfg.quotient ? morse::quotient_persistence(c) : morse::sublevel_persistence(c);
        out << write_barcode(b, doc.field);
        return static_cast<int>(Exit::ok);
    });
}

inline int run_morse_estimate(const RunConfig& cfg, std::ostream& out) {
    detail::need_inputs(cfg, 1);
    morse::MorseGraph g = morse::parse_morse_graph(text::read_file(cfg.inputs[0]), cfg.inputs[0]);
    out << morse::morse_energy_estimate(g).to_string() << "\n";
    return Exit::ok;
}

namespace detail {

inline plane::PlaneRegion load_region(const std::string& path) { return plane::parse_region(text::read_file(path), path); }

inline std::vector<Rat> parse_values(const std::string& list) {
    std::vector<Rat> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        std::size_t end = list.find(',', start);
        if (end == std::string::npos) end = list.size();
        std::string item = list.substr(start, end - start);
        auto r = Rat::parse(item);
        if (!r || !r->is_finite()) throw Error(Error::Kind::input, "--values: '" + item + "' is not a finite rational");
        out.push_back(*r);
        start = end + 1;
    }
    return out;
}

}  // namespace detail

inline int run_plane_hom(const RunConfig& cfg, std::ostream& out) {
    detail::need_inputs(cfg, 2);
    plane::PlaneRegion z = detail::load_region(cfg.inputs[0]), zp = detail::load_region(cfg.inputs[1]);
    return detail::with_field(cfg.field.value_or(FieldTag::f2), [&]<Field K>() {
        auto d = plane::derived_hom_dims<K>(z, zp);
        for (std::size_t n = 0; n < d.size(); ++n) out << "Hom^" << n << " " << d[n] << "\n";
        return static_cast<int>(Exit::ok);
    });
}

/// Sweeps Zp + c against Z for c in [0, cmax]. Zp is the second input when given,
/// else Z itself; with no input, Z is the sphere model at --mesh.
inline int run_plane_sweep(const RunConfig& cfg, std::ostream& out) {
    const Rat cmax = detail::need(cfg.cmax, "--cmax");
    plane::PlaneRegion z, zp;
    std::string source;
    if (cfg.inputs.empty()) {
        const Rat mesh = detail::need(cfg.mesh, "--mesh (or a region file)");
        z = plane::sphere_region(mesh, cfg.epsilon.value_or(Rat(1)));
        source = "sphere_region(mesh " + mesh.to_string() + ", epsilon " + cfg.epsilon.value_or(Rat(1)).to_string() + ")";
    } else if (cfg.inputs.size() <= 2) {
        z = detail::load_region(cfg.inputs[0]);
        source = cfg.inputs[0];
    } else {
        detail::need_inputs(cfg, 1);
    }
    zp = cfg.inputs.size() == 2 ? detail::load_region(cfg.inputs[1]) : z;
    plane::SweepResult r = plane::hom_sweep(z, zp, cmax, cfg.jobs);
    out << "threshold " << r.threshold.to_string() << "\n";
    out << "base hom dimension " << r.base_dim << "\n";
    out << "critical shifts " << r.critical.size() << ", samples " << r.samples.size() << "\n";
    std::size_t last = static_cast<std::size_t>(-1);
    for (const plane::SweepSample& s : r.samples)
        if (s.hom_dim != last) {
            out << "  from c = " << s.c.to_string() << ": dim Hom " << s.hom_dim << (s.composite_zero ? " (composite zero)" : "") << "\n";
            last = s.hom_dim;
        }
    if (cfg.mesh) {
        Rat err = plane::sphere_error_constant() * *cfg.mesh;
        out << "mesh " << cfg.mesh->to_string() << ", boundary error bound " << err.to_string() << "\n";
    }
    out << "provenance: " << source << " -> arrangement -> constant sheaves -> degree-0 Hom at critical shifts and midpoints\n";
    return Exit::ok;
}

inline int run_example_sphere(const RunConfig& cfg, std::ostream& out) {
    const Rat mesh = detail::need(cfg.mesh, "--mesh");
    std::string doc = plane::write_region(plane::sphere_region(mesh, cfg.epsilon.value_or(Rat(1))));
    if (cfg.out.empty()) {
        out << doc;
    } else {
        text::write_file(cfg.out, doc);
        out << "wrote " << cfg.out << "\n";
    }
    return Exit::ok;
}

inline int run_example_circle(const RunConfig& cfg, std::ostream& out) {
    const Rat ap = detail::need(cfg.aplus, "--aplus"), am = detail::need(cfg.aminus, "--aminus");
    return detail::with_field(cfg.field.value_or(FieldTag::f2), [&]<Field K>() {
        auto c = morse::circle_one_form<K>(ap, am, detail::precision_of(cfg));
        Rat nov = morse::circle_energy_novikov(c), quo = morse::circle_energy_quotient(c);
        out << nov.to_string() << "\n";
        out << "novikov torsion exponent " << nov.to_string() << ", quotient persistence " << quo.to_string()
            << ", min(A+, A-) " << c.expected_energy.to_string() << "\n";
        if (nov != quo || nov != c.expected_energy) throw verification_error("circle energy paths disagree");
        return static_cast<int>(Exit::ok);
    });
}

/// The graph of phi against the constant section, on one fibre per sample value v:
/// F = [0, inf) and G = F moved by v, joined by a pure-shift certificate whose
/// total |v| is checked against max(phi, 0) - min(phi, 0).
inline int run_example_constant_vs_graph(const RunConfig& cfg, std::ostream& out) {
    if (cfg.values.empty()) throw Error(Error::Kind::input, "missing required option --values");
    std::vector<Rat> vs = detail::parse_values(cfg.values);
    Rat hi(0), lo(0);
    for (const Rat& v : vs) hi = max(hi, v), lo = min(lo, v);
    const Rat bound = hi - lo;
    return detail::with_field(cfg.field.value_or(FieldTag::f2), [&]<Field K>() {
        GradedBarcode f;
        f.add(Bar(Rat(0), Rat::infinity(), 0));
        for (const Rat& v : vs) {
            auto [g, cert] = interleave::pure_shift_certificate<K>(f, -v);
            Rat total = cert.a + cert.b;
            Rat d = interleave::translation_distance<K>(f, g).value;
            out << "value " << v.to_string() << ": certificate (" << cert.a.to_string() << ", " << cert.b.to_string()
                << "), distance " << d.to_string() << "\n";
            if (bound < total || total < d) throw verification_error("value " + v.to_string() + " breaks the bound");
        }
        out << "bound max(phi, 0) - min(phi, 0) = " << bound.to_string() << "\n";
        out << "provenance: pure_shift_certificate per value, checked against translation_distance\n";
        return static_cast<int>(Exit::ok);
    });
}

/// A barcode of --bars bars with endpoints in {0, 1/2, ..., 4} and degrees in {0, 1},
/// drawn from --seed.
inline int run_example_random_barcode(const RunConfig& cfg, std::ostream& out) {
    if (cfg.bars < 0) throw parameter_error("--bars must be >= 0");
    std::mt19937_64 rng(cfg.seed);
    GradedBarcode b;
    for (int i = 0; i < cfg.bars; ++i) {
        long x = static_cast<long>(rng() % 9), y = static_cast<long>(rng() % 9);
        if (x == y) y = x + 1;
        if (y < x) std::swap(x, y);
        bool infinite = rng() % 5 == 0;
        b.add(Bar(Rat(x, 2), infinite ? Rat::infinity() : Rat(y, 2), static_cast<int>(rng() % 2)));
    }
    std::string doc = write_barcode(b, cfg.field.value_or(FieldTag::f2));
    if (cfg.out.empty()) {
        out << doc;
    } else {
        text::write_file(cfg.out, doc);
        out << "wrote " << cfg.out << "\n";
    }
    return Exit::ok;
}

/// Runs one command; errors become a diagnostic on `err` and a nonzero status.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    using Handler = int (*)(const RunConfig&, std::ostream&);
    static const std::vector<std::pair<std::string, Handler>> table{
        {"distance", run_distance},
        {"interleaved", run_interleaved},
        {"torsion", run_torsion},
        {"energy", run_energy},
        {"novikov", run_novikov},
        {"morse", run_morse},
        {"morse-estimate", run_morse_estimate},
        {"plane hom", run_plane_hom},
        {"plane sweep", run_plane_sweep},
        {"example sphere", run_example_sphere},
        {"example circle", run_example_circle},
        {"example constant-vs-graph", run_example_constant_vs_graph},
        {"example random-barcode", run_example_random_barcode},
    };
    try {
        for (const auto& [name, handler] : table)
            if (name == cfg.command) {
                std::ostringstream buffer;
                int status = handler(cfg, buffer);
                out << buffer.str();
                return status;
            }
        err << "error: unknown subcommand '" << cfg.command << "'\n";
        return Exit::input;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return Exit::other;
    }
}

}  // namespace tamarkin::cli
