#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tamarkin/cli/run.hpp"

using tamarkin::Rat;
using tamarkin::cli::RunConfig;

namespace {

void rat_option(CLI::App* app, const std::string& name, std::optional<Rat>& target, const std::string& help) {
    app->add_option_function<std::string>(
           name,
           [&target, name](const std::string& s) {
               auto r = Rat::parse(s);
               if (!r) throw CLI::ValidationError(name, "'" + s + "' is not a rational");
               target = *r;
           },
           help)
        ->type_name("RAT");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Interleaving distances, torsion and energy bounds on exact barcode, Novikov and planar sheaf models"};
    app.require_subcommand(1);

    std::string field;
    app.add_option("--field", field, "coefficient field: f2, f3, f5, f7 or q")->check(CLI::IsMember({"f2", "f3", "f5", "f7", "q"}));
    app.add_option("--seed", cfg.seed, "seed for every random choice");
    app.add_option("--jobs", cfg.jobs, "worker threads for parallel operations")->check(CLI::PositiveNumber);
    rat_option(&app, "--precision", cfg.precision, "Novikov truncation precision");

    auto inputs = [&](CLI::App* sub, const std::string& help) { sub->add_option("inputs", cfg.inputs, help); };

    auto* distance = app.add_subcommand("distance", "translation distance between two barcodes");
    inputs(distance, "F.bc G.bc");
    distance->add_option("--certificate", cfg.certificate, "write the verified witness certificate here");

    auto* interleaved = app.add_subcommand("interleaved", "decide whether two barcodes are (a, b)-interleaved");
    inputs(interleaved, "F.bc G.bc");
    rat_option(interleaved, "--a", cfg.a, "shift a");
    rat_option(interleaved, "--b", cfg.b, "shift b");
    interleaved->add_option("--certificate", cfg.certificate, "write the certificate here when the answer is yes");

    auto* torsion = app.add_subcommand("torsion", "torsion threshold of a barcode");
    inputs(torsion, "F.bc");

    auto* energy = app.add_subcommand("energy", "energy e_D(F, G) from Hom persistence");
    inputs(energy, "F.bc G.bc");
    energy->add_flag("--deg0-only", cfg.deg0_only, "use only degree-0 Hom");
    energy->add_option("--report", cfg.report, "write the per-degree report here");

    auto* novikov = app.add_subcommand("novikov", "torsion exponent of the Novikov Hom module");
    inputs(novikov, "F.bc G.bc");
    rat_option(novikov, "--precision", cfg.precision, "Novikov truncation precision");

    auto* morse = app.add_subcommand("morse", "persistence of a filtered or Novikov complex");
    inputs(morse, "complex file");
    morse->add_flag("--quotient", cfg.quotient, "quotient persistence instead of sublevel");

    auto* estimate = app.add_subcommand("morse-estimate", "max-min energy estimate of a Morse graph");
    inputs(estimate, "graph file");

    auto* plane = app.add_subcommand("plane", "sheaf computations on planar regions");
    plane->require_subcommand(1);
    auto* hom = plane->add_subcommand("hom", "dimensions of Hom(k_Z, k_Zp[n])");
    inputs(hom, "Z.region Zp.region");
    auto* sweep = plane->add_subcommand("sweep", "vanishing threshold of Hom(k_Z, k_Zp) -> Hom(k_Z, T_c k_Zp)");
    inputs(sweep, "Z.region [Zp.region]");
    rat_option(sweep, "--cmax", cfg.cmax, "largest shift");
    rat_option(sweep, "--mesh", cfg.mesh, "mesh of the sphere model (used when no region is given)");
    rat_option(sweep, "--epsilon", cfg.epsilon, "scale of the sphere model");

    auto* example = app.add_subcommand("example", "example generators");
    example->require_subcommand(1);
    auto* sphere = example->add_subcommand("sphere", "PL sphere-immersion region");
    rat_option(sphere, "--mesh", cfg.mesh, "x-grid step");
    rat_option(sphere, "--epsilon", cfg.epsilon, "scale (x, t) -> (epsilon x, epsilon^2 t)");
    sphere->add_option("--out", cfg.out, "write the region here");
    auto* circle = example->add_subcommand("circle", "one-form on the circle enclosing areas A+ and A-");
    rat_option(circle, "--aplus", cfg.aplus, "area A+");
    rat_option(circle, "--aminus", cfg.aminus, "area A-");
    auto* graph = example->add_subcommand("constant-vs-graph", "constant section against the graph of phi");
    graph->add_option("--values", cfg.values, "comma-separated sample values of phi")->required();
    auto* random = example->add_subcommand("random-barcode", "seeded random barcode");
    random->add_option("--bars", cfg.bars, "number of bars");
    random->add_option("--out", cfg.out, "write the barcode here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return tamarkin::cli::Exit::input;
    }

    if (!field.empty()) cfg.field = tamarkin::parse_field_tag(field);
    for (CLI::App* sub = &app; !sub->get_subcommands().empty();) {
        sub = sub->get_subcommands().front();
        cfg.command += (cfg.command.empty() ? "" : " ") + sub->get_name();
    }
    return tamarkin::cli::run(cfg, std::cout, std::cerr);
}
