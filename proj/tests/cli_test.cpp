#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "tamarkin/cli/run.hpp"

using namespace tamarkin;
using cli::Exit;
using cli::RunConfig;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("tamarkin_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& body) {
        std::string p = (dir_ / name).string();
        text::write_file(p, body);
        return p;
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    struct Outcome {
        int status;
        std::string out, err;
    };
    static Outcome exec(const RunConfig& cfg) {
        std::ostringstream out, err;
        int status = cli::run(cfg, out, err);
        return {status, out.str(), err.str()};
    }

    std::filesystem::path dir_;
};

RunConfig command(std::string name, std::vector<std::string> inputs = {}) {
    RunConfig c;
    c.command = std::move(name);
    c.inputs = std::move(inputs);
    return c;
}

const char* kF = "barcode v1\nfield f2\nbar degree=0 birth=0 death=4\n";
const char* kG = "barcode v1\nfield f2\nbar degree=0 birth=1 death=3\n";

}  // namespace

TEST_F(Cli, DistanceExampleWritesVerifiedCertificate) {
    RunConfig c = command("distance", {file("F.bc", kF), file("G.bc", kG)});
    c.certificate = path("out.cert");
    Outcome o = exec(c);
    ASSERT_EQ(o.status, Exit::ok) << o.err;
    EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "2 attained");
    BarcodeDocument f = parse_barcode(kF), g = parse_barcode(kG);
    auto cert = interleave::parse_certificate<F2>(text::read_file(c.certificate), f.barcode, g.barcode, c.certificate);
    EXPECT_TRUE(cert.verify());
    EXPECT_EQ(cert.a + cert.b, Rat(2));
}

TEST_F(Cli, TorsionOfEmptyBarcodeIsZero) {
    Outcome o = exec(command("torsion", {file("empty.bc", "barcode v1\nfield f2\n")}));
    EXPECT_EQ(o.status, Exit::ok);
    EXPECT_EQ(o.out, "0\n");
}

TEST_F(Cli, ParseErrorsArePositioned) {
    Outcome o = exec(command("torsion", {file("bad.bc", "barcode v1\nfield f2\nbar degree=0 birth=1 death=x\n")}));
    EXPECT_EQ(o.status, Exit::input);
    EXPECT_NE(o.err.find("bad.bc:3:"), std::string::npos) << o.err;

    Outcome r = exec(command("plane hom", {file("a.region", "region v1\npolygon\nvertex 0 0\nvertex 1 0\nvertex 2 0\n"),
                                           file("b.region", "region v1\n")}));
    EXPECT_EQ(r.status, Exit::input);
    EXPECT_NE(r.err.find("a.region:2:1"), std::string::npos) << r.err;

    Outcome m = exec(command("morse-estimate", {file("g.morse", "morsegraph v1\npoint id=p index=1 value=2\nconnect p q\n")}));
    EXPECT_EQ(m.status, Exit::input);
    EXPECT_NE(m.err.find("g.morse:3:"), std::string::npos) << m.err;
}

TEST_F(Cli, FieldMismatchIsInputError) {
    std::string f = file("F.bc", kF), h = file("H.bc", "barcode v1\nfield f3\n");
    EXPECT_EQ(exec(command("distance", {f, h})).status, Exit::input);
    RunConfig c = command("torsion", {f});
    c.field = FieldTag::q;
    EXPECT_EQ(exec(c).status, Exit::input);
}

TEST_F(Cli, ExitStatusesAreDistinct) {
    EXPECT_EQ(exec(command("no-such-command")).status, Exit::input);
    EXPECT_EQ(exec(command("torsion", {path("missing.bc")})).status, Exit::input);

    RunConfig circle = command("example circle");
    circle.aplus = Rat(3);
    circle.aminus = Rat(3);
    EXPECT_EQ(exec(circle).status, Exit::precondition);

    RunConfig sphere = command("example sphere");
    sphere.mesh = Rat(1);
    EXPECT_EQ(exec(sphere).status, Exit::precondition);

    EXPECT_EQ(cli::exit_code(Error(Error::Kind::oracle_scope, "x")), Exit::unknown);
    EXPECT_EQ(cli::exit_code(Error(Error::Kind::verification, "x")), Exit::verification);
    std::set<int> codes{Exit::ok, Exit::input, Exit::precondition, Exit::unknown, Exit::verification};
    EXPECT_EQ(codes.size(), 5u);
}

TEST_F(Cli, SphereExampleThenSweepReportsTwoThirds) {
    RunConfig gen = command("example sphere");
    gen.mesh = Rat(1, 10);
    gen.out = path("s.region");
    ASSERT_EQ(exec(gen).status, Exit::ok);
    RunConfig sweep = command("plane sweep", {gen.out});
    sweep.cmax = Rat(1);
    Outcome o = exec(sweep);
    ASSERT_EQ(o.status, Exit::ok) << o.err;
    EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "threshold 2/3");
    EXPECT_NE(o.out.find("provenance:"), std::string::npos);
}

TEST_F(Cli, EnergyReportListsBarsAndValue) {
    RunConfig c = command("energy", {file("F.bc", kF), file("G.bc", kG)});
    c.report = path("r.txt");
    Outcome o = exec(c);
    ASSERT_EQ(o.status, Exit::ok) << o.err;
    EXPECT_EQ(o.out, "2\n");
    std::string report = text::read_file(c.report);
    EXPECT_NE(report.find("degree 0: [1, 3)"), std::string::npos) << report;
    EXPECT_NE(report.find("e_D = 2"), std::string::npos) << report;
}

TEST_F(Cli, ExampleGeneratorsAgreeWithTheirModels) {
    RunConfig circle = command("example circle");
    circle.aplus = Rat(5, 2);
    circle.aminus = Rat(7);
    Outcome o = exec(circle);
    ASSERT_EQ(o.status, Exit::ok) << o.err;
    EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "5/2");

    RunConfig graph = command("example constant-vs-graph");
    graph.values = "1/2,-1,3";
    Outcome g = exec(graph);
    ASSERT_EQ(g.status, Exit::ok) << g.err;
    EXPECT_NE(g.out.find("= 4\n"), std::string::npos) << g.out;
    graph.values = "1,,2";
    EXPECT_EQ(exec(graph).status, Exit::input);
}

TEST_F(Cli, OutputIsDeterministicOverTwentyRuns) {
    std::string f = file("F.bc", kF), g = file("G.bc", kG);
    RunConfig gen = command("example sphere");
    gen.mesh = Rat(1, 4);
    gen.out = path("s.region");
    ASSERT_EQ(exec(gen).status, Exit::ok);

    std::vector<RunConfig> configs;
    RunConfig d = command("distance", {f, g});
    d.certificate = path("d.cert");
    configs.push_back(d);
    RunConfig e = command("energy", {f, g});
    e.report = path("e.txt");
    configs.push_back(e);
    RunConfig s = command("plane sweep", {gen.out});
    s.cmax = Rat(1);
    s.jobs = 3;
    configs.push_back(s);
    RunConfig r = command("example random-barcode");
    r.seed = 12345;
    r.bars = 6;
    configs.push_back(r);

    for (const RunConfig& c : configs) {
        Outcome first = exec(c);
        ASSERT_EQ(first.status, Exit::ok) << c.command << ": " << first.err;
        std::string file_first = c.certificate.empty() ? (c.report.empty() ? "" : text::read_file(c.report)) : text::read_file(c.certificate);
        for (int run = 1; run < 20; ++run) {
            Outcome again = exec(c);
            EXPECT_EQ(again.status, first.status);
            EXPECT_EQ(again.out, first.out) << c.command;
            std::string file_again = c.certificate.empty() ? (c.report.empty() ? "" : text::read_file(c.report)) : text::read_file(c.certificate);
            EXPECT_EQ(file_again, file_first) << c.command;
        }
    }

    RunConfig other = r;
    other.seed = 54321;
    EXPECT_NE(exec(other).out, exec(r).out);
}
