// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <nirom/app.hpp>
#include <nirom/io.hpp>
#include <nirom/preprocess.hpp>

using namespace nirom;
namespace fs = std::filesystem;

namespace
{

/// Scratch directory removed at scope exit.
struct TempDir
{
    fs::path path;

    explicit TempDir(const std::string& tag)
    {
        path = fs::temp_directory_path() / ("nirom-test-" + tag + "-" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream(path) << text;
}

std::string slurp(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

nlohmann::json load_json(const std::string& path) { return nlohmann::json::parse(slurp(path)); }

const nlohmann::json& problem(const nlohmann::json& rep, const std::string& cls, const std::string& mode)
{
    for (const auto& p : rep["residuals"])
        if (p["class"] == cls && p["mode"] == mode)
            return p;
    throw std::runtime_error("no such problem");
}

} // namespace

TEST_CASE("generate")
{
    TempDir dir("generate");
    std::ostringstream log;
    SUBCASE("default plume")
    {
        REQUIRE(cmd_generate("", dir / "data.csv", log) == kExitOk);
        const TimeSeriesData d = read_csv(dir / "data.csv");
        CHECK(d.Z.rows() == 16);
        CHECK(d.Z.cols() == 180);
        CHECK(d.U.rows() == 1);
        const std::string text = slurp(dir / "data.csv");
        CHECK(std::count(text.begin(), text.end(), '\n') == 181);
        const auto truth = load_json(dir / "data.csv.truth.json");
        CHECK(truth["delay"].size() == 16);
    }
    SUBCASE("zero flux")
    {
        write_file(dir / "zero.cfg", "flux_scale = 0\n");
        REQUIRE(cmd_generate(dir / "zero.cfg", dir / "zero.csv", log) == kExitOk);
        CHECK(read_csv(dir / "zero.csv").Z.isZero(0.0));
    }
    SUBCASE("determinism")
    {
        write_file(dir / "r.cfg", "generator = random\nseed = 7\norder = 4\noutputs = 3\nN = 50\n");
        REQUIRE(cmd_generate(dir / "r.cfg", dir / "a.csv", log) == kExitOk);
        REQUIRE(cmd_generate(dir / "r.cfg", dir / "b.csv", log) == kExitOk);
        CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
        CHECK(slurp(dir / "a.csv.truth.model") == slurp(dir / "b.csv.truth.model"));
        REQUIRE(cmd_generate("", dir / "p1.csv", log) == kExitOk);
        REQUIRE(cmd_generate("", dir / "p2.csv", log) == kExitOk);
        CHECK(slurp(dir / "p1.csv") == slurp(dir / "p2.csv"));
    }
    SUBCASE("errors")
    {
        write_file(dir / "bad.cfg", "colour = red\n");
        CHECK(cmd_generate(dir / "bad.cfg", dir / "x.csv", log) == kExitConfig);
        CHECK(cmd_generate(dir / "missing.cfg", dir / "x.csv", log) == kExitConfig);
        write_file(dir / "bad2.cfg", "boundary = sideways\n");
        CHECK(cmd_generate(dir / "bad2.cfg", dir / "x.csv", log) == kExitConfig);
        CHECK(cmd_generate("", dir / "no/such/dir/x.csv", log) == kExitIo);
    }
}

TEST_CASE("fit, simulate and evaluate")
{
    TempDir dir("fit");
    std::ostringstream log;
    REQUIRE(cmd_generate("", dir / "data.csv", log) == kExitOk);
    REQUIRE(cmd_fit(dir / "data.csv", "", dir / "rom.model", "", log) == kExitOk);
    const auto rep = load_json(dir / "rom.model.report.json");

    SUBCASE("report")
    {
        CHECK(rep["status"] == "ok");
        Index total = 0;
        for (const auto& n : rep["pencil_orders"])
            total += n.get<Index>();
        CHECK(rep["fom_order"].get<Index>() == total);
        CHECK(rep["order"] == 30);
        CHECK(rep["radius_after"].get<double>() < 1.0);
        CHECK(rep["delay"].size() == 16);
        CHECK(rep["singular_values"].size() > 30);
        const InferredModel m = read_model(dir / "rom.model");
        CHECK(m.model_class == ModelClass::Bilinear);
        CHECK(m.A.rows() == 30);
        CHECK(m.N.isZero(0.0));
        CHECK(m.metadata.count("pipeline.stabilize") == 1);
    }
    SUBCASE("bilinear fits the outputs at least as well as linear")
    {
        for (const std::string mode : {"structured", "full"})
            CHECK(problem(rep, "bilinear", mode)["output_residual"].get<double>() <=
                  problem(rep, "linear", mode)["output_residual"].get<double>() + 1e-12);
    }
    SUBCASE("step simulation reproduces the training outputs")
    {
        const SimulateInput step{SimulateInput::Kind::Step, "", 180};
        REQUIRE(cmd_simulate(dir / "rom.model", step, dir / "sim.csv", log) == kExitOk);
        REQUIRE(cmd_simulate(dir / "rom.model", step, dir / "sim2.csv", log) == kExitOk);
        CHECK(slurp(dir / "sim.csv") == slurp(dir / "sim2.csv"));

        const TimeSeriesData data = read_csv(dir / "data.csv");
        const TimeSeriesData sim = read_csv(dir / "sim.csv");
        const ProcessedData p = preprocess(data);
        const double res = problem(rep, "bilinear", "structured")["output_residual"].get<double>();
        // Overlap window of each row, restricted to the fitted columns 1..N-1.
        double sq = 0.0;
        for (Index j = 0; j < data.Z.rows(); ++j)
        {
            const Index t = p.delay.tau[static_cast<std::size_t>(j)];
            const Index len = std::min(180 - t, Index{179});
            sq += (sim.Z.row(j).segment(t, len) - p.Zd.row(j).head(len)).squaredNorm();
        }
        const double fit = std::sqrt(sq);
        CHECK(fit <= res * (1.0 + 1e-6) + 1e-9 * p.Zd.norm());

        REQUIRE(cmd_evaluate(dir / "data.csv", dir / "sim.csv", dir / "eval.json", dir / "plots", log) ==
                kExitOk);
        const auto ev = load_json(dir / "eval.json");
        CHECK(ev["mean_summary"].get<double>() <= 0.05);
        CHECK(ev["max_summary"].get<double>() <= 0.15);
        CHECK(fs::exists(dir / "plots/mismatch.csv"));
        CHECK(fs::exists(dir / "plots/relative_error.csv"));
        CHECK(fs::exists(dir / "plots/snapshots.csv"));
    }
    SUBCASE("simulating from an input file")
    {
        const SimulateInput file{SimulateInput::Kind::File, dir / "data.csv", 0};
        const SimulateInput step{SimulateInput::Kind::Step, "", 180};
        REQUIRE(cmd_simulate(dir / "rom.model", file, dir / "f.csv", log) == kExitOk);
        REQUIRE(cmd_simulate(dir / "rom.model", step, dir / "s.csv", log) == kExitOk);
        CHECK(read_csv(dir / "f.csv").Z == read_csv(dir / "s.csv").Z);
    }
    SUBCASE("order above the available points")
    {
        write_file(dir / "big.cfg", "order = 400\n");
        CHECK(cmd_fit(dir / "data.csv", dir / "big.cfg", dir / "big.model", dir / "big.json", log) ==
              kExitNumerical);
        const auto err = load_json(dir / "big.json");
        CHECK(err["status"] == "error");
        CHECK(err["error"] == "TargetOrderTooLarge");
        CHECK_FALSE(fs::exists(dir / "big.model"));
    }
    SUBCASE("configuration and I/O failures")
    {
        write_file(dir / "bad.cfg", "order = thirty\n");
        CHECK(cmd_fit(dir / "data.csv", dir / "bad.cfg", dir / "x.model", "", log) == kExitConfig);
        write_file(dir / "bad2.cfg", "speed = 3\n");
        CHECK(cmd_fit(dir / "data.csv", dir / "bad2.cfg", dir / "x.model", "", log) == kExitConfig);
        CHECK(cmd_fit(dir / "missing.csv", "", dir / "x.model", "", log) == kExitIo);
        const SimulateInput step{SimulateInput::Kind::Step, "", 10};
        CHECK(cmd_simulate(dir / "missing.model", step, dir / "x.csv", log) == kExitIo);
        CHECK(cmd_evaluate(dir / "data.csv", dir / "missing.csv", dir / "x.json", std::nullopt, log) ==
              kExitIo);
    }
}

TEST_CASE("simulate and evaluate edge cases")
{
    TempDir dir("edge");
    std::ostringstream log;
    SUBCASE("order-zero model")
    {
        InferredModel m = InferredModel::linear(MatrixXd(0, 0), MatrixXd(0, 1), MatrixXd(2, 0),
                                                MatrixXd::Zero(2, 1));
        m.normalize();
        write_model(dir / "zero.model", m);
        const SimulateInput imp{SimulateInput::Kind::Impulse, "", 25};
        REQUIRE(cmd_simulate(dir / "zero.model", imp, dir / "z.csv", log) == kExitOk);
        const TimeSeriesData d = read_csv(dir / "z.csv");
        CHECK(d.Z.rows() == 2);
        CHECK(d.Z.cols() == 25);
        CHECK(d.Z.isZero(0.0));
        CHECK(d.U(0, 0) == 1.0);
    }
    SUBCASE("identical files")
    {
        REQUIRE(cmd_generate("", dir / "a.csv", log) == kExitOk);
        REQUIRE(cmd_evaluate(dir / "a.csv", dir / "a.csv", dir / "e.json", std::nullopt, log) == kExitOk);
        const auto ev = load_json(dir / "e.json");
        CHECK(ev["max_summary"] == 0.0);
        CHECK(ev["mean_summary"] == 0.0);
    }
    SUBCASE("shape mismatch")
    {
        write_file(dir / "gen.cfg", "generator = random\norder = 3\noutputs = 2\nN = 40\n");
        write_file(dir / "gen2.cfg", "generator = random\norder = 3\noutputs = 3\nN = 40\n");
        REQUIRE(cmd_generate(dir / "gen.cfg", dir / "a.csv", log) == kExitOk);
        REQUIRE(cmd_generate(dir / "gen2.cfg", dir / "b.csv", log) == kExitOk);
        CHECK(cmd_evaluate(dir / "a.csv", dir / "b.csv", dir / "e.json", std::nullopt, log) ==
              kExitNumerical);
        CHECK(load_json(dir / "e.json")["error"] == "ShapeMismatch");
    }
}
