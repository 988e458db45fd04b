// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/app.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include <json.hpp>

#include <nirom/metrics.hpp>
#include <nirom/simulate.hpp>

namespace nirom
{

using json = nlohmann::ordered_json;

namespace
{

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f)
        throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

json vec_json(const VectorXd& v)
{
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i)
        a.push_back(v(i));
    return a;
}

json error_json(const Error& e)
{
    return json{{"status", "error"}, {"error", e.name()}, {"message", e.what()}};
}

// Stage guard: runs f and maps any Error to the given exit code.
template <typename F>
int staged(int code, std::ostream& log, F&& f)
{
    try
    {
        f();
        return kExitOk;
    }
    catch (const Error& e)
    {
        log << "error: " << e.what() << '\n';
        return code;
    }
    catch (const std::exception& e)
    {
        log << "error: " << e.what() << '\n';
        return code;
    }
}

std::vector<Index> index_list(const std::string& key, const std::string& value, std::size_t n)
{
    const auto words = split_words(value);
    if (words.size() != n)
        throw Error(ErrorCode::ParseError, "config key '" + key + "' expects " + std::to_string(n) +
                                               " values, got '" + value + "'");
    std::vector<Index> out;
    for (const auto& w : words)
    {
        Config c;
        c.set(key, w);
        out.push_back(c.get_index(key, 0));
    }
    return out;
}

} // namespace

//------------------------------------------------------------------------------
// Config translation
//------------------------------------------------------------------------------

const std::set<std::string>& fit_config_keys()
{
    static const std::set<std::string> keys = {
        "epsilon",   "pad",       "input_shape",   "pencil_tol",     "max_fom_order",
        "loewner_points", "omega_min", "omega_max", "directions",   "direction_seed",
        "order",     "rank_tol",  "stabilize",     "stability_margin", "model_class",
        "mode",      "ridge",     "rcond"};
    return keys;
}

const std::set<std::string>& generate_config_keys()
{
    static const std::set<std::string> keys = {
        "generator", "seed",   "nx",     "ny",      "dx",     "wind_x",  "wind_y",
        "kappa",     "N",      "h",      "substeps", "boundary", "source", "probe",
        "flux_scale", "order", "outputs", "rho",    "input",  "class"};
    return keys;
}

FitConfig fit_config_from(const Config& c)
{
    FitConfig f;
    if (c.has("epsilon"))
        f.epsilon = c.get_double("epsilon", 0.0);
    f.pad = pad_mode_from_string(c.get_string("pad", to_string(f.pad)));
    f.input_shape = input_shape_from_string(c.get_string("input_shape", to_string(f.input_shape)));
    f.pencil_tol = c.get_double("pencil_tol", f.pencil_tol);
    f.max_fom_order = c.get_index("max_fom_order", f.max_fom_order);
    f.loewner_points = c.get_index("loewner_points", f.loewner_points);
    f.omega_min = c.get_double("omega_min", f.omega_min);
    f.omega_max = c.get_double("omega_max", f.omega_max);
    f.directions.scheme =
        direction_scheme_from_string(c.get_string("directions", to_string(f.directions.scheme)));
    f.directions.seed = static_cast<std::uint64_t>(c.get_index("direction_seed", 0));
    const std::string order = c.get_string("order", "30");
    if (order == "auto")
        f.order.reset();
    else
        f.order = c.get_index("order", 30);
    f.rank_tol = c.get_double("rank_tol", f.rank_tol);
    f.stabilize = stabilize_mode_from_string(c.get_string("stabilize", to_string(f.stabilize)));
    f.stability_margin = c.get_double("stability_margin", f.stability_margin);
    f.model_class = model_class_from_string(c.get_string("model_class", to_string(f.model_class)));
    const std::string mode = c.get_string("mode", "structured");
    if (mode != "structured" && mode != "full")
        throw Error(ErrorCode::ParseError, "mode must be 'structured' or 'full'");
    f.structured = mode == "structured";
    f.inference.ridge = c.get_double("ridge", f.inference.ridge);
    f.inference.rcond = c.get_double("rcond", f.inference.rcond);
    return f;
}

PlumeConfig plume_config_from(const Config& c)
{
    PlumeConfig p = PlumeConfig::rough_mesh();
    p.nx = c.get_index("nx", p.nx);
    p.ny = c.get_index("ny", p.ny);
    p.dx = c.get_double("dx", p.dx);
    p.wind_x = c.get_double("wind_x", p.wind_x);
    p.wind_y = c.get_double("wind_y", p.wind_y);
    p.kappa = c.get_double("kappa", p.kappa);
    p.N = c.get_index("N", p.N);
    p.h = c.get_double("h", p.h);
    p.substeps = c.get_index("substeps", 1);
    const std::string boundary = c.get_string("boundary", "open");
    if (boundary != "open" && boundary != "periodic")
        throw Error(ErrorCode::ParseError, "boundary must be 'open' or 'periodic'");
    p.periodic = boundary == "periodic";
    if (c.has("source"))
    {
        p.sources.clear();
        for (const auto& s : c.get_all("source"))
        {
            const auto w = split_words(s);
            if (w.size() != 3)
                throw Error(ErrorCode::ParseError, "source expects 'i j flux', got '" + s + "'");
            const auto ij = index_list("source", w[0] + " " + w[1], 2);
            p.sources.push_back({ij[0], ij[1], parse_double(w[2])});
        }
    }
    if (c.has("probe"))
    {
        p.probes.clear();
        for (const auto& s : c.get_all("probe"))
        {
            const auto ij = index_list("probe", s, 2);
            p.probes.push_back({ij[0], ij[1]});
        }
    }
    const double scale = c.get_double("flux_scale", 1.0);
    for (auto& s : p.sources)
        s.flux *= scale;
    p.enforce_cfl();
    return p;
}

//------------------------------------------------------------------------------
// generate
//------------------------------------------------------------------------------

int cmd_generate(const std::string& config_path, const std::string& output_path, std::ostream& log)
{
    std::string generator;
    PlumeConfig plume;
    std::uint64_t seed = 0;
    Index q = 4, n_z = 1, N = 200;
    double rho = 0.9, h = 1.0;
    std::string input, cls;
    int code = staged(kExitConfig, log, [&] {
        const Config cfg =
            config_path.empty() ? Config() : Config::load(config_path, generate_config_keys());
        generator = cfg.get_string("generator", "plume");
        if (generator != "plume" && generator != "random")
            throw Error(ErrorCode::ParseError, "generator must be 'plume' or 'random'");
        if (generator == "plume")
        {
            plume = plume_config_from(cfg);
            return;
        }
        seed = static_cast<std::uint64_t>(cfg.get_index("seed", 0));
        q = cfg.get_index("order", q);
        n_z = cfg.get_index("outputs", n_z);
        rho = cfg.get_double("rho", rho);
        N = cfg.get_index("N", N);
        h = cfg.get_double("h", h);
        input = cfg.get_string("input", "noise");
        cls = cfg.get_string("class", "linear");
        if (input != "impulse" && input != "step" && input != "noise")
            throw Error(ErrorCode::ParseError, "input must be impulse, step or noise");
        if (cls != "linear" && cls != "bilinear")
            throw Error(ErrorCode::ParseError, "class must be linear or bilinear");
    });
    if (code != kExitOk)
        return code;

    TimeSeriesData data;
    json truth;
    std::optional<InferredModel> truth_model;
    code = staged(kExitNumerical, log, [&] {
        if (generator == "plume")
        {
            const PlumeResult r = make_plume(plume);
            data = r.data;
            truth["generator"] = "plume";
            truth["substeps"] = plume.substeps;
            truth["cfl"] = plume.cfl();
            truth["delay"] = r.truth_delay.tau;
            truth["mass"] = vec_json(r.mass);
            truth["min_concentration"] = r.min_concentration;
            return;
        }
        InferredModel m = cls == "bilinear" ? make_random_bilinear(q, n_z, seed, rho) : [&] {
            const Realization s = make_random_system(q, n_z, seed, rho);
            return InferredModel::linear(s.A, s.B, s.C, s.D);
        }();
        m.h = h;
        MatrixXd U;
        if (input == "impulse")
            U = impulse_input(1, N);
        else if (input == "step")
            U = step_input(1, N);
        else
        {
            std::mt19937_64 gen(seed + 1);
            std::uniform_real_distribution<double> uni(-1.0, 1.0);
            U.resize(1, N);
            for (Index k = 0; k < N; ++k)
                U(0, k) = uni(gen);
        }
        data = TimeSeriesData(h, h, U, simulate(m, U).Z);
        truth["generator"] = "random";
        truth["order"] = q;
        truth["class"] = to_string(m.model_class);
        truth["seed"] = seed;
        truth_model = m;
    });
    if (code != kExitOk)
        return code;

    return staged(kExitIo, log, [&] {
        write_csv(output_path, data);
        if (truth_model)
        {
            write_model(output_path + ".truth.model", *truth_model);
            truth["model"] = output_path + ".truth.model";
        }
        write_text(output_path + ".truth.json", truth.dump(2) + "\n");
        log << "wrote " << data.samples() << " samples, " << data.n_outputs() << " outputs to "
            << output_path << '\n';
    });
}

//------------------------------------------------------------------------------
// fit
//------------------------------------------------------------------------------

namespace
{

json report_json(const FitResult& r, const FitConfig& cfg)
{
    const FitReport& rep = r.report;
    json j;
    j["status"] = "ok";
    j["epsilon"] = rep.epsilon;
    j["delay"] = rep.delay.tau;
    j["pencil_orders"] = rep.pencil_orders;
    j["fom_order"] = rep.fom_order;
    j["loewner_points_per_side"] = rep.loewner_points_per_side;
    j["numerical_rank"] = rep.numerical_rank;
    j["rank_row"] = rep.rank_row;
    j["rank_col"] = rep.rank_col;
    j["order"] = rep.order;
    j["singular_values"] = vec_json(rep.singular_values);
    j["radius_before"] = rep.radius_before;
    j["radius_after"] = rep.radius_after;
    j["reflected"] = rep.reflected;
    j["discarded"] = rep.discarded;
    j["model_class"] = to_string(cfg.model_class);
    j["mode"] = cfg.structured ? "structured" : "full";
    json probs = json::array();
    for (const auto& p : rep.problems)
    {
        probs.push_back({{"class", to_string(p.model_class)},
                         {"mode", p.structured ? "structured" : "full"},
                         {"state_residual", p.residuals.state},
                         {"output_residual", p.residuals.output}});
    }
    j["residuals"] = probs;
    j["warnings"] = rep.warnings;
    return j;
}

} // namespace

int cmd_fit(const std::string& data_path, const std::string& config_path,
            const std::string& model_path, const std::string& report_path, std::ostream& log)
{
    const std::string report = report_path.empty() ? model_path + ".report.json" : report_path;
    FitConfig cfg;
    int code = staged(kExitConfig, log, [&] {
        if (!config_path.empty())
            cfg = fit_config_from(Config::load(config_path, fit_config_keys()));
    });
    if (code != kExitOk)
        return code;

    TimeSeriesData data;
    code = staged(kExitIo, log, [&] { data = read_csv(data_path); });
    if (code != kExitOk)
        return code;

    FitResult result;
    std::optional<Error> failure;
    try
    {
        result = fit(data, cfg);
    }
    catch (const Error& e)
    {
        failure = e;
        log << "error: " << e.what() << '\n';
    }

    code = staged(kExitIo, log, [&] {
        if (failure)
        {
            write_text(report, error_json(*failure).dump(2) + "\n");
            return;
        }
        write_model(model_path, result.model);
        write_text(report, report_json(result, cfg).dump(2) + "\n");
        log << "fitted order " << result.report.order << " model ("
            << to_string(result.model.model_class) << ") to " << model_path << '\n';
    });
    if (code != kExitOk)
        return code;
    return failure ? kExitNumerical : kExitOk;
}

//------------------------------------------------------------------------------
// simulate
//------------------------------------------------------------------------------

int cmd_simulate(const std::string& model_path, const SimulateInput& input,
                 const std::string& output_path, std::ostream& log)
{
    InferredModel model;
    MatrixXd U;
    double t1 = 0.0;
    int code = staged(kExitIo, log, [&] {
        model = read_model(model_path);
        t1 = model.h;
        if (input.kind == SimulateInput::Kind::File)
        {
            const TimeSeriesData in = read_csv(input.path);
            U = in.U;
            t1 = in.t1;
        }
    });
    if (code != kExitOk)
        return code;
    if (input.kind != SimulateInput::Kind::File)
    {
        code = staged(kExitConfig, log, [&] {
            require(input.N >= 2, ErrorCode::InvalidArgument, "need at least 2 samples");
            U = input.kind == SimulateInput::Kind::Impulse ? impulse_input(model.n_inputs(), input.N)
                                                           : step_input(model.n_inputs(), input.N);
        });
        if (code != kExitOk)
            return code;
    }

    TimeSeriesData out;
    code = staged(kExitNumerical, log, [&] {
        const SimulationResult sim = simulate(model, U);
        out = TimeSeriesData(model.h, t1, U, sim.Z);
    });
    if (code != kExitOk)
        return code;
    return staged(kExitIo, log, [&] { write_csv(output_path, out); });
}

//------------------------------------------------------------------------------
// evaluate
//------------------------------------------------------------------------------

int cmd_evaluate(const std::string& reference_path, const std::string& predicted_path,
                 const std::string& report_path, const std::optional<std::string>& plots_dir,
                 std::ostream& log)
{
    TimeSeriesData ref;
    TimeSeriesData pred;
    int code = staged(kExitIo, log, [&] {
        ref = read_csv(reference_path);
        pred = read_csv(predicted_path);
    });
    if (code != kExitOk)
        return code;

    MismatchStats ms;
    RelativeErrorField rel;
    std::optional<Error> failure;
    try
    {
        ms = mismatch_stats(ref.Z, pred.Z);
        rel = relative_error_field(ref.Z, pred.Z);
    }
    catch (const Error& e)
    {
        failure = e;
        log << "error: " << e.what() << '\n';
    }

    code = staged(kExitIo, log, [&] {
        if (failure)
        {
            write_text(report_path, error_json(*failure).dump(2) + "\n");
            return;
        }
        json j;
        j["status"] = "ok";
        j["normalization"] = to_string(Normalization::GlobalMax);
        j["scale"] = ms.scale;
        j["max_summary"] = ms.max_summary;
        j["mean_summary"] = ms.mean_summary;
        j["relative_error"] = {{"floor", rel.floor},
                               {"max_percent", rel.max_percent},
                               {"mean_percent", rel.mean_percent},
                               {"masked", rel.masked}};
        write_text(report_path, j.dump(2) + "\n");

        if (!plots_dir)
            return;
        std::error_code ec;
        std::filesystem::create_directories(*plots_dir, ec);
        if (ec)
            throw Error(ErrorCode::IoError, "cannot create '" + *plots_dir + "'");
        const std::filesystem::path dir(*plots_dir);

        std::string mm = "t,max_err,mean_err\n";
        for (Index k = 0; k < ref.samples(); ++k)
            mm += format_double(ref.time(k)) + "," + format_double(ms.max_err(k)) + "," +
                  format_double(ms.mean_err(k)) + "\n";
        write_text((dir / "mismatch.csv").string(), mm);

        std::string re = "t";
        for (Index j2 = 0; j2 < ref.n_outputs(); ++j2)
            re += ",z" + std::to_string(j2 + 1);
        re += "\n";
        for (Index k = 0; k < ref.samples(); ++k)
        {
            re += format_double(ref.time(k));
            for (Index j2 = 0; j2 < ref.n_outputs(); ++j2)
                re += "," + (rel.mask(j2, k) ? std::string() : format_double(rel.percent(j2, k)));
            re += "\n";
        }
        write_text((dir / "relative_error.csv").string(), re);

        std::string sn = "k,t,probe,reference,predicted\n";
        for (Index k = 0; k < ref.samples(); ++k)
        {
            for (Index j2 = 0; j2 < ref.n_outputs(); ++j2)
                sn += std::to_string(k + 1) + "," + format_double(ref.time(k)) + "," +
                      std::to_string(j2 + 1) + "," + format_double(ref.Z(j2, k)) + "," +
                      format_double(pred.Z(j2, k)) + "\n";
        }
        write_text((dir / "snapshots.csv").string(), sn);
    });
    if (code != kExitOk)
        return code;
    return failure ? kExitNumerical : kExitOk;
}

} // namespace nirom
