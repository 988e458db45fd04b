// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <nirom/app.hpp>

int main(int argc, char** argv)
{
    CLI::App app{"Non-intrusive reduced-order modeling from input/output records"};
    app.require_subcommand(1);

    std::string gen_config, gen_out;
    auto* gen = app.add_subcommand("generate", "Write synthetic data (plume or random system)");
    gen->add_option("-c,--config", gen_config, "generator config (key = value)");
    gen->add_option("-o,--output", gen_out, "output CSV")->required();

    std::string fit_data, fit_config, fit_model, fit_report;
    auto* fit = app.add_subcommand("fit", "Build a reduced model from a data CSV");
    fit->add_option("data", fit_data, "data CSV")->required();
    fit->add_option("-c,--config", fit_config, "fit config (key = value)");
    fit->add_option("-o,--model", fit_model, "model output file")->required();
    fit->add_option("-r,--report", fit_report, "report path (default <model>.report.json)");

    std::string sim_model, sim_input, sim_out;
    nirom::Index sim_impulse = 0, sim_step = 0;
    auto* sim = app.add_subcommand("simulate", "Run a model file on an input");
    sim->add_option("model", sim_model, "model file")->required();
    auto* in_opt = sim->add_option("-i,--input", sim_input, "input CSV (u columns are used)");
    auto* imp_opt = sim->add_option("--impulse", sim_impulse, "unit pulse of N samples");
    auto* step_opt = sim->add_option("--step", sim_step, "unit step of N samples");
    in_opt->excludes(imp_opt)->excludes(step_opt);
    imp_opt->excludes(step_opt);
    sim->add_option("-o,--output", sim_out, "output CSV")->required();

    std::string ev_ref, ev_pred, ev_report, ev_plots;
    auto* ev = app.add_subcommand("evaluate", "Compare a prediction with reference data");
    ev->add_option("reference", ev_ref, "reference CSV")->required();
    ev->add_option("predicted", ev_pred, "predicted CSV")->required();
    ev->add_option("-r,--report", ev_report, "report path")->required();
    ev->add_option("--plots", ev_plots, "directory for plot-ready CSV series");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : nirom::kExitConfig;
    }

    if (gen->parsed())
        return nirom::cmd_generate(gen_config, gen_out, std::cerr);
    if (fit->parsed())
        return nirom::cmd_fit(fit_data, fit_config, fit_model, fit_report, std::cerr);
    if (sim->parsed())
    {
        nirom::SimulateInput in;
        if (!sim_input.empty())
        {
            in.kind = nirom::SimulateInput::Kind::File;
            in.path = sim_input;
        }
        else if (*imp_opt)
        {
            in.kind = nirom::SimulateInput::Kind::Impulse;
            in.N = sim_impulse;
        }
        else if (*step_opt)
        {
            in.kind = nirom::SimulateInput::Kind::Step;
            in.N = sim_step;
        }
        else
        {
            std::cerr << "simulate: one of --input, --impulse or --step is required\n";
            return nirom::kExitConfig;
        }
        return nirom::cmd_simulate(sim_model, in, sim_out, std::cerr);
    }
    std::optional<std::string> plots;
    if (!ev_plots.empty())
        plots = ev_plots;
    return nirom::cmd_evaluate(ev_ref, ev_pred, ev_report, plots, std::cerr);
}
