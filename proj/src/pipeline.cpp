// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/pipeline.hpp>

#include <nirom/simulate.hpp>

namespace nirom
{

std::vector<ProblemResidual> all_problem_residuals(const StateTrajectories& traj,
                                                   const MatrixXd& Zd, const MatrixXd& U,
                                                   const MatrixXd& Afixed,
                                                   const InferenceOptions& opt)
{
    std::vector<ProblemResidual> out;
    for (ModelClass c : {ModelClass::Linear, ModelClass::Bilinear, ModelClass::QuadraticBilinear})
    {
        if (c != ModelClass::Linear && U.rows() != 1)
            continue;
        for (bool structured : {true, false})
        {
            const InferredModel m = structured ? infer_structured(traj, Zd, U, c, Afixed, opt)
                                               : infer_full(traj, Zd, U, c, opt);
            out.push_back({c, structured, training_residuals(m, traj, Zd, U)});
        }
    }
    return out;
}

FitResult fit(const TimeSeriesData& data, const FitConfig& cfg)
{
    require(data.n_inputs() == 1, ErrorCode::DimensionMismatch,
            "the pencil step needs single-input data");
    FitResult res;
    FitReport& rep = res.report;

    // Step 1: delays.
    res.processed = preprocess(data, cfg.epsilon, cfg.pad);
    rep.delay = res.processed.delay;
    rep.epsilon = res.processed.epsilon;

    // Step 2: one pencil realization per output.
    const MatrixXd& Zd = res.processed.Zd;
    std::vector<Realization> subs;
    subs.reserve(static_cast<std::size_t>(Zd.rows()));
    for (Index j = 0; j < Zd.rows(); ++j)
    {
        const VectorXd row = Zd.row(j).transpose();
        const std::vector<double> s =
            to_impulse_sequence(std::span<const double>(row.data(), row.size()), cfg.input_shape);
        subs.push_back(pencil_realize(s, cfg.pencil_tol));
        rep.pencil_orders.push_back(subs.back().order());
    }
    res.fom = assemble_fom_blocks(std::move(subs), rep.delay);
    rep.fom_order = res.fom.order();
    require(rep.fom_order <= cfg.max_fom_order, ErrorCode::OrderCeilingExceeded,
            "full-order model has order " + std::to_string(rep.fom_order));

    // Step 3: Loewner reduction and stabilization.
    const PointSplit points = select_points(cfg.loewner_points, cfg.omega_min, cfg.omega_max);
    const LoewnerPencil pencil = build_loewner(sample_tangential(res.fom, points, cfg.directions));
    rep.loewner_points_per_side = pencil.data.size();
    const ReductionTarget target = cfg.order ? ReductionTarget::explicit_order(*cfg.order, cfg.rank_tol)
                                             : ReductionTarget::tolerance(cfg.rank_tol);
    auto [rom, red] = reduce_loewner(pencil, target);
    rep.numerical_rank = red.numerical_rank;
    rep.rank_row = red.rank_row;
    rep.rank_col = red.rank_col;
    rep.singular_values = red.singular_values_row;
    rep.order = rom.order();
    if (rep.rank_row != rep.rank_col)
        rep.warnings.push_back("rank estimates differ: " + std::to_string(rep.rank_row) + " vs " +
                               std::to_string(rep.rank_col));
    if (rep.order > rep.numerical_rank)
        rep.warnings.push_back("order " + std::to_string(rep.order) +
                               " exceeds the numerical rank " + std::to_string(rep.numerical_rank));

    const StabilizeResult st = stabilize(rom, cfg.stabilize, cfg.stability_margin);
    rep.radius_before = st.radius_before;
    rep.radius_after = st.radius_after;
    rep.reflected = st.reflected;
    rep.discarded = st.discarded;
    rep.warnings.insert(rep.warnings.end(), st.warnings.begin(), st.warnings.end());

    // Step 4: inference on the delay-free data.
    const InferredModel explicit_rom = to_explicit(st.model.without_delay(), data.h);
    res.rom = Realization(MatrixXd::Identity(explicit_rom.order(), explicit_rom.order()),
                          explicit_rom.A, explicit_rom.B, explicit_rom.C, explicit_rom.D);
    const StateTrajectories traj = collect_trajectories(explicit_rom, data.U);
    rep.problems = all_problem_residuals(traj, Zd, data.U, explicit_rom.A, cfg.inference);

    res.model = cfg.structured
                    ? infer_structured(traj, Zd, data.U, cfg.model_class, explicit_rom.A, cfg.inference)
                    : infer_full(traj, Zd, data.U, cfg.model_class, cfg.inference);
    res.model.delay = rep.delay;
    res.model.h = data.h;
    for (const auto& [k, v] : res.model.metadata)
    {
        if (k.rfind("warning.", 0) == 0)
            rep.warnings.push_back(k.substr(8) + ": " + v);
    }
    res.model.metadata["pipeline.order"] = std::to_string(rep.order);
    res.model.metadata["pipeline.fom_order"] = std::to_string(rep.fom_order);
    res.model.metadata["pipeline.loewner_points"] = std::to_string(cfg.loewner_points);
    res.model.metadata["pipeline.input_shape"] = to_string(cfg.input_shape);
    res.model.metadata["pipeline.inference"] = cfg.structured ? "structured" : "full";
    res.model.metadata["pipeline.stabilize"] =
        to_string(cfg.stabilize) + " (eigenvalue substitute for an optimal stable approximation)";
    res.model.metadata["pipeline.reflected"] = std::to_string(rep.reflected);
    res.model.metadata["pipeline.discarded"] = std::to_string(rep.discarded);
    return res;
}

} // namespace nirom
