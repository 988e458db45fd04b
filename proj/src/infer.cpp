// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/infer.hpp>

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include <nirom/modal.hpp>
#include <nirom/preprocess.hpp>

namespace nirom
{

InferredModel to_explicit(const Realization& model, double h)
{
    const DelayOperator delay = model.delay.value_or(DelayOperator::zeros(model.n_outputs()));
    InferredModel out;
    if (model.E.isIdentity(0.0))
    {
        out = InferredModel::linear(model.A, model.B, model.C, model.D, delay);
    }
    else
    {
        const double econd = condition_number(model.E);
        require(econd < 1e12, ErrorCode::SingularE,
                "E is numerically singular (condition " + std::to_string(econd) + ")");
        Eigen::PartialPivLU<MatrixXd> lu(model.E);
        out = InferredModel::linear(lu.solve(model.A), lu.solve(model.B), model.C, model.D, delay);
    }
    out.h = h;
    return out;
}

StateTrajectories collect_trajectories(const InferredModel& model, const MatrixXd& U,
                                       const std::optional<VectorXd>& x0)
{
    const Index r = model.order();
    const Index N = U.cols();
    require(U.rows() == model.n_inputs(), ErrorCode::ShapeMismatch,
            "input has " + std::to_string(U.rows()) + " rows, model expects " +
                std::to_string(model.n_inputs()));
    require(N >= 2, ErrorCode::ShapeMismatch, "at least two samples are required");
    require(!x0 || x0->size() == r, ErrorCode::ShapeMismatch, "x0 must have one entry per state");

    MatrixXd Xfull(r, N);
    Xfull.col(0) = x0 ? *x0 : VectorXd::Zero(r);
    for (Index k = 0; k + 1 < N; ++k)
        Xfull.col(k + 1) = model.A * Xfull.col(k) + model.B * U.col(k);

    StateTrajectories traj;
    traj.X = Xfull.leftCols(N - 1);
    traj.Xs = Xfull.rightCols(N - 1);
    const MatrixXd Y = model.C * Xfull + model.D * U;
    traj.Zbar = apply_delay(Y, model.delay.size() ? model.delay : DelayOperator::zeros(Y.rows()));
    return traj;
}

namespace
{

// Row blocks [X; U] and optionally X*u and vech(x x^T).
MatrixXd stack_rows(const MatrixXd& X, const MatrixXd& U, bool bilinear, bool quadratic)
{
    const Index r = X.rows();
    const Index K = X.cols();
    require(U.cols() >= K, ErrorCode::ShapeMismatch, "input has fewer columns than the snapshots");
    if (bilinear || quadratic)
        require(U.rows() == 1, ErrorCode::ShapeMismatch, "bilinear terms require a single input");
    const Index rows = r + U.rows() + (bilinear ? r : 0) + (quadratic ? halfvec_size(r) : 0);
    MatrixXd R(rows, K);
    R.topRows(r) = X;
    R.middleRows(r, U.rows()) = U.leftCols(K);
    Index at = r + U.rows();
    if (bilinear)
    {
        R.middleRows(at, r) = X * U.row(0).head(K).asDiagonal();
        at += r;
    }
    if (quadratic)
    {
        for (Index k = 0; k < K; ++k)
            R.block(at, k, halfvec_size(r), 1) = halfvec_square(X.col(k));
    }
    return R;
}

MatrixXd aligned_outputs(const MatrixXd& Zd, Index K)
{
    require(Zd.cols() == K + 1, ErrorCode::ShapeMismatch,
            "Zd must have one more column than the state snapshots");
    return Zd.leftCols(K);
}

void check_traj(const StateTrajectories& traj, const MatrixXd& U)
{
    require(traj.X.rows() == traj.Xs.rows() && traj.X.cols() == traj.Xs.cols(),
            ErrorCode::ShapeMismatch, "X and Xs must have the same shape");
    require(U.cols() == traj.X.cols() + 1, ErrorCode::ShapeMismatch,
            "U must have N columns for N-1 snapshots");
}

void warn_if_underdetermined(InferredModel& m, const MatrixXd& R, const std::string& eq)
{
    if (R.cols() < R.rows())
    {
        m.metadata["warning." + eq] = std::to_string(R.cols()) + " samples for " +
                                      std::to_string(R.rows()) + " regressors";
    }
}

void unpack_output(InferredModel& m, const MatrixXd& theta, Index r, Index n_u, bool bilinear,
                   bool quadratic)
{
    m.C = theta.leftCols(r);
    m.D = theta.middleCols(r, n_u);
    Index at = r + n_u;
    if (bilinear)
    {
        m.F = theta.middleCols(at, r);
        at += r;
    }
    if (quadratic)
        m.G = theta.middleCols(at, halfvec_size(r));
}

} // namespace

MatrixXd regressor(ModelClass model_class, const MatrixXd& X, const MatrixXd& U)
{
    require(U.cols() == X.cols() + 1, ErrorCode::ShapeMismatch,
            "U must have N columns for N-1 snapshots");
    return stack_rows(X, U, model_class != ModelClass::Linear,
                      model_class == ModelClass::QuadraticBilinear);
}

MatrixXd solve_least_squares(const MatrixXd& R, const MatrixXd& T, const InferenceOptions& opt)
{
    require(R.cols() == T.cols(), ErrorCode::ShapeMismatch,
            "targets and regressors need the same number of samples");
    require(opt.ridge >= 0.0 && opt.rcond >= 0.0, ErrorCode::InvalidArgument,
            "ridge and rcond must be non-negative");
    const Index p = R.rows();
    if (p == 0 || T.rows() == 0)
        return MatrixXd::Zero(T.rows(), p);
    // R^T Theta^T = T^T in the least-squares sense.
    Eigen::BDCSVD<MatrixXd> svd(R.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const VectorXd& s = svd.singularValues();
    const double cutoff = s.size() ? opt.rcond * s(0) : 0.0;
    VectorXd inv = VectorXd::Zero(s.size());
    for (Index i = 0; i < s.size(); ++i)
    {
        if (s(i) > cutoff && s(i) > 0.0)
            inv(i) = s(i) / (s(i) * s(i) + opt.ridge);
    }
    const MatrixXd sol =
        svd.matrixV() * inv.asDiagonal() * (svd.matrixU().transpose() * T.transpose());
    return sol.transpose();
}

InferredModel infer_full(const StateTrajectories& traj, const MatrixXd& Zd, const MatrixXd& U,
                         ModelClass model_class, const InferenceOptions& opt)
{
    check_traj(traj, U);
    const Index r = traj.X.rows();
    const Index K = traj.X.cols();
    const Index n_u = U.rows();
    const bool bilinear = model_class != ModelClass::Linear;
    const bool quadratic = model_class == ModelClass::QuadraticBilinear;

    const MatrixXd Rs = stack_rows(traj.X, U, bilinear, false);
    const MatrixXd Ro = stack_rows(traj.X, U, bilinear, quadratic);
    const MatrixXd Za = aligned_outputs(Zd, K);

    InferredModel m;
    m.model_class = model_class;
    const MatrixXd ts = solve_least_squares(Rs, traj.Xs, opt);
    m.A = ts.leftCols(r);
    m.B = ts.middleCols(r, n_u);
    if (bilinear)
        m.N = ts.middleCols(r + n_u, r);
    unpack_output(m, solve_least_squares(Ro, Za, opt), r, n_u, bilinear, quadratic);
    m.delay = DelayOperator::zeros(Zd.rows());
    m.normalize();
    m.metadata["inference"] = "full";
    warn_if_underdetermined(m, Rs, "state");
    warn_if_underdetermined(m, Ro, "output");
    return m;
}

InferredModel infer_structured(const StateTrajectories& traj, const MatrixXd& Zd,
                               const MatrixXd& U, ModelClass model_class, const MatrixXd& Afixed,
                               const InferenceOptions& opt)
{
    check_traj(traj, U);
    const Index r = traj.X.rows();
    const Index K = traj.X.cols();
    const Index n_u = U.rows();
    require(Afixed.rows() == r && Afixed.cols() == r, ErrorCode::ShapeMismatch,
            "Afixed must be r x r");
    const bool bilinear = model_class != ModelClass::Linear;
    const bool quadratic = model_class == ModelClass::QuadraticBilinear;

    const MatrixXd Ro = stack_rows(traj.X, U, bilinear, quadratic);
    const MatrixXd Za = aligned_outputs(Zd, K);

    InferredModel m;
    m.model_class = model_class;
    m.A = Afixed;
    m.B = solve_least_squares(U.leftCols(K), traj.Xs - Afixed * traj.X, opt);
    unpack_output(m, solve_least_squares(Ro, Za, opt), r, n_u, bilinear, quadratic);
    m.delay = DelayOperator::zeros(Zd.rows());
    m.normalize();
    m.metadata["inference"] = "structured";
    warn_if_underdetermined(m, Ro, "output");
    return m;
}

double InferenceResiduals::total() const { return std::hypot(state, output); }

InferenceResiduals training_residuals(const InferredModel& model, const StateTrajectories& traj,
                                      const MatrixXd& Zd, const MatrixXd& U)
{
    check_traj(traj, U);
    const Index K = traj.X.cols();
    const MatrixXd Uk = U.leftCols(K);
    MatrixXd S = traj.Xs - model.A * traj.X - model.B * Uk;
    MatrixXd O = aligned_outputs(Zd, K) - model.C * traj.X - model.D * Uk;
    if (model.model_class != ModelClass::Linear)
    {
        const MatrixXd XU = traj.X * U.row(0).head(K).asDiagonal();
        S -= model.N * XU;
        O -= model.F * XU;
    }
    if (model.model_class == ModelClass::QuadraticBilinear)
    {
        for (Index k = 0; k < K; ++k)
            O.col(k) -= model.G * halfvec_square(traj.X.col(k));
    }
    return {S.norm(), O.norm()};
}

} // namespace nirom
