// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file core.hpp
///
/// Domain types shared by the whole reduction pipeline.
///
/// Time indexing: sample k = 1..N of the data lives in column k-1 of every
/// matrix. Models follow the same convention, state column k-1 holds x_k and
/// x_1 is the initial state.
///
#ifndef NIROM_CORE_HPP
#define NIROM_CORE_HPP

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include <nirom/error.hpp>

namespace nirom
{

using Index = Eigen::Index;
using Complex = std::complex<double>;

template <typename T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using VectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

//------------------------------------------------------------------------------
// TimeSeriesData
//------------------------------------------------------------------------------

///
/// Uniformly sampled input/output record: U is n_u x N, Z is n_z x N and
/// sample k is taken at t_1 + (k-1) h.
///
struct TimeSeriesData
{
    double h = 1.0;
    double t1 = 0.0;
    MatrixXd U;
    MatrixXd Z;

    TimeSeriesData() = default;

    TimeSeriesData(double period, double first_time, MatrixXd inputs, MatrixXd outputs)
        : h(period), t1(first_time), U(std::move(inputs)), Z(std::move(outputs))
    {
        require(h > 0.0, ErrorCode::InvalidArgument, "sample period must be positive");
        require(U.cols() == Z.cols(), ErrorCode::ShapeMismatch,
                "U and Z must have the same number of samples");
        require(Z.cols() >= 2, ErrorCode::ShapeMismatch, "at least two samples are required");
    }

    /// Builds the record from explicit sample times, which must be uniformly
    /// spaced to a relative error below 1e-9.
    static TimeSeriesData from_times(const std::vector<double>& times, MatrixXd inputs,
                                     MatrixXd outputs);

    Index samples() const noexcept { return Z.cols(); }
    Index n_inputs() const noexcept { return U.rows(); }
    Index n_outputs() const noexcept { return Z.rows(); }

    double time(Index k) const noexcept { return t1 + static_cast<double>(k) * h; }
    std::vector<double> times() const;
};

//------------------------------------------------------------------------------
// DelayOperator
//------------------------------------------------------------------------------

/// Per-output integer sample delays.
struct DelayOperator
{
    std::vector<Index> tau;

    DelayOperator() = default;
    explicit DelayOperator(std::vector<Index> delays) : tau(std::move(delays)) {}

    static DelayOperator zeros(Index n_z) { return DelayOperator(std::vector<Index>(n_z, 0)); }

    Index size() const noexcept { return static_cast<Index>(tau.size()); }
    Index operator[](Index j) const { return tau[static_cast<std::size_t>(j)]; }

    bool is_zero() const noexcept
    {
        for (auto t : tau)
        {
            if (t != 0)
                return false;
        }
        return true;
    }

    /// Throws DelayOutOfRange unless 0 <= tau_j <= N-1 for every j.
    void validate(Index N) const;

    friend bool operator==(const DelayOperator&, const DelayOperator&) = default;
};

//------------------------------------------------------------------------------
// DescriptorRealization
//------------------------------------------------------------------------------

///
/// ### DescriptorRealization
///
/// Discrete-time descriptor model
///
///   E x_{k+1} = A x_k + B u_k,   y_k = C x_k + D u_k,
///
/// with an optional output delay applied to y. Used for the full-order model,
/// the raw Loewner interpolant and its projections alike.
///
template <typename Scalar>
struct DescriptorRealization
{
    using Matrix = MatrixX<Scalar>;

    Matrix E;
    Matrix A;
    Matrix B;
    Matrix C;
    Matrix D;
    std::optional<DelayOperator> delay;

    DescriptorRealization() = default;

    DescriptorRealization(Matrix e, Matrix a, Matrix b, Matrix c, Matrix d = Matrix(),
                          std::optional<DelayOperator> dly = std::nullopt)
        : E(std::move(e)), A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)),
          delay(std::move(dly))
    {
        if (D.size() == 0)
        {
            D = Matrix::Zero(C.rows(), B.cols());
        }
        validate();
    }

    /// Order-0 model with zero transfer.
    static DescriptorRealization empty(Index n_z, Index n_u)
    {
        return DescriptorRealization(Matrix(0, 0), Matrix(0, 0), Matrix(0, n_u), Matrix(n_z, 0),
                                     Matrix::Zero(n_z, n_u));
    }

    Index order() const noexcept { return A.rows(); }
    Index n_inputs() const noexcept { return B.cols(); }
    Index n_outputs() const noexcept { return C.rows(); }

    void validate() const
    {
        const Index n = A.rows();
        require(A.cols() == n && E.rows() == n && E.cols() == n, ErrorCode::DimensionMismatch,
                "E and A must be square of the same order");
        require(B.rows() == n, ErrorCode::DimensionMismatch, "B must have one row per state");
        require(C.cols() == n, ErrorCode::DimensionMismatch, "C must have one column per state");
        require(D.rows() == C.rows() && D.cols() == B.cols(), ErrorCode::DimensionMismatch,
                "D must be n_z x n_u");
        if (delay)
        {
            require(delay->size() == C.rows(), ErrorCode::DimensionMismatch,
                    "delay operator needs one entry per output");
        }
    }

    DescriptorRealization without_delay() const
    {
        DescriptorRealization out = *this;
        out.delay.reset();
        return out;
    }
};

using Realization = DescriptorRealization<double>;
using ComplexRealization = DescriptorRealization<Complex>;

///
/// Full-order model kept as its list of diagonal blocks: E, A and C are
/// block diagonal, B stacks the block inputs. Output j is driven by block j
/// only, which is what the per-output pencil construction produces.
///
struct BlockDiagonalRealization
{
    std::vector<Realization> blocks; ///< one single-output block per output
    DelayOperator delay;

    Index order() const noexcept;
    Index n_outputs() const noexcept { return static_cast<Index>(blocks.size()); }
    Index n_inputs() const noexcept;
    std::vector<Index> block_orders() const;
    /// Offset of block j in the assembled state vector.
    Index offset(Index j) const;
};

//------------------------------------------------------------------------------
// InferredModel
//------------------------------------------------------------------------------

enum class ModelClass
{
    Linear,
    Bilinear,
    QuadraticBilinear,
};

std::string to_string(ModelClass c);
ModelClass model_class_from_string(const std::string& s);

///
/// ### InferredModel
///
/// Explicit difference-equation model (E = I)
///
///   x_{k+1} = A x_k + B u_k + N x_k u_k
///   y_k     = C x_k + D u_k + F x_k u_k + G vech(x_k x_k^T)
///
/// with output delay. vech collects the r(r+1)/2 products x_i x_j, i <= j,
/// ordered row by row of the upper triangle. Bilinear terms require n_u = 1.
///
struct InferredModel
{
    ModelClass model_class = ModelClass::Linear;
    MatrixXd A;
    MatrixXd B;
    MatrixXd C;
    MatrixXd D;
    MatrixXd N;
    MatrixXd F;
    MatrixXd G;
    DelayOperator delay;
    double h = 1.0;
    std::map<std::string, std::string> metadata;

    InferredModel() = default;

    /// Linear model; bilinear and quadratic blocks are zero-filled.
    static InferredModel linear(MatrixXd a, MatrixXd b, MatrixXd c, MatrixXd d,
                                DelayOperator delay = {});

    Index order() const noexcept { return A.rows(); }
    Index n_inputs() const noexcept { return B.cols(); }
    Index n_outputs() const noexcept { return C.rows(); }

    /// Fills absent blocks with zeros of the right shape and checks the class
    /// restrictions (Linear has N = F = G = 0, Bilinear has G = 0).
    void normalize();
    void validate() const;
};

/// Number of unique quadratic monomials in r variables.
constexpr Index halfvec_size(Index r) noexcept { return r * (r + 1) / 2; }

/// The products x_i x_j, i <= j, in row-major upper-triangular order.
template <typename Derived>
VectorX<typename Derived::Scalar> halfvec_square(const Eigen::MatrixBase<Derived>& x)
{
    using Scalar = typename Derived::Scalar;
    const Index r = x.size();
    VectorX<Scalar> out(halfvec_size(r));
    Index p = 0;
    for (Index i = 0; i < r; ++i)
    {
        for (Index j = i; j < r; ++j)
        {
            out(p++) = x(i) * x(j);
        }
    }
    return out;
}

//------------------------------------------------------------------------------
// LoewnerData / StateTrajectories
//------------------------------------------------------------------------------

///
/// Tangential interpolation data. Left data (mu_j, l_j, v_j^H) with
/// v_j^H = l_j^H H(mu_j) and right data (lambda_i, r_i, w_i) with
/// w_i = H(lambda_i) r_i.
///
struct LoewnerData
{
    VectorXcd mu;     ///< m left points
    VectorXcd lambda; ///< m right points
    MatrixXcd ell;    ///< n_z x m, column j is l_j
    MatrixXcd r;      ///< n_u x m, column i is r_i
    MatrixXcd V;      ///< m x n_u, row j is v_j^H
    MatrixXcd W;      ///< n_z x m, column i is w_i

    Index size() const noexcept { return mu.size(); }
};

/// Reduced state snapshots and the model output along the same run.
struct StateTrajectories
{
    MatrixXd X;    ///< r x (N-1): x_1 .. x_{N-1}
    MatrixXd Xs;   ///< r x (N-1): x_2 .. x_N
    MatrixXd Zbar; ///< n_z x N: delayed model output
};

} // namespace nirom

#endif /* NIROM_CORE_HPP */
