// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/LU>

#include <nirom/infer.hpp>
#include <nirom/pencil.hpp>
#include <nirom/preprocess.hpp>
#include <nirom/simulate.hpp>
#include <nirom/synthgen.hpp>

#include "support.hpp"

using namespace nirom;

namespace
{

InferredModel scalar_linear(double a, double b, double c, double d)
{
    return InferredModel::linear(MatrixXd::Constant(1, 1, a), MatrixXd::Constant(1, 1, b),
                                 MatrixXd::Constant(1, 1, c), MatrixXd::Constant(1, 1, d));
}

} // namespace

TEST_CASE("geometric impulse response")
{
    const MatrixXd y = simulate(scalar_linear(0.5, 1.0, 1.0, 0.0), impulse_input(1, 12)).Z;
    CHECK(y(0, 0) == 0.0);
    for (Index k = 2; k <= 12; ++k)
        CHECK(y(0, k - 1) == doctest::Approx(std::pow(0.5, k - 2)).epsilon(1e-15));
    CHECK(impulse_response(scalar_linear(0.5, 1.0, 1.0, 0.0), 12) == y);
}

TEST_CASE("step response settles at the DC gain")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
        InferredModel m = to_explicit(make_random_system(5, 3, seed, 0.9));
        m.D = test::random_matrix(3, 1, seed);
        const MatrixXd y = simulate(m, step_input(1, 500)).Z;
        const MatrixXd dc =
            m.C * (MatrixXd::Identity(5, 5) - m.A).partialPivLu().solve(m.B) + m.D;
        CHECK((y.col(499) - dc).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, dc.norm()));
    }
}

TEST_CASE("bilinear model under constant input")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
        const InferredModel b = make_random_bilinear(4, 2, seed);
        const InferredModel l = InferredModel::linear(b.A + b.N, b.B, b.C + b.F, b.D);
        const VectorXd x0 = test::random_matrix(4, 1, seed);
        const SimulationResult sb = simulate(b, step_input(1, 100), x0);
        const SimulationResult sl = simulate(l, step_input(1, 100), x0);
        CHECK((sb.Z - sl.Z).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, sl.Z.cwiseAbs().maxCoeff()));
    }
    SUBCASE("zero input leaves only the linear part")
    {
        const InferredModel b = make_random_bilinear(3, 2, 9);
        const InferredModel l = InferredModel::linear(b.A, b.B, b.C, b.D);
        const VectorXd x0 = test::random_matrix(3, 1, 1);
        CHECK(simulate(b, MatrixXd::Zero(1, 50), x0).Z == simulate(l, MatrixXd::Zero(1, 50), x0).Z);
    }
}

TEST_CASE("quadratic output term")
{
    InferredModel m = InferredModel::linear(MatrixXd::Zero(2, 2), MatrixXd::Ones(2, 1),
                                            MatrixXd::Zero(1, 2), MatrixXd::Zero(1, 1));
    m.model_class = ModelClass::QuadraticBilinear;
    m.G = (MatrixXd(1, 3) << 1.0, 0.0, 0.0).finished();
    m.N = MatrixXd::Zero(2, 2);
    m.F = MatrixXd::Zero(1, 2);
    const MatrixXd U = (MatrixXd(1, 3) << 3.0, 0.0, 0.0).finished();
    const MatrixXd y = simulate(m, U).Z;
    CHECK(y(0, 0) == 0.0);
    CHECK(y(0, 1) == 9.0);
}

TEST_CASE("descriptor simulation")
{
    SUBCASE("identity E matches the explicit recursion")
    {
        const Realization sys = make_random_system(6, 2, 3);
        const MatrixXd U = test::white_noise(1, 80, 4);
        const SimulationResult a = simulate_descriptor(sys, U);
        const SimulationResult b = simulate(to_explicit(sys), U);
        CHECK((a.Z - b.Z).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, b.Z.cwiseAbs().maxCoeff()));
    }
    SUBCASE("general E against the explicit form")
    {
        const Realization s = make_random_system(6, 2, 5);
        const MatrixXd T = test::random_matrix(6, 6, 6) + 4.0 * MatrixXd::Identity(6, 6);
        const Realization d(T, T * s.A, T * s.B, s.C);
        const MatrixXd U = test::white_noise(1, 80, 7);
        const MatrixXd a = simulate_descriptor(d, U).Z;
        const MatrixXd b = simulate(to_explicit(d), U).Z;
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, b.cwiseAbs().maxCoeff()));
    }
    SUBCASE("zero input and zero state")
    {
        const Realization sys = make_random_system(4, 3, 8);
        CHECK(simulate_descriptor(sys, MatrixXd::Zero(1, 30)).Z.isZero(0.0));
    }
    SUBCASE("singular E")
    {
        const Realization m(MatrixXd::Zero(1, 1), MatrixXd::Ones(1, 1), MatrixXd::Ones(1, 1),
                            MatrixXd::Ones(1, 1));
        CHECK_THROWS_AS(simulate_descriptor(m, MatrixXd::Ones(1, 4)), Error);
    }
}

TEST_CASE("block FOM impulse rows are shifted sub responses")
{
    std::vector<Realization> subs;
    std::vector<Index> tau;
    for (std::uint64_t j = 0; j < 16; ++j)
    {
        subs.push_back(make_random_system(1 + static_cast<Index>(j % 5), 1, 200 + j));
        tau.push_back(static_cast<Index>((7 * j) % 20));
    }
    const BlockDiagonalRealization fom = assemble_fom_blocks(subs, DelayOperator(tau));
    const Index N = 60;
    const MatrixXd y = impulse_response(fom, N);
    for (std::size_t j = 0; j < subs.size(); ++j)
    {
        const MatrixXd s = impulse_response(subs[j], N);
        const Index t = tau[j];
        CHECK(y.row(static_cast<Index>(j)).head(t).isZero(0.0));
        CHECK(y.row(static_cast<Index>(j)).tail(N - t) == s.row(0).head(N - t));
    }
}

TEST_CASE("pencil realization round trip through simulation")
{
    const Realization sub(MatrixXd::Identity(1, 1), MatrixXd::Constant(1, 1, 0.7),
                          MatrixXd::Ones(1, 1), MatrixXd::Constant(1, 1, 2.0));
    const MatrixXd y = impulse_response(sub, 31);
    std::vector<double> s(y.data() + 1, y.data() + 31);
    const Realization m = pencil_realize(s, 1e-8);
    const MatrixXd back = impulse_response(m, 31);
    CHECK((back - y).cwiseAbs().maxCoeff() < 1e-8 * y.cwiseAbs().maxCoeff());
}

TEST_CASE("linearity")
{
    const Realization sys = make_random_system(0, 2, 1);
    CHECK(impulse_response(sys, 20).isZero(0.0));

    Realization a = make_random_system(5, 2, 11);
    Realization b = a;
    b.B *= 3.0;
    const MatrixXd ya = impulse_response(a, 40);
    const MatrixXd yb = impulse_response(b, 40);
    CHECK((yb - 3.0 * ya).cwiseAbs().maxCoeff() <= 1e-12 * yb.cwiseAbs().maxCoeff());

    const InferredModel m = to_explicit(make_random_system(5, 3, 12));
    const MatrixXd U1 = test::white_noise(1, 60, 1);
    const MatrixXd U2 = test::white_noise(1, 60, 2);
    const MatrixXd s12 = simulate(m, U1 + U2).Z;
    const MatrixXd s1 = simulate(m, U1).Z;
    const MatrixXd s2 = simulate(m, U2).Z;
    CHECK((s12 - s1 - s2).norm() <= 1e-10 * s12.norm());
}

TEST_CASE("attached delays commute with simulation")
{
    InferredModel m = to_explicit(make_random_system(4, 3, 13));
    const MatrixXd U = test::white_noise(1, 40, 3);
    const MatrixXd plain = simulate(m, U).Z;
    const DelayOperator d({2, 0, 11});
    m.delay = d;
    CHECK(simulate(m, U).Z == apply_delay(plain, d));

    Realization r = make_random_system(4, 3, 13);
    const MatrixXd rp = simulate_descriptor(r, U).Z;
    r.delay = d;
    CHECK(simulate_descriptor(r, U).Z == apply_delay(rp, d));
}

TEST_CASE("overflow is reported")
{
    const InferredModel m = scalar_linear(10.0, 1.0, 1.0, 0.0);
    try
    {
        simulate(m, step_input(1, 200));
        FAIL("expected NonFiniteState");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::NonFiniteState);
        CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
    CHECK_THROWS_AS(simulate(m, MatrixXd::Ones(2, 5)), Error);
    CHECK_THROWS_AS(impulse_response(make_random_system(2, 1, 1, 0.9, 2), 5), Error);
}
