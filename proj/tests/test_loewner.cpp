// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/SVD>

#include <nirom/loewner.hpp>
#include <nirom/modal.hpp>
#include <nirom/synthgen.hpp>
#include <nirom/transfer.hpp>

#include "support.hpp"

using namespace nirom;

namespace
{

ErrorCode code_of(const auto& f)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

Index numerical_rank(const MatrixXcd& M, double tol = 1e-10)
{
    const VectorXd s = Eigen::JacobiSVD<MatrixXcd>(M).singularValues();
    Index r = 0;
    while (r < s.size() && s(r) > tol * s(0))
        ++r;
    return r;
}

LoewnerPencil pencil_of(const Realization& sys, Index count, double lo = 0.05, double hi = 3.0)
{
    return build_loewner(sample_tangential(sys, select_points(count, lo, hi)));
}

double max_mismatch(const Realization& a, const Realization& b, const std::vector<Complex>& zs)
{
    double e = 0.0;
    for (const Complex z : zs)
        e = std::max(e, (eval_transfer(a, z) - eval_transfer(b, z)).cwiseAbs().maxCoeff());
    return e;
}

} // namespace

TEST_CASE("select_points")
{
    const PointSplit p = select_points(4, 1e-2, 1e-1);
    REQUIRE(p.left.size() == 2);
    REQUIRE(p.right.size() == 2);
    CHECK(std::abs(p.left(0) - std::polar(1.0, 0.01)) < 1e-15);
    CHECK(std::abs(p.left(1) - std::polar(1.0, -0.01)) < 1e-15);
    CHECK(std::abs(p.right(0) - std::polar(1.0, 0.1)) < 1e-15);
    CHECK(std::abs(p.right(1) - std::polar(1.0, -0.1)) < 1e-15);

    const PointSplit d = select_points(600, 1e-5, 1e-2);
    CHECK(d.left.size() == 300);
    CHECK(d.right.size() == 300);
    for (const auto* v : {&d.left, &d.right})
        for (Index k = 0; k < v->size(); ++k)
            CHECK(std::abs(std::abs((*v)(k)) - 1.0) <= 1e-15);

    CHECK(code_of([] { select_points(8, 0.0, 1.0); }) == ErrorCode::BadFrequencyRange);
    CHECK(code_of([] { select_points(8, 0.5, 0.1); }) == ErrorCode::BadFrequencyRange);
    CHECK(code_of([] { select_points(8, 0.1, 4.0); }) == ErrorCode::BadFrequencyRange);
    CHECK_THROWS_AS(select_points(6, 0.1, 1.0), Error);
}

TEST_CASE("tangential directions")
{
    const VectorXcd e = cycled_direction(5, 3);
    CHECK(e == (VectorXcd(3) << 0.0, 1.0, 0.0).finished());
    CHECK(cycled_direction(3, 3)(2) == Complex(1.0));
    CHECK(direction_scheme_from_string("random") == DirectionScheme::Random);
}

TEST_CASE("sample_tangential")
{
    SUBCASE("single output")
    {
        const Realization sys = make_random_system(4, 1, 3);
        const PointSplit p = select_points(8, 0.1, 2.0);
        const LoewnerData d = sample_tangential(sys, p);
        for (Index j = 0; j < 4; ++j)
        {
            CHECK(d.ell(0, j) == Complex(1.0));
            CHECK(std::abs(d.V(j, 0) - eval_transfer(sys, p.left(j))(0, 0)) < 1e-14);
            CHECK(std::abs(d.W(0, j) - eval_transfer(sys, p.right(j))(0, 0)) < 1e-14);
        }
    }
    SUBCASE("conjugate points carry conjugate samples")
    {
        for (DirectionScheme s : {DirectionScheme::Cycled, DirectionScheme::Random})
        {
            for (std::uint64_t seed = 0; seed < 5; ++seed)
            {
                const Realization sys = make_random_system(5, 3, 70 + seed);
                const LoewnerData d =
                    sample_tangential(sys, select_points(24, 0.01, 2.5), {s, seed});
                for (Index j = 0; j < d.size(); j += 2)
                {
                    CHECK(std::abs(d.mu(j + 1) - std::conj(d.mu(j))) < 1e-15);
                    CHECK(std::abs(d.V(j + 1, 0) - std::conj(d.V(j, 0))) <= 1e-12 * std::abs(d.V(j, 0)) + 1e-15);
                    CHECK((d.W.col(j + 1) - d.W.col(j).conjugate()).norm() <=
                          1e-12 * std::max(1.0, d.W.col(j).norm()));
                    CHECK((d.ell.col(j) - d.ell.col(j + 1)).norm() == 0.0);
                }
            }
        }
    }
    SUBCASE("cycled scheme per pair")
    {
        const Realization sys = make_random_system(3, 3, 2);
        const LoewnerData d = sample_tangential(sys, select_points(24, 0.01, 2.5));
        // Pair p (1-based) sits at columns 2p-2 and 2p-1.
        CHECK(d.ell.col(8) == cycled_direction(5, 3));
        CHECK(d.ell.col(9) == cycled_direction(5, 3));
    }
}

TEST_CASE("build_loewner")
{
    SUBCASE("one point each side")
    {
        LoewnerData d;
        d.mu = VectorXcd::Constant(1, 2.0);
        d.lambda = VectorXcd::Constant(1, 1.0);
        d.ell = MatrixXcd::Ones(1, 1);
        d.r = MatrixXcd::Ones(1, 1);
        d.V = MatrixXcd::Constant(1, 1, 2.0);
        d.W = MatrixXcd::Constant(1, 1, 1.0);
        const LoewnerPencil p = build_loewner(d);
        CHECK(std::abs(p.L(0, 0) - 1.0) < 1e-15);
        CHECK(std::abs(p.Ls(0, 0) - 3.0) < 1e-15);

        const ComplexRealization raw = loewner_realize(p);
        CHECK(std::abs(eval_transfer(raw, Complex(1.0))(0, 0) - 1.0) < 1e-15);
        CHECK(std::abs(eval_transfer(raw, Complex(2.0))(0, 0) - 2.0) < 1e-15);

        d.lambda(0) = 2.0;
        CHECK(code_of([&] { build_loewner(d); }) == ErrorCode::CoincidentPoints);
    }
    SUBCASE("rank equals the degree")
    {
        const Realization one(MatrixXd::Ones(1, 1), MatrixXd::Constant(1, 1, 0.5),
                              MatrixXd::Ones(1, 1), MatrixXd::Ones(1, 1));
        CHECK(numerical_rank(pencil_of(one, 8).L) == 1);
        for (std::uint64_t seed = 0; seed < 5; ++seed)
            CHECK(numerical_rank(pencil_of(make_random_system(3, 2, seed), 20).L) == 3);
    }
    SUBCASE("Sylvester identities")
    {
        const Realization sys = make_random_system(5, 3, 12);
        const LoewnerPencil p = pencil_of(sys, 16);
        const auto& d = p.data;
        const MatrixXcd a = d.mu.asDiagonal() * p.L + d.ell.adjoint() * d.W;
        const MatrixXcd b = p.L * d.lambda.asDiagonal() + d.V * d.r;
        CHECK((p.Ls - a).norm() <= 1e-10 * p.Ls.norm());
        CHECK((p.Ls - b).norm() <= 1e-10 * p.Ls.norm());
    }
}

TEST_CASE("raw interpolant")
{
    SUBCASE("regular when the points do not exceed the degree")
    {
        const Realization sys = make_random_system(8, 2, 21);
        const LoewnerPencil p = pencil_of(sys, 8);
        const ComplexRealization raw = loewner_realize(p);
        CHECK(raw.order() == 4);
        CHECK(interpolation_residual(raw, p.data) < 1e-8);
    }
    SUBCASE("redundant data gives a singular pencil; the minimal model interpolates")
    {
        const Realization sys = make_random_system(2, 1, 22);
        const LoewnerPencil p = pencil_of(sys, 12);
        CHECK(code_of([&] { loewner_realize(p); }) == ErrorCode::SingularRawPencil);
        const auto [rom, info] = reduce_loewner(p);
        CHECK(info.numerical_rank == 2);
        CHECK(interpolation_residual(rom, p.data) < 1e-9);
    }
}

TEST_CASE("reduce_loewner")
{
    SUBCASE("tolerance mode finds the degree and generalizes")
    {
        for (std::uint64_t seed = 0; seed < 5; ++seed)
        {
            const Realization sys = make_random_system(3, 2, 300 + seed);
            const LoewnerPencil p = pencil_of(sys, 40);
            const auto [rom, info] = reduce_loewner(p, ReductionTarget::tolerance());
            CHECK(info.numerical_rank == 3);
            CHECK(info.rank_row == info.rank_col);
            CHECK(rom.order() == 3);
            double err = 0.0;
            double ref = 0.0;
            for (const Complex z : test::circle_points(50, seed))
            {
                const MatrixXcd H = eval_transfer(sys, z);
                err = std::max(err, (eval_transfer(rom, z) - H).norm());
                ref = std::max(ref, H.norm());
            }
            CHECK(err / ref < 1e-8);
            CHECK(interpolation_residual(rom, p.data) < 1e-8);
            const Index r = info.Y.cols();
            CHECK((info.Y.adjoint() * info.Y - MatrixXcd::Identity(r, r)).norm() < 1e-12);
            CHECK((info.X.adjoint() * info.X - MatrixXcd::Identity(r, r)).norm() < 1e-12);
        }
    }
    SUBCASE("square projection is a change of basis")
    {
        const Realization sys = make_random_system(8, 1, 31);
        const LoewnerPencil p = pencil_of(sys, 8);
        const ComplexRealization raw = loewner_realize(p);
        const auto [full, info] = reduce_loewner_complex(p, ReductionTarget::explicit_order(4));
        const auto [real, rinfo] = reduce_loewner(p, ReductionTarget::explicit_order(4));
        for (const Complex z : test::circle_points(10, 2))
        {
            CHECK(test::rel_diff(eval_transfer(full, z), eval_transfer(raw, z)) < 1e-10);
            CHECK(test::rel_diff(eval_transfer(real, z), eval_transfer(raw, z)) < 1e-10);
        }
    }
    SUBCASE("the minimal order fits the samples best")
    {
        // Intermediate truncations need not be ordered among themselves.
        for (std::uint64_t seed = 40; seed < 46; ++seed)
        {
            const Realization sys = make_random_system(8, 2, seed, 0.95);
            const LoewnerPencil p = pencil_of(sys, 40);
            std::vector<Complex> zs;
            for (Index j = 0; j < p.data.size(); ++j)
            {
                zs.push_back(p.data.mu(j));
                zs.push_back(p.data.lambda(j));
            }
            const auto [best, info] = reduce_loewner(p, ReductionTarget::explicit_order(8));
            const double e8 = max_mismatch(best, sys, zs);
            CHECK(e8 < 1e-10);
            for (Index r = 1; r < 8; ++r)
            {
                const auto [rom, rinfo] = reduce_loewner(p, ReductionTarget::explicit_order(r));
                CHECK(e8 <= max_mismatch(rom, sys, zs) + 1e-10);
            }
        }
    }
    SUBCASE("errors")
    {
        const LoewnerPencil p = pencil_of(make_random_system(3, 1, 5), 8);
        CHECK(code_of([&] { reduce_loewner(p, ReductionTarget::explicit_order(5)); }) ==
              ErrorCode::TargetOrderTooLarge);
    }
}

TEST_CASE("realify")
{
    SUBCASE("real model is unchanged")
    {
        const Realization sys = make_random_system(4, 2, 9);
        const ComplexRealization c(sys.E.cast<Complex>(), sys.A.cast<Complex>(), sys.B.cast<Complex>(),
                                   sys.C.cast<Complex>());
        const Realization r = realify(c);
        CHECK(r.A == sys.A);
        CHECK(r.B == sys.B);
        CHECK(r.C == sys.C);
    }
    SUBCASE("diagonal conjugate pair")
    {
        const Complex lam(0.3, 0.6);
        const Complex b(0.7, -0.2);
        const Complex c(1.1, 0.4);
        MatrixXcd A = MatrixXcd::Zero(2, 2);
        A(0, 0) = lam;
        A(1, 1) = std::conj(lam);
        const MatrixXcd B = (MatrixXcd(2, 1) << b, std::conj(b)).finished();
        const MatrixXcd C = (MatrixXcd(1, 2) << c, std::conj(c)).finished();
        const ComplexRealization m(MatrixXcd::Identity(2, 2), A, B, C);
        const Realization r = realify(m);
        CHECK(std::abs(r.A(0, 0) - 0.3) < 1e-14);
        CHECK(std::abs(r.A(1, 1) - 0.3) < 1e-14);
        CHECK(std::abs(std::abs(r.A(0, 1)) - 0.6) < 1e-14);
        CHECK(std::abs(r.A(0, 1) + r.A(1, 0)) < 1e-14);
        for (const Complex z : test::circle_points(10, 6))
            CHECK(test::rel_diff(eval_transfer(r, z), eval_transfer(m, z)) < 1e-12);
    }
    SUBCASE("complex Loewner model of a real system")
    {
        const Realization sys = make_random_system(4, 1, 17);
        const LoewnerPencil p = pencil_of(sys, 16);
        const auto [cm, info] = reduce_loewner_complex(p, ReductionTarget::explicit_order(4));
        const Realization r = realify(cm);
        for (const Complex z : test::circle_points(10, 8))
            CHECK(test::rel_diff(eval_transfer(r, z), eval_transfer(cm, z)) < 1e-10);
    }
}
