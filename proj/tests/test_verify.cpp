#include "numrange/verify.hpp"

#include "numrange/generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace numrange;

TEST_CASE("prediction verification on the worked examples") {
    SUBCASE("diagonal pair: nested, no flat portions") {
        const BlockMatrix a = worked_diagonal_pair();
        const VerificationReport vr = verify_prediction(a, predict_numerical_range(a));
        CHECK(vr.passed);
        CHECK(vr.max_support_deviation <= 1e-8 * (1.0 + frobenius_norm(a.assemble())));
        CHECK(vr.flat_portion_count == 0);
        REQUIRE(vr.trig_fit_residual.has_value());
    }
    SUBCASE("skew-hermitian pair: four flat portions") {
        const BlockMatrix a = skew_pair_example();
        const VerificationReport vr = verify_prediction(a, predict_numerical_range(a));
        CHECK(vr.passed);
        CHECK(vr.flat_portion_count == 4);
    }
    SUBCASE("shifted nilpotent example") {
        const BlockMatrix a = worked_nilpotent_pair(Complex{1.0, 1.0}, Complex{-1.0, -1.0});
        const VerificationReport vr = verify_prediction(a, predict_numerical_range(a));
        CHECK(vr.passed);
        CHECK(vr.max_support_deviation <= 1e-8 * (1.0 + frobenius_norm(a.assemble())));
    }
    SUBCASE("no prediction is an error") {
        const BlockMatrix a = offcenter_pair_example(Complex{0.0, -0.5});
        CHECK_THROWS_AS(verify_prediction(a, predict_numerical_range(a)), NoPrediction);
    }
}

TEST_CASE("verification deviation is stable under grid refinement") {
    const BlockMatrix a = worked_diagonal_pair();
    const StructureReport rep = predict_numerical_range(a);
    const VerificationReport coarse = verify_prediction(a, rep, 720);
    const VerificationReport fine = verify_prediction(a, rep, 1440);
    CHECK(fine.max_support_deviation >= coarse.max_support_deviation - 1e-12);
}

TEST_CASE("central symmetry check") {
    std::mt19937_64 rng(113);
    for (int t = 0; t < 20; ++t)
        CHECK(check_central_symmetry(random_block_matrix(rng), 32) <= 1e-10);
    const BlockMatrix zero({}, {}, DenseMatrix(2, 2), DenseMatrix(2, 2));
    CHECK(check_central_symmetry(zero, 8) == 0.0);
    // symmetry holds even when the component ellipses sit off center
    CHECK(check_central_symmetry(offcenter_pair_example(Complex{0.0, -0.5}), 64) <= 1e-10);
    CHECK_THROWS_AS(check_central_symmetry(zero, 7), std::invalid_argument);
}

TEST_CASE("eigenvalue formula check") {
    std::mt19937_64 rng(127);
    for (int t = 0; t < 20; ++t)
        CHECK(check_eigenvalue_formula(random_block_matrix(rng), 16) <= 1e-10);
    const BlockMatrix zero({}, {}, DenseMatrix(2, 2), DenseMatrix(2, 2));
    CHECK(check_eigenvalue_formula(zero, 8) == 0.0);
}

TEST_CASE("closed-form k2 branches") {
    CHECK(check_k2_closed_form(structural_matrices(worked_diagonal_pair()), 360) <= 1e-10);
    SUBCASE("random pairs") {
        std::mt19937_64 rng(131);
        for (int t = 0; t < 100; ++t) {
            const StructuralPair p = structural_matrices(random_k2_block(rng));
            CHECK(check_k2_closed_form(p, 90) <= 1e-9);
        }
    }
    SUBCASE("Z = 0 keeps both branches constant") {
        std::mt19937_64 rng(137);
        const DenseMatrix c = random_matrix(2, 2, rng);
        const StructuralPair p{adjoint(c) * c, DenseMatrix(2, 2)};
        CHECK(check_k2_closed_form(p, 64) <= 1e-10);
        const EigenSystem eh = hermitian_eigensystem(p.h);
        for (double theta : {0.0, 1.0}) {
            const EigenSystem em = hermitian_eigensystem(m_theta(p, theta));
            CHECK(std::abs(em.values[0] - eh.values[0]) <= 1e-12);
            CHECK(std::abs(em.values[1] - eh.values[1]) <= 1e-12);
        }
    }
    SUBCASE("wrong block size is rejected") {
        const StructuralPair p{DenseMatrix::identity(3), DenseMatrix(3, 3)};
        CHECK_THROWS_AS(check_k2_closed_form(p, 16), WrongBlockSize);
    }
}

TEST_CASE("branch crossing oracle") {
    CHECK_FALSE(mu_branches_cross(structural_matrices(worked_diagonal_pair()), 720));
    CHECK(mu_branches_cross(structural_matrices(skew_pair_example()), 720));
}

TEST_CASE("nestedness agrees with the crossing oracle on 1000 classified instances") {
    std::mt19937_64 rng(139);
    int disagreements = 0;
    for (int t = 0; t < 1000; ++t) {
        BlockMatrix a = make_case1_instance(rng);
        if (t % 3 == 1) a = make_case2_instance(rng);
        if (t % 3 == 2) a = make_cor33_instance(rng);
        const StructureReport rep = predict_numerical_range(a);
        REQUIRE(rep.nested.has_value());
        const bool crossed = mu_branches_cross(structural_matrices(normalize_orientation(a)), 360);
        if ((rep.nested == Nestedness::NonNested) != crossed) ++disagreements;
    }
    CHECK(disagreements == 0);
}
