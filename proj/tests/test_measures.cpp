#include "support.hpp"

#include "qgamble/gleason.hpp"

using namespace testing;

TEST_SUITE("measures") {

TEST_CASE("density matrices") {
    CHECK_NOTHROW(DensityMatrix::from_hermitian(diag2(0.5, 0.5)));
    CHECK_THROWS_AS(DensityMatrix::from_hermitian(diag2(1.5, -0.5)), Error);
    CHECK_THROWS_AS(DensityMatrix::from_hermitian(diag2(0.5, 0.6)), Error);
    const auto rho = DensityMatrix::from_bloch({{0.0, 0.0, 0.6}});
    CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.8));
    CHECK(rho.bloch().z() == doctest::Approx(0.6));
    const auto nearest = DensityMatrix::nearest(diag2(1.2, -0.2));
    CHECK(max_dev(nearest.matrix(), diag2(1.0, 0.0)) < 1e-12);
}

TEST_CASE("born_eval") {
    Rng rng(21);
    const auto mixed = DensityMatrix::maximally_mixed(2);
    for (int k = 0; k < 20; ++k) CHECK(born_eval(mixed, random_rank1_projector(2, rng)) == doctest::Approx(0.5));
    CHECK(born_eval(pure_z(), diag2(1, 0)) == 1.0);
    // ½(1 + n·r) from the Pauli trace identities.
    for (int k = 0; k < 100; ++k) {
        BlochVector r = random_unit_vector(rng);
        const double len = uniform01(rng);
        for (auto& c : r.c) c *= len;
        const BlochVector n = random_unit_vector(rng);
        CHECK(born_eval(DensityMatrix::from_bloch(r), projector_from_bloch(n)) ==
              doctest::Approx(0.5 * (1.0 + n.dot(r))).epsilon(1e-12));
    }
    try {
        born_eval(mixed, sigma(2));
        FAIL("expected NotProjector");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotProjector);
    }
    try {
        born_eval(mixed, HermitianMatrix::identity(3));
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("dispersion_free_eval follows the lexicographic sign rule") {
    const Frame3 std3 = Frame3::standard();
    CHECK(dispersion_free_eval(std3, projector_from_bloch({{1, 0, 0}})) == 1);
    CHECK(dispersion_free_eval(std3, projector_from_bloch({{-1, 0, 0}})) == 0);
    CHECK(dispersion_free_eval(std3, projector_from_bloch({{0, 1, 0}})) == 1);
    CHECK(dispersion_free_eval(std3, projector_from_bloch({{0, -1, 0}})) == 0);
    CHECK(dispersion_free_eval(std3, projector_from_bloch({{0, 0, 1}})) == 1);
    CHECK(dispersion_free_eval(std3, projector_from_bloch({{0, 0, -1}})) == 0);
    CHECK(dispersion_free_eval(std3, HermitianMatrix::identity(2)) == 1);
    CHECK(dispersion_free_eval(std3, HermitianMatrix::zero(2)) == 0);
    try {
        dispersion_free_eval(std3, HermitianMatrix::diagonal({1, 0, 0}));
        FAIL("expected WrongDimension");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WrongDimension);
    }
    try {
        Frame3::make({{1, 0, 0}}, {{1, 0, 0}}, {{0, 0, 1}});
        FAIL("expected BadFrame3");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadFrame3);
    }
}

TEST_CASE("expectation on the worked example") {
    const auto p = ProbabilityMeasure::dispersion_free(Frame3::standard());
    CHECK(expectation(p, example_g()).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(expectation(p, example_h()).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(expectation(p, example_f()).value == doctest::Approx(-0.5).epsilon(1e-12));
    Rng rng(22);
    for (int k = 0; k < 5; ++k) {
        const Index n = 2 + static_cast<Index>(k % 3);
        CHECK(expectation(ProbabilityMeasure::born(random_density(n, rng)), HermitianMatrix::identity(n)).value ==
              doctest::Approx(1.0));
    }
    CHECK(expectation(p, HermitianMatrix::identity(2)).value == 1.0);
}

TEST_CASE("induced gamble set membership") {
    const auto p = ProbabilityMeasure::dispersion_free(Frame3::standard());
    CHECK(induced_gamble_set_contains(p, example_h()));
    CHECK(induced_gamble_set_contains(p, example_g()));
    CHECK_FALSE(induced_gamble_set_contains(p, example_f()));
    CHECK(induced_gamble_set_contains(p, diag2(0, 3)));
    const auto mixed = ProbabilityMeasure::born(DensityMatrix::maximally_mixed(2));
    CHECK_FALSE(induced_gamble_set_contains(mixed, sigma(2)));
    CHECK(induced_gamble_set_contains(mixed, diag2(0, 3)));
}

TEST_CASE("table lookup rules") {
    const auto pz = diag2(1, 0);
    const auto p = ProbabilityMeasure::table(2, {{pz, 0.3}});
    CHECK(p(pz) == 0.3);
    CHECK(p(diag2(0, 1)) == doctest::Approx(0.7));
    CHECK(p(HermitianMatrix::identity(2)) == 1.0);
    CHECK(p(HermitianMatrix::zero(2)) == 0.0);
    try {
        p(projector_from_bloch({{1, 0, 0}}));
        FAIL("expected NotDefined");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotDefined);
    }
    const auto fb = ProbabilityMeasure::table(2, {{pz, 0.3}}, DensityMatrix::maximally_mixed(2));
    CHECK(fb(projector_from_bloch({{1, 0, 0}})) == doctest::Approx(0.5));
    try {
        ProbabilityMeasure::table(2, {{pz, 1.3}});
        FAIL("expected BadValue");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadValue);
    }
}

TEST_CASE("validate_measure") {
    Rng rng(23);
    for (Index n = 2; n <= 4; ++n) {
        const auto v = validate_measure(ProbabilityMeasure::born(random_density(n, rng)), 1000, 5);
        CHECK(v.valid);
        CHECK(v.max_p2_violation <= 1e-9);
        CHECK(v.p1_violation <= 1e-12);
    }
    const auto df = validate_measure(ProbabilityMeasure::dispersion_free(Frame3::standard()), 1000, 5);
    CHECK(df.valid);
    CHECK(df.max_p2_violation == 0.0);

    // 0.7 on both Π_z and Π_{−z}: frame sum 1.4.
    const auto bad = ProbabilityMeasure::table(2, {{diag2(1, 0), 0.7}, {diag2(0, 1), 0.7}},
                                               DensityMatrix::maximally_mixed(2));
    const auto v = validate_measure(bad, 10, 5);
    CHECK_FALSE(v.valid);
    CHECK(v.max_p2_violation == doctest::Approx(0.4));
    CHECK_THROWS_AS(validate_measure(bad, 0, 5), Error);
}

TEST_CASE("property: dispersion-free measures are 0/1 valued and complementary") {
    Rng rng(24);
    for (int k = 0; k < 200; ++k) {
        const Frame3 axes = random_frame3(rng);
        for (int j = 0; j < 20; ++j) {
            const BlochVector n = random_unit_vector(rng);
            const int a = dispersion_free_eval(axes, projector_from_bloch(n));
            const int b = dispersion_free_eval(axes, projector_from_bloch(-n));
            REQUIRE(a + b == 1);
        }
        // Directions in the tie planes are resolved by the next clause.
        const int ty = dispersion_free_eval(axes, projector_from_bloch(axes.y));
        const int tz = dispersion_free_eval(axes, projector_from_bloch(axes.z));
        CHECK(ty == 1);
        CHECK(tz == 1);
        CHECK(dispersion_free_eval(axes, projector_from_bloch(-axes.z)) == 0);
    }
}

TEST_CASE("property: dispersion-free expectation is the eigenvalue on the accepted direction") {
    Rng rng(25);
    for (int k = 0; k < 500; ++k) {
        const Frame3 axes = random_frame3(rng);
        const auto p = ProbabilityMeasure::dispersion_free(axes);
        const auto g = random_hermitian(2, rng);
        const double e = expectation(p, g).value;
        const auto [lo, hi] = eig2(g);
        CHECK((std::abs(e - lo) < 1e-10 || std::abs(e - hi) < 1e-10));
        CHECK(e == doctest::Approx(dispersion_free_expectation_oracle(axes, g)).epsilon(1e-10));
    }
}

TEST_CASE("property: Born expectation is linear") {
    Rng rng(26);
    for (int k = 0; k < 300; ++k) {
        const Index n = 2 + static_cast<Index>(k % 3);
        const auto rho = random_density(n, rng);
        const auto p = ProbabilityMeasure::born(rho);
        const auto g = random_hermitian(n, rng);
        CHECK(expectation(p, g).value == doctest::Approx(inner(g, rho)).epsilon(1e-10));
    }
}

} // TEST_SUITE
