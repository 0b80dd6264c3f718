#include "support.hpp"

#include "qgamble/desirability.hpp"
#include "qgamble/duality.hpp"

using namespace testing;

TEST_SUITE("desirability") {

TEST_CASE("payoff") {
    Rng rng(31);
    for (Index n = 2; n <= 4; ++n) {
        const auto pv = payoff(HermitianMatrix::identity(n), random_frame(n, rng));
        for (double g : pv.gammas) CHECK(g == doctest::Approx(1.0));
    }
    const auto pg = payoff(example_g(), Frame::from_bloch(example_g_dir()));
    CHECK(pg.gammas[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pg.gammas[1] == doctest::Approx(-4.0).epsilon(1e-12));
    const auto pf = payoff(example_f(), Frame::from_bloch({{1, 0, 0}}));
    CHECK(pf.gammas[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(pf.gammas[1] == doctest::Approx(-5.5).epsilon(1e-12));
    try {
        payoff(HermitianMatrix::identity(3), Frame::computational(2));
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("cone construction deduplicates positive rescalings") {
    const GambleCone c(2, {example_g(), example_g() * 3.0, example_h(), example_g() * -1.0});
    CHECK(c.size() == 3);
    CHECK_THROWS_AS(GambleCone(2, {HermitianMatrix::zero(2)}), Error);
    CHECK_THROWS_AS(GambleCone(2, {HermitianMatrix::identity(3)}), Error);
}

TEST_CASE("cone_combine") {
    const GambleCone gh(2, {example_g(), example_h()});
    const std::vector<double> ones{1.0, 1.0};
    CHECK(max_dev(cone_combine(gh, ones), example_f()) < 1e-12);
    const GambleCone g(2, {example_g()});
    const std::vector<double> two{2.0};
    CHECK(max_dev(cone_combine(g, two), example_g() * 2.0) < 1e-15);
    const std::vector<double> zeros{0.0, 0.0};
    const auto pg = projector_from_bloch(example_g_dir());
    CHECK(max_dev(cone_combine(gh, zeros, pg), pg) == 0.0);

    const std::vector<double> neg{1.0, -0.5};
    try {
        cone_combine(gh, neg);
        FAIL("expected NegativeWeight");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NegativeWeight);
    }
    CHECK_THROWS_AS(cone_combine(gh, zeros), Error);
    CHECK_THROWS_AS(cone_combine(gh, two), Error);
}

TEST_CASE("cone membership") {
    const GambleCone c(2, {sigma(2)});
    CHECK(cone_contains(c, sigma(2)));
    CHECK(cone_contains(c, sigma(2) * 4.0 + HermitianMatrix::identity(2) * 0.5));
    CHECK(cone_contains(c, diag2(0, 1)));
    CHECK_FALSE(cone_contains(c, sigma(0)));
    CHECK_FALSE(cone_contains(c, -sigma(2)));
    CHECK_FALSE(cone_contains(c, HermitianMatrix::zero(2)));
    const GambleCone gh(2, {example_g(), example_h()});
    CHECK(cone_contains(gh, example_f()));
}

TEST_CASE("avoiding partial loss") {
    const auto ex = check_avoiding_partial_loss(GambleCone(2, {example_g(), example_h()}));
    const auto* cert = std::get_if<DutchBookCertificate>(&ex);
    REQUIRE(cert);
    CHECK(cert->weights[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cert->weights[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(max_dev(cert->combined, example_f()) < 1e-9);
    CHECK(cert->max_eigenvalue == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(psd_classify(cert->combined) == PsdClass::NegativeNonzero);

    const auto sz = check_avoiding_partial_loss(GambleCone(2, {sigma(2)}));
    REQUIRE(std::holds_alternative<AvoidsPartialLoss>(sz));
    CHECK(inner(sigma(2), std::get<AvoidsPartialLoss>(sz).rho) >= -1e-9);

    CHECK(std::holds_alternative<AvoidsPartialLoss>(check_avoiding_partial_loss(GambleCone(2))));
}

TEST_CASE("SDG axioms") {
    // Generators drawn from (ρ)° for a full-rank ρ.
    Rng rng(32);
    const auto rho = random_density(2, rng);
    std::vector<HermitianMatrix> gens;
    while (gens.size() < 12) {
        const auto g = random_hermitian(2, rng);
        if (inner(g, rho) > 0.05) gens.push_back(g);
    }
    const auto rep = check_sdg_axioms(GambleCone(2, gens), 200, 1);
    CHECK(rep.s1_by_construction);
    CHECK(rep.s2_by_construction);
    CHECK(rep.s3_holds);
    CHECK_FALSE(rep.inconclusive);
    CHECK(rep.s1_samples == 200);
    CHECK(rep.s1_failures == 0);

    const auto pos = check_sdg_axioms(GambleCone(2, {projector_from_bloch(example_g_dir())}), 10, 1);
    CHECK(pos.s3_holds);
    REQUIRE(pos.s3.size() == 1);
    CHECK(pos.s3[0].positive);

    // σ_z − 1e-9 I has expectation −1e-9 under I/2 and fails openness at ε = 1e-6.
    const auto shifted = sigma(2) - HermitianMatrix::identity(2) * 1e-9;
    const auto open = check_sdg_axioms(GambleCone(2, {shifted}), 10, 1, DensityMatrix::maximally_mixed(2));
    CHECK_FALSE(open.s3_holds);
    CHECK(open.s3[0].shifted_value == doctest::Approx(-1e-6 - 1e-9).epsilon(1e-6));

    const auto loss = check_sdg_axioms(GambleCone(2, {example_g(), example_h()}), 10, 1);
    CHECK_FALSE(loss.s3_holds);
    CHECK_FALSE(loss.dual.has_value());
}

TEST_CASE("property: payoff linearity and homogeneity") {
    Rng rng(33);
    for (int k = 0; k < 1000; ++k) {
        const Index n = 2 + static_cast<Index>(k % 4);
        const auto f = random_frame(n, rng);
        const auto a = random_hermitian(n, rng), b = random_hermitian(n, rng);
        const double nu = 5.0 * uniform01(rng);
        const auto pa = payoff(a, f), pb = payoff(b, f), pab = payoff(a + b, f), pna = payoff(a * nu, f);
        for (std::size_t i = 0; i < f.size(); ++i) {
            REQUIRE(std::abs(pab.gammas[i] - pa.gammas[i] - pb.gammas[i]) <= 1e-10);
            REQUIRE(std::abs(pna.gammas[i] - nu * pa.gammas[i]) <= 1e-10);
        }
    }
}

TEST_CASE("property: NegativeNonzero gambles never pay") {
    Rng rng(34);
    for (int k = 0; k < 300; ++k) {
        const Index n = 2 + static_cast<Index>(k % 3);
        const auto a = random_hermitian(n, rng);
        const auto neg = trusted_hermitian(-(a.matrix() * a.matrix()));
        for (double g : payoff(neg, random_frame(n, rng)).gammas) CHECK(g <= 1e-12);
    }
}

} // TEST_SUITE
