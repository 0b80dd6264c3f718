#include "support.hpp"

#include "qgamble/duality.hpp"

using namespace testing;

namespace {

std::vector<HermitianMatrix> sample_from_induced(const DensityMatrix& rho, std::size_t m, Rng& rng) {
    std::vector<HermitianMatrix> out;
    while (out.size() < m) {
        const auto g = random_hermitian(rho.dim(), rng);
        if (induced_sdg_contains(rho, g)) out.push_back(g);
    }
    return out;
}

double min_trace(const std::vector<HermitianMatrix>& gens, const DensityMatrix& rho) {
    double worst = 1e300;
    for (const auto& g : gens) worst = std::min(worst, inner(g, rho));
    return worst;
}

std::vector<Frame> axis_frames() {
    return {Frame::from_bloch({{1, 0, 0}}), Frame::from_bloch({{0, 1, 0}}), Frame::from_bloch({{0, 0, 1}})};
}

} // namespace

TEST_SUITE("duality") {

TEST_CASE("empty cone gives the maximally mixed state") {
    for (Index n = 1; n <= 4; ++n) {
        const auto r = find_representing_density(GambleCone(n));
        REQUIRE(std::holds_alternative<Feasible>(r));
        CHECK(max_dev(std::get<Feasible>(r).rho.matrix(), HermitianMatrix::identity(n) / static_cast<double>(n)) < 1e-15);
    }
}

TEST_CASE("the worked example admits a Dutch book") {
    const GambleCone cone(2, {example_g(), example_h()});
    const auto r = find_representing_density(cone);
    REQUIRE(std::holds_alternative<Infeasible>(r));
    const auto& c = std::get<Infeasible>(r).certificate;
    CHECK(c.weights[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.weights[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(max_dev(c.combined, example_f()) < 1e-9);
    CHECK(c.max_eigenvalue == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(verify_certificate(c, cone));
}

TEST_CASE("a single indefinite generator is feasible") {
    const auto r = find_representing_density(GambleCone(2, {sigma(2)}));
    REQUIRE(std::holds_alternative<Feasible>(r));
    CHECK(std::get<Feasible>(r).rho.bloch().z() >= -1e-9);
}

TEST_CASE("a negative generator is a sure loss by itself") {
    const GambleCone cone(3, {HermitianMatrix::diagonal({-1, -2, -0.5})});
    const auto r = find_representing_density(cone);
    REQUIRE(std::holds_alternative<Infeasible>(r));
    CHECK(verify_certificate(std::get<Infeasible>(r).certificate, cone));
}

TEST_CASE("tight but feasible cones") {
    // σ_z and −σ_z force Tr(σ_z ρ) = 0.
    const auto r = find_representing_density(GambleCone(2, {sigma(2), -sigma(2), sigma(0)}));
    REQUIRE(std::holds_alternative<Feasible>(r));
    const auto& f = std::get<Feasible>(r);
    CHECK(std::abs(f.rho.bloch().z()) <= 1e-9);
    CHECK(f.rho.bloch().x() >= -1e-9);
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(find_representing_density(GambleCone(2, {sigma(2)}), 0.0), Error);
    CHECK_THROWS_AS(find_representing_density(GambleCone(2, {sigma(2)}), 1e-9, 0), Error);
}

TEST_CASE("induced SDG membership") {
    Rng rng(41);
    const auto rho = random_density(3, rng);
    CHECK(induced_sdg_contains(rho, random_rank1_projector(3, rng)));
    CHECK_FALSE(induced_sdg_contains(DensityMatrix::maximally_mixed(2), sigma(2)));
    // Tr(G diag(1,0)) = −1/4.
    CHECK_FALSE(induced_sdg_contains(pure_z(), example_g()));
    CHECK_THROWS_AS(induced_sdg_contains(pure_z(), HermitianMatrix::identity(3)), Error);
}

TEST_CASE("two-dimensional reconstruction") {
    const auto mixed = reconstruct_density_2d(ProbabilityMeasure::born(DensityMatrix::maximally_mixed(2)));
    REQUIRE(std::holds_alternative<DensityMatrix>(mixed));
    CHECK(max_dev(std::get<DensityMatrix>(mixed).matrix(), diag2(0.5, 0.5)) < 1e-15);

    const auto z = reconstruct_density_2d(ProbabilityMeasure::born(pure_z()));
    REQUIRE(std::holds_alternative<DensityMatrix>(z));
    CHECK(max_dev(std::get<DensityMatrix>(z).matrix(), diag2(1, 0)) < 1e-15);

    const auto df = reconstruct_density_2d(ProbabilityMeasure::dispersion_free(Frame3::standard()));
    REQUIRE(std::holds_alternative<NonRepresentable>(df));
    CHECK(std::get<NonRepresentable>(df).bloch_norm == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    for (int k = 0; k < 3; ++k) CHECK(std::get<NonRepresentable>(df).r.c[k] == 1.0);

    CHECK_THROWS_AS(reconstruct_density_2d(ProbabilityMeasure::born(DensityMatrix::maximally_mixed(3))), Error);
}

TEST_CASE("n-dimensional reconstruction") {
    Rng rng(42);
    const auto rho0 = random_density(3, rng);
    const auto frames = tomography_frames(3, 9);
    const auto r = reconstruct_density_nd(ProbabilityMeasure::born(rho0), frames);
    CHECK(frobenius_distance(r.rho, rho0) <= 1e-8);
    CHECK(r.residual <= 1e-10);

    const auto third = reconstruct_density_nd(ProbabilityMeasure::born(DensityMatrix::maximally_mixed(3)), frames);
    CHECK(max_dev(third.rho.matrix(), HermitianMatrix::identity(3) / 3.0) < 1e-10);

    // A single frame only sees the diagonal.
    const std::vector<Frame> one{Frame::computational(3)};
    try {
        reconstruct_density_nd(ProbabilityMeasure::born(rho0), one);
        FAIL("expected NotInformationallyComplete");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInformationallyComplete);
    }

    // 0.7 on both Π_z and Π_{−z} cannot come from a trace functional.
    const auto bad = ProbabilityMeasure::table(2, {{diag2(1, 0), 0.7}, {diag2(0, 1), 0.7}},
                                               DensityMatrix::maximally_mixed(2));
    try {
        reconstruct_density_nd(bad, axis_frames());
        FAIL("expected ResidualTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ResidualTooLarge);
    }
}

TEST_CASE("property: Born round trip through reconstruction") {
    Rng rng(43);
    for (int k = 0; k < 200; ++k) {
        const auto rho = random_density(2, rng);
        const auto r = reconstruct_density_2d(ProbabilityMeasure::born(rho));
        REQUIRE(std::holds_alternative<DensityMatrix>(r));
        REQUIRE(frobenius_distance(std::get<DensityMatrix>(r), rho) <= 1e-9);
    }
    for (Index n = 2; n <= 4; ++n) {
        const auto frames = tomography_frames(n, static_cast<std::uint64_t>(n));
        for (int k = 0; k < 30; ++k) {
            const auto rho = random_density(n, rng);
            REQUIRE(frobenius_distance(reconstruct_density_nd(ProbabilityMeasure::born(rho), frames).rho, rho) <= 1e-8);
        }
    }
}

TEST_CASE("property: gambles drawn from an induced SDG are representable") {
    Rng rng(44);
    for (int k = 0; k < 20; ++k) {
        const Index n = 2 + static_cast<Index>(k % 3);
        const auto rho = random_density(n, rng);
        const auto gens = sample_from_induced(rho, 50, rng);
        const auto r = find_representing_density(GambleCone(n, gens));
        REQUIRE(std::holds_alternative<Feasible>(r));
        CHECK(min_trace(gens, std::get<Feasible>(r).rho) >= -1e-9);
    }
}

TEST_CASE("property: more gambles pin the representing density down") {
    Rng rng(45);
    double few = 0.0, many = 0.0;
    const int trials = 10;
    for (int k = 0; k < trials; ++k) {
        const auto rho = random_density(2, rng);
        const auto gens = sample_from_induced(rho, 200, rng);
        const std::vector<HermitianMatrix> head(gens.begin(), gens.begin() + 10);
        const auto a = find_representing_density(GambleCone(2, head));
        const auto b = find_representing_density(GambleCone(2, gens));
        REQUIRE(std::holds_alternative<Feasible>(a));
        REQUIRE(std::holds_alternative<Feasible>(b));
        few += frobenius_distance(std::get<Feasible>(a).rho, rho);
        many += frobenius_distance(std::get<Feasible>(b).rho, rho);
    }
    CHECK(many < few);
}

TEST_CASE("property: certificates are sound and exclusive") {
    Rng rng(46);
    int infeasible = 0;
    for (int k = 0; k < 60; ++k) {
        const Index n = 2 + static_cast<Index>(k % 2);
        std::vector<HermitianMatrix> gens;
        for (int j = 0; j < 4; ++j) gens.push_back(random_hermitian(n, rng) - HermitianMatrix::identity(n) * 0.8);
        const GambleCone cone(n, gens);
        const auto r = find_representing_density(cone);
        if (const auto* inf = std::get_if<Infeasible>(&r)) {
            ++infeasible;
            CHECK(verify_certificate(inf->certificate, cone));
            // No density can satisfy all constraints: test the ones we can produce.
            for (int j = 0; j < 20; ++j) CHECK(min_trace(gens, random_density(n, rng)) < 0.0);
        } else if (const auto* f = std::get_if<Feasible>(&r)) {
            CHECK(min_trace(gens, f->rho) >= -1e-9);
            CHECK_FALSE(search_dutch_book(cone).has_value());
        }
    }
    CHECK(infeasible > 0);
}

} // TEST_SUITE
