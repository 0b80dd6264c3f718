#include "support.hpp"

#include <sstream>

#include "qgamble/betting.hpp"
#include "qgamble/gleason.hpp"

using namespace testing;

namespace {

// |freq − q| within three binomial standard deviations.
bool within_3_sigma(std::size_t hits, std::size_t draws, double q) {
    const double freq = static_cast<double>(hits) / static_cast<double>(draws);
    return std::abs(freq - q) <= 3.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(draws)) + 1e-15;
}

std::vector<std::size_t> counts(const DensityMatrix& rho, const Frame& f, std::size_t draws, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::size_t> c(f.size(), 0);
    for (std::size_t k = 0; k < draws; ++k) ++c[sample_outcome(rho, f, rng)];
    return c;
}

BettingSession session(DensityMatrix rho, Frame f, Strategy s, int rounds, std::uint64_t seed = 3) {
    return BettingSession{std::move(rho), std::move(f), std::move(s), seed, rounds};
}

} // namespace

TEST_SUITE("betting") {

TEST_CASE("sample_outcome") {
    const auto zf = Frame::computational(2);
    const auto det = counts(pure_z(), zf, 1000, 1);
    CHECK(det[0] == 1000);

    const auto mixed = counts(DensityMatrix::maximally_mixed(2), Frame::from_bloch({{0.6, 0.0, 0.8}}), 10000, 2);
    CHECK(within_3_sigma(mixed[0], 10000, 0.5));

    const auto biased = counts(DensityMatrix::from_bloch({{0, 0, 0.6}}), zf, 10000, 3);
    CHECK(within_3_sigma(biased[0], 10000, 0.8));
    CHECK(within_3_sigma(biased[1], 10000, 0.2));

    Rng rng(4);
    CHECK_THROWS_AS(sample_outcome(DensityMatrix::maximally_mixed(3), zf, rng), Error);
}

TEST_CASE("the worked example loses every round") {
    const auto p = ProbabilityMeasure::dispersion_free(Frame3::standard());
    const std::vector<HermitianMatrix> offered{example_g(), example_h()};
    const auto s = session(DensityMatrix::maximally_mixed(2), Frame::from_bloch({{1, 0, 0}}), p, 200);
    const auto t = run_session(s, offered);
    REQUIRE(t.rounds.size() == 200);
    for (const auto& r : t.rounds) {
        CHECK(r.bets[0].accepted);
        CHECK(r.bets[1].accepted);
        const double want = r.outcome == 0 ? -0.5 : -5.5;
        CHECK(r.payoff == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("boundary and positive gambles") {
    const auto half = DensityMatrix::maximally_mixed(2);
    const std::vector<HermitianMatrix> sz{sigma(2)};
    const auto t = run_session(session(half, Frame::computational(2), ProbabilityMeasure::born(half), 20), sz);
    CHECK(t.final_wealth() == 0.0);
    for (const auto& r : t.rounds) CHECK_FALSE(r.bets[0].accepted);

    const std::vector<HermitianMatrix> id{HermitianMatrix::identity(2)};
    const auto df = ProbabilityMeasure::dispersion_free(Frame3::standard());
    const auto u = run_session(session(half, Frame::computational(2), df, 10), id);
    for (std::size_t k = 0; k < u.cumulative.size(); ++k)
        CHECK(u.cumulative[k] == doctest::Approx(static_cast<double>(k + 1)).epsilon(1e-15));

    const auto cone = run_session(session(half, Frame::computational(2), GambleCone(2, {sigma(2)}), 10),
                                  std::vector<HermitianMatrix>{sigma(2), sigma(0)});
    for (const auto& r : cone.rounds) {
        CHECK(r.bets[0].accepted);
        CHECK_FALSE(r.bets[1].accepted);
    }
}

TEST_CASE("session argument checks") {
    const auto half = DensityMatrix::maximally_mixed(2);
    const auto p = ProbabilityMeasure::born(half);
    const std::vector<HermitianMatrix> none;
    CHECK_THROWS_AS(run_session(session(half, Frame::computational(2), p, 0), none), Error);
    CHECK_THROWS_AS(run_session(session(half, Frame::computational(3), p, 5), none), Error);
    const std::vector<HermitianMatrix> wrong{HermitianMatrix::identity(3)};
    CHECK_THROWS_AS(run_session(session(half, Frame::computational(2), p, 5), wrong), Error);
}

TEST_CASE("sure-loss demo") {
    const auto t = sure_loss_demo(Frame3::standard(), 100, 7);
    CHECK(t.final_wealth() <= -50.0);
    double prev = 0.0;
    for (double c : t.cumulative) {
        CHECK(c <= prev - 0.5 + 1e-12);
        prev = c;
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const double w = sure_loss_demo(Frame3::standard(), 1, seed).final_wealth();
        CHECK((std::abs(w + 0.5) < 1e-12 || std::abs(w + 5.5) < 1e-12));
    }
    Rng rng(8);
    for (int k = 0; k < 20; ++k) {
        const auto r = sure_loss_demo(random_frame3(rng), 50, static_cast<std::uint64_t>(k));
        for (const auto& round : r.rounds) CHECK(round.payoff < 0.0);
    }
    CHECK_THROWS_AS(sure_loss_demo(Frame3::standard(), 0, 1), Error);
}

TEST_CASE("csv output") {
    std::ostringstream os;
    write_csv(os, sure_loss_demo(Frame3::standard(), 3, 1));
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "round,accepted,outcome,payoff,cumulative");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.rfind(std::to_string(rows - 1) + ",2,", 0) == 0);
    }
    CHECK(rows == 3);
}

TEST_CASE("property: determinism and ledger conservation") {
    const auto df = ProbabilityMeasure::dispersion_free(Frame3::standard());
    const std::vector<HermitianMatrix> offered{example_g(), example_h(), HermitianMatrix::identity(2) * 0.25};
    const auto s = session(DensityMatrix::from_bloch({{0.3, 0.1, -0.4}}), Frame::from_bloch({{0, 0.6, 0.8}}), df, 10000, 99);
    const auto a = run_session(s, offered);
    const auto b = run_session(s, offered);
    double total = 0.0;
    for (std::size_t k = 0; k < a.rounds.size(); ++k) {
        REQUIRE(a.rounds[k].outcome == b.rounds[k].outcome);
        REQUIRE(a.cumulative[k] == b.cumulative[k]);
        double round = 0.0;
        for (const auto& bet : a.rounds[k].bets)
            if (bet.accepted) round += bet.gamma;
        REQUIRE(round == a.rounds[k].payoff);
        total += round;
    }
    CHECK(std::abs(a.final_wealth() - total) <= 1e-9);
}

TEST_CASE("property: outcome frequencies follow the Born rule") {
    Rng rng(61);
    for (int k = 0; k < 10; ++k) {
        const Index n = 2 + static_cast<Index>(k % 3);
        const auto rho = random_density(n, rng);
        const auto f = random_frame(n, rng);
        const auto c = counts(rho, f, 10000, static_cast<std::uint64_t>(k));
        for (std::size_t i = 0; i < f.size(); ++i) CHECK(within_3_sigma(c[i], 10000, inner(f[i], rho)));
    }
}

TEST_CASE("property: coherent strategies gain in expectation") {
    Rng rng(62);
    for (int k = 0; k < 10000; ++k) {
        const Index n = 2 + static_cast<Index>(k % 2);
        const auto rho = random_density(n, rng);
        const auto g = random_hermitian(n, rng);
        if (psd_classify(g) == PsdClass::PositiveNonzero) continue;
        if (!accepts(ProbabilityMeasure::born(rho), g)) continue;
        // Σ Tr(Π_i ρ) γ_i equals Tr(G ρ) only when the frame diagonalizes G.
        const auto f = Frame::from_projectors(spectral_decompose(g).projectors);
        double expected = 0.0;
        const auto pv = payoff(g, f);
        for (std::size_t i = 0; i < f.size(); ++i) expected += inner(f[i], rho) * pv.gammas[i];
        REQUIRE(expected > 0.0);
    }
}

} // TEST_SUITE
