// betting.hpp: the bookmaker protocol as a simulation: the bookmaker prepares a state and
// announces a frame, the strategy accepts gambles, outcomes follow the Born rule, and the
// wealth ledger collects the payoffs of accepted gambles.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qgamble/density.hpp"
#include "qgamble/desirability.hpp"
#include "qgamble/hermitian.hpp"
#include "qgamble/measures.hpp"
#include "qgamble/random.hpp"

namespace qgamble {

/// Accepts exactly K_p (measure) or posi(generators) + PSD (cone).
using Strategy = std::variant<ProbabilityMeasure, GambleCone>;

bool accepts(const Strategy& s, const HermitianMatrix& g);

struct BettingSession {
    DensityMatrix true_state;
    Frame frame;
    Strategy strategy;
    std::uint64_t seed = 0;
    int rounds = 1;
};

struct BetRecord {
    std::size_t gamble;  // index into the offered list
    bool accepted;
    double gamma;        // γ_i of the gamble at this round's outcome
};

struct RoundRecord {
    int round;
    std::size_t outcome;
    std::vector<BetRecord> bets;
    double payoff;  // Σ γ_i over accepted gambles
};

struct WealthTrajectory {
    std::vector<RoundRecord> rounds;
    std::vector<double> cumulative;  // cumulative[t] = cumulative[t−1] + rounds[t].payoff
    double final_wealth() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

/// The engine for round t is std::mt19937_64 seeded with splitmix64(seed + t).
Rng round_rng(std::uint64_t seed, int round);

/// Index i drawn with probability Tr(Π_i ρ). Throws BadDistribution when the probabilities
/// sum to 1 ± more than 1e-8, DimensionMismatch on a frame of the wrong dimension.
std::size_t sample_outcome(const DensityMatrix& rho, const Frame& frame, Rng& rng);

/// Every round offers all gambles; the strategy's decisions do not depend on the round.
/// Throws BadParameter (rounds < 1) and DimensionMismatch.
WealthTrajectory run_session(const BettingSession& session, std::span<const HermitianMatrix> offered);

/// Dispersion-free strategy on `axes` offered the sure-loss pair (G, H), measured in the
/// eigenframe of G + H. Throws InternalError if a round pays >= 0.
WealthTrajectory sure_loss_demo(const Frame3& axes, int rounds, std::uint64_t seed,
                                const std::optional<DensityMatrix>& state = std::nullopt);

/// Columns: round, accepted (count of accepted gambles), outcome, payoff, cumulative.
void write_csv(std::ostream& os, const WealthTrajectory& t);

} // namespace qgamble
