#include "qgamble/betting.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qgamble/gleason.hpp"
#include "qgamble/kernels.hpp"

namespace qgamble {

namespace {
constexpr double kDistributionTol = 1e-8;
}

bool accepts(const Strategy& s, const HermitianMatrix& g) {
    if (const auto* p = std::get_if<ProbabilityMeasure>(&s)) return induced_gamble_set_contains(*p, g);
    return cone_contains(std::get<GambleCone>(s), g);
}

Rng round_rng(std::uint64_t seed, int round) {
    return Rng(splitmix64(seed + static_cast<std::uint64_t>(round)));
}

std::size_t sample_outcome(const DensityMatrix& rho, const Frame& frame, Rng& rng) {
    if (frame.dim() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "frame vs state");
    std::vector<double> prob(frame.size());
    double total = 0.0;
    for (std::size_t i = 0; i < frame.size(); ++i) {
        prob[i] = born_eval(rho, frame[i]);
        total += prob[i];
    }
    if (std::abs(total - 1.0) > kDistributionTol) {
        std::ostringstream os;
        os << "outcome probabilities sum to " << total;
        throw Error(ErrorCode::BadDistribution, os.str());
    }
    const double u = uniform01(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i) {
        acc += prob[i];
        if (u < acc) return i;
    }
    // u landed in the rounding gap at the top; return the last outcome with positive mass.
    for (std::size_t i = prob.size(); i-- > 0;)
        if (prob[i] > 0.0) return i;
    return prob.size() - 1;
}

WealthTrajectory run_session(const BettingSession& s, std::span<const HermitianMatrix> offered) {
    if (s.rounds < 1) throw Error(ErrorCode::BadParameter, "rounds must be >= 1");
    const Index n = s.true_state.dim();
    if (s.frame.dim() != n) throw Error(ErrorCode::DimensionMismatch, "frame vs state");
    const Index sn = std::holds_alternative<ProbabilityMeasure>(s.strategy)
                         ? std::get<ProbabilityMeasure>(s.strategy).dim()
                         : std::get<GambleCone>(s.strategy).dim();
    if (sn != n) throw Error(ErrorCode::DimensionMismatch, "strategy vs state");
    for (const auto& g : offered)
        if (g.dim() != n) throw Error(ErrorCode::DimensionMismatch, "offered gamble vs state");

    std::vector<bool> take(offered.size());
    for (std::size_t k = 0; k < offered.size(); ++k) take[k] = accepts(s.strategy, offered[k]);
    const Eigen::MatrixXd gamma = kernels::payoff_table(offered, s.frame);

    WealthTrajectory out;
    out.rounds.reserve(static_cast<std::size_t>(s.rounds));
    out.cumulative.reserve(static_cast<std::size_t>(s.rounds));
    double wealth = 0.0;
    for (int t = 0; t < s.rounds; ++t) {
        Rng rng = round_rng(s.seed, t);
        const std::size_t i = sample_outcome(s.true_state, s.frame, rng);
        RoundRecord r{t, i, {}, 0.0};
        for (std::size_t k = 0; k < offered.size(); ++k) {
            const double g = gamma(static_cast<Index>(k), static_cast<Index>(i));
            r.bets.push_back({k, take[k], g});
            if (take[k]) r.payoff += g;
        }
        wealth += r.payoff;
        out.cumulative.push_back(wealth);
        out.rounds.push_back(std::move(r));
    }
    return out;
}

WealthTrajectory sure_loss_demo(const Frame3& axes, int rounds, std::uint64_t seed,
                                const std::optional<DensityMatrix>& state) {
    if (rounds < 1) throw Error(ErrorCode::BadParameter, "rounds must be >= 1");
    const auto w = dispersion_free_witness(axes, kExampleA, kExampleLambda1, kExampleLambda2);
    const auto dec = spectral_decompose(w.sum);
    if (dec.projectors.size() != 2)
        throw Error(ErrorCode::InternalError, "witness sum has a degenerate spectrum");

    BettingSession s{state.value_or(DensityMatrix::maximally_mixed(2)),
                     Frame::from_projectors(dec.projectors),
                     ProbabilityMeasure::dispersion_free(axes), seed, rounds};
    auto traj = run_session(s, w.gambles);
    for (const auto& r : traj.rounds) {
        if (!(r.payoff < 0.0)) {
            std::ostringstream os;
            os << "round " << r.round << " paid " << r.payoff << " to a sure loser";
            throw Error(ErrorCode::InternalError, os.str());
        }
    }
    return traj;
}

void write_csv(std::ostream& os, const WealthTrajectory& t) {
    os << "round,accepted,outcome,payoff,cumulative\n";
    const auto old = os.precision(17);
    for (std::size_t k = 0; k < t.rounds.size(); ++k) {
        const auto& r = t.rounds[k];
        std::size_t accepted = 0;
        for (const auto& b : r.bets) accepted += b.accepted ? 1 : 0;
        os << r.round << ',' << accepted << ',' << r.outcome << ',' << r.payoff << ','
           << t.cumulative[k] << '\n';
    }
    os.precision(old);
}

} // namespace qgamble
