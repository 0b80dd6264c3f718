// desirability.hpp: gamble payoffs under a frame, finitely generated gamble cones, and the
// rationality / SDG axiom checks.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qgamble/density.hpp"
#include "qgamble/hermitian.hpp"

namespace qgamble {

/// Payoffs γ_i (in utiles) of a gamble under a rank-1 frame: Π_i G Π_i = γ_i Π_i.
struct PayoffVector {
    HermitianMatrix gamble;
    Frame frame;
    std::vector<double> gammas;
};

PayoffVector payoff(const HermitianMatrix& g, const Frame& frame);

/// Explicitly accepted gambles. The cone they generate implicitly also contains every
/// PositiveNonzero matrix. Generators equal up to positive scaling are stored once.
class GambleCone {
public:
    explicit GambleCone(Index n, std::vector<HermitianMatrix> generators = {});

    Index dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return generators_.size(); }
    const std::vector<HermitianMatrix>& generators() const noexcept { return generators_; }

private:
    Index dim_;
    std::vector<HermitianMatrix> generators_;
};

/// Σ ν_j G_j (+ psd_part). Throws NegativeWeight, DimensionMismatch, BadParameter.
HermitianMatrix cone_combine(const GambleCone& cone, std::span<const double> weights,
                             const std::optional<HermitianMatrix>& psd_part = std::nullopt);

/// Membership in posi(generators) + PSD, decided by alternating projections.
bool cone_contains(const GambleCone& cone, const HermitianMatrix& g);

/// Nonnegative weights whose combination of generators is negative definite: a sure loss.
struct DutchBookCertificate {
    std::vector<double> weights;   // normalized so the largest weight is 1
    HermitianMatrix combined;      // Σ ν_j G_j
    double max_eigenvalue;         // <= -1e-6
};

inline constexpr double kSureLossMargin = 1e-6;

bool verify_certificate(const DutchBookCertificate& cert, const GambleCone& cone,
                        double margin = kSureLossMargin);

// ---------------------------------------------------------------------------

struct AvoidsPartialLoss {
    DensityMatrix rho;  // dual witness: Tr(G_j ρ) >= 0 for every generator
};
struct PartialLossUndecided {
    double max_violation;
    long iterations;
};
using PartialLossCheck = std::variant<AvoidsPartialLoss, DutchBookCertificate, PartialLossUndecided>;

PartialLossCheck check_avoiding_partial_loss(const GambleCone& cone, double eps = kSureLossMargin);

struct GeneratorOpenness {
    std::size_t index;
    bool positive;          // G ⪈ 0, (S2) branch
    double shifted_value;   // Tr((G − εI) ρ)
    bool holds;
};

struct AxiomReport {
    bool s1_by_construction = true;  // posi(...) is a convex cone
    bool s2_by_construction = true;  // PSD nonzero matrices are always included
    std::size_t s1_samples = 0;      // sampled combinations checked against the dual
    std::size_t s1_failures = 0;
    std::vector<GeneratorOpenness> s3;
    bool s3_holds = false;
    bool inconclusive = false;
    std::optional<DensityMatrix> dual;
    std::string note;
};

inline constexpr double kOpennessEpsilon = 1e-6;

/// (S3) is checked per generator through a dual density ρ: G ⪈ 0 or Tr((G − εI)ρ) > 0 with
/// ε = 1e-6. Without an explicit `dual` one is searched for with the duality solver.
AxiomReport check_sdg_axioms(const GambleCone& cone, int samples, std::uint64_t seed,
                             const std::optional<DensityMatrix>& dual = std::nullopt);

} // namespace qgamble
