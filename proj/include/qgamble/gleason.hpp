// gleason.hpp: coherence verdicts for probability measures, with constructive witnesses:
// sure-loss pairs for dispersion-free measures and refutation gambles for measures that
// disagree with a density matrix somewhere.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qgamble/density.hpp"
#include "qgamble/hermitian.hpp"
#include "qgamble/measures.hpp"

namespace qgamble {

enum class WitnessKind {
    SureLoss,     // the sum is negative definite or NegativeNonzero
    NonAdditive,  // the sum is outside K_p although every summand is inside
};

const char* to_string(WitnessKind k) noexcept;

struct IncoherenceWitness {
    std::vector<HermitianMatrix> gambles;  // each in K_p
    std::vector<double> expectations;      // E_p of each gamble
    HermitianMatrix sum;
    double sum_expectation;
    PsdClass sum_class;
    double sum_max_eigenvalue;
    WitnessKind kind;
};

/// Every gamble in K_p, sum = Σ gambles within 1e-10, and the sum NegativeNonzero or outside K_p.
bool verify_witness(const ProbabilityMeasure& p, const IncoherenceWitness& w);

/// Builds the witness for a 2D dispersion-free measure on `axes`: g = a·x + √(1−a²)(√(2/3)·y +
/// √(1/3)·z), h = a·x − √(1−a²)(√(2/3)·y + √(1/3)·z), G = λ1 Π_g + λ2 Π_{−g}, H likewise.
/// The sum has eigenvalues λ1(1 ± a) + λ2(1 ∓ a). λ2 defaults to 1.2 times the boundary value
/// −λ1(1+a)/(1−a). Throws BadParameter unless 0 < a < 1, λ1 > 0 and λ2 is below the boundary.
IncoherenceWitness dispersion_free_witness(const Frame3& axes, double a, double lambda1,
                                           std::optional<double> lambda2 = std::nullopt);

/// Parameters that reproduce the worked sure-loss example on the standard axes.
inline constexpr double kExampleA = 0.5;
inline constexpr double kExampleLambda1 = 1.0;
inline constexpr double kExampleLambda2 = -4.0;

inline constexpr double kDisagreementTol = 1e-8;
inline constexpr double kRefutationEpsilon = 1e-3;

/// p(Π) = 0 < Tr(Π ρ): G = λ1 Π + λ2 (I − Π) with λ1 = ε + 1/Tr(Π ρ) and λ2 = −1 when
/// Tr((I − Π) ρ) = 0, else −1/Tr((I − Π) ρ). Throws PreconditionViolated.
HermitianMatrix refutation_gamble_case1(const ProbabilityMeasure& p, const DensityMatrix& rho,
                                        const HermitianMatrix& projector,
                                        double epsilon = kRefutationEpsilon);

/// Tr(Π ρ) > p(Π) > 0: G = Π/p(Π) − (I − Π)/p(I − Π). Throws PreconditionViolated.
HermitianMatrix refutation_gamble_case2(const ProbabilityMeasure& p, const DensityMatrix& rho,
                                        const HermitianMatrix& projector);

struct Refutation {
    HermitianMatrix gamble;
    HermitianMatrix projector;  // the projector the construction used (I − Π when mirrored)
    int construction;           // 1 or 2
    bool mirrored;
    double expectation;         // E_p(G) <= 0
    double trace_value;         // Tr(G ρ) > 0
};

/// Picks the construction for a disagreement at Π, first replacing Π by I − Π when
/// Tr(Π ρ) < p(Π). Throws PreconditionViolated when |p(Π) − Tr(Π ρ)| <= 1e-8.
Refutation refute(const ProbabilityMeasure& p, const DensityMatrix& rho,
                  const HermitianMatrix& projector, double epsilon = kRefutationEpsilon);

/// Splits `target` into one gamble per frame, each diagonal in its frame and each with the same
/// positive expectation, provided p is additive on every frame and Σ_Π w_Π p(Π) > 0 for the
/// expansion target = Σ w_Π Π. Returns nullopt when the split or its verification fails.
std::optional<IncoherenceWitness> split_over_frames(const ProbabilityMeasure& p,
                                                    const HermitianMatrix& target,
                                                    std::span<const Frame> frames);

struct CoherenceConfig {
    int samples = 1000;
    std::uint64_t seed = 0;
    double tol = kDisagreementTol;
    double epsilon = kRefutationEpsilon;
};

struct Coherent {
    DensityMatrix rho;
    double max_disagreement;  // max |p(Π) − Tr(Π ρ)| over the checked projectors
    std::size_t checked;
};
struct Incoherent {
    IncoherenceWitness witness;
    std::optional<Refutation> refutation;
    std::optional<DensityMatrix> candidate;
};
struct CoherenceUndecided {
    std::string reason;
};
using CoherenceVerdict = std::variant<Coherent, Incoherent, CoherenceUndecided>;

/// Born measures are coherent; dispersion-free measures get the sure-loss witness; tables are
/// fitted to a candidate density on informationally complete frames and compared with it on
/// their listed projectors and on `samples` Haar-random rank-1 projectors.
/// Throws InvalidMeasure when p fails (P1) or, for tables, the sampled (P2) check.
CoherenceVerdict check_measure_coherence(const ProbabilityMeasure& p, const CoherenceConfig& config = {});

} // namespace qgamble
