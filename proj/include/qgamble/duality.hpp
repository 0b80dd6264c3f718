// duality.hpp: density matrices representing gamble cones, membership in the maximal
// cone a density induces, and density reconstruction from measure values.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qgamble/density.hpp"
#include "qgamble/desirability.hpp"
#include "qgamble/measures.hpp"

namespace qgamble {

struct Feasible {
    DensityMatrix rho;
    double max_violation;  // max_j max(0, −Tr(G_j ρ))
    long iterations;
};
struct Infeasible {
    DutchBookCertificate certificate;
};
struct FeasibilityUndecided {
    double max_violation;
    long iterations;
};
using FeasibilityResult = std::variant<Feasible, Infeasible, FeasibilityUndecided>;

inline constexpr double kFeasibilityTol = 1e-9;
inline constexpr long kMaxIterations = 50000;

/// Looks for ρ with Tr(G_j ρ) >= 0 for every generator, by alternating projections; when
/// that stalls, looks for a Dutch book Σ ν_j G_j ≺ 0 with the same engine. The empty cone
/// yields the maximally mixed state. A non-maximal cone has many representing densities;
/// one of them is returned.
FeasibilityResult find_representing_density(const GambleCone& cone,
                                            double tol = kFeasibilityTol,
                                            long max_iter = kMaxIterations);

/// Same search with a strict margin Tr(G_j ρ) >= margin on every non-PSD generator.
FeasibilityResult find_interior_density(const GambleCone& cone, double margin,
                                        double tol = kFeasibilityTol,
                                        long max_iter = kMaxIterations);

std::optional<DutchBookCertificate> search_dutch_book(const GambleCone& cone,
                                                      double margin = kSureLossMargin,
                                                      long max_iter = 5000);

/// G ∈ (ρ)°: G ⪈ 0, or Tr(G ρ) > 1e-12.
bool induced_sdg_contains(const DensityMatrix& rho, const HermitianMatrix& g);

struct NonRepresentable {
    double bloch_norm;
    BlochVector r;
};
using Reconstruction2D = std::variant<DensityMatrix, NonRepresentable>;

/// r_k = 2 p(Π_{e_k}) − 1 on the coordinate axes; ρ = ½(I + r·σ) when |r| <= 1 + 1e-9.
Reconstruction2D reconstruct_density_2d(const ProbabilityMeasure& p);

struct LinearFit {
    HermitianMatrix estimate;  // unit trace, not necessarily PSD
    double residual;           // max |Tr(Π X) − p(Π)| over the frame projectors
};

/// Least-squares Hermitian X with Tr X = 1 and Tr(Π X) ≈ p(Π) on every frame projector.
/// Throws NotInformationallyComplete when the projectors do not span the Hermitian matrices.
LinearFit linear_inversion(const ProbabilityMeasure& p, std::span<const Frame> frames);

struct ReconstructionND {
    DensityMatrix rho;
    double residual;
};

inline constexpr double kReconstructionResidual = 1e-6;

/// Linear inversion followed by projection onto the density matrices. Throws
/// NotInformationallyComplete or ResidualTooLarge (residual > 1e-6).
ReconstructionND reconstruct_density_nd(const ProbabilityMeasure& p, std::span<const Frame> frames);

/// n + 1 Haar-random frames whose projectors span the Hermitian matrices (seeded).
std::vector<Frame> tomography_frames(Index n, std::uint64_t seed);

bool informationally_complete(std::span<const Frame> frames);

} // namespace qgamble
