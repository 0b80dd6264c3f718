// measures.hpp: probability measures on the projector lattice and the expectation
// functional they induce on gambles.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qgamble/density.hpp"
#include "qgamble/hermitian.hpp"

namespace qgamble {

/// Orthonormal triple of Bloch directions that parametrizes a 2D dispersion-free measure.
struct Frame3 {
    BlochVector x, y, z;

    /// Throws BadFrame3 unless the vectors are orthonormal within 1e-12.
    static Frame3 make(const BlochVector& x, const BlochVector& y, const BlochVector& z);
    static Frame3 standard();
};

struct TableEntry {
    HermitianMatrix projector;
    double value;
};

class ProbabilityMeasure {
public:
    struct Born {
        DensityMatrix rho;
    };
    struct DispersionFree {
        Frame3 axes;
    };
    /// Explicit values. Lookup order for a projector Π: a listed entry, then 1 − p(I − Π) for a
    /// listed complement, then p(I) = 1 and p(0) = 0, then the optional Born fallback;
    /// anything else is NotDefined.
    struct Table {
        Index dim;
        std::vector<TableEntry> entries;
        std::optional<DensityMatrix> fallback;
    };
    using Kind = std::variant<Born, DispersionFree, Table>;

    static ProbabilityMeasure born(DensityMatrix rho);
    static ProbabilityMeasure dispersion_free(Frame3 axes);
    static ProbabilityMeasure table(Index n, std::vector<TableEntry> entries,
                                    std::optional<DensityMatrix> fallback = std::nullopt);

    Index dim() const noexcept { return dim_; }
    const Kind& kind() const noexcept { return kind_; }
    const char* kind_name() const noexcept;

    /// p(Π). Throws NotProjector, DimensionMismatch, NotDefined.
    double operator()(const HermitianMatrix& projector) const;

private:
    ProbabilityMeasure(Index dim, Kind kind) : dim_(dim), kind_(std::move(kind)) {}
    Index dim_;
    Kind kind_;
};

/// Tr(Π ρ), clamped into [0, 1] when within 1e-10 of the boundary.
double born_eval(const DensityMatrix& rho, const HermitianMatrix& projector);

/// Lexicographic sign rule over (x, y, z) applied to the Bloch vector of a rank-1 Π; n = 2.
int dispersion_free_eval(const Frame3& axes, const HermitianMatrix& projector);

struct ExpectationReport {
    double value;
    SpectralDecomposition decomposition;
};

/// E_p(G) = Σ λ_i p(Π_i) over the canonical spectral decomposition of G. Not assumed linear.
ExpectationReport expectation(const ProbabilityMeasure& p, const HermitianMatrix& g);

/// G ∈ K_p: G ⪈ 0, or E_p(G) > 1e-12.
bool induced_gamble_set_contains(const ProbabilityMeasure& p, const HermitianMatrix& g);

struct MeasureValidation {
    bool valid = true;
    double p1_violation = 0.0;       // |p(I) − 1|
    double max_p2_violation = 0.0;   // worst additivity defect found
    std::size_t checks = 0;          // additivity identities evaluated
    std::size_t skipped = 0;         // frames the measure could not evaluate (NotDefined)
    std::string detail;              // description of the worst violation, if any
};

inline constexpr double kP1Tolerance = 1e-10;
inline constexpr double kP2Tolerance = 1e-9;

/// Checks (P1) and samples (P2) on `trials` Haar-random frames; for n >= 3 also compares
/// p(Π_1 + Π_2) with p(Π_1) + p(Π_2). Table measures are also checked on {Π, I − Π} for every
/// listed Π. Throws BadParameter when trials < 1.
MeasureValidation validate_measure(const ProbabilityMeasure& p, int trials, std::uint64_t seed);

} // namespace qgamble
