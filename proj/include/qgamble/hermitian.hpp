// hermitian.hpp: Hermitian matrices, spectral decomposition, Bloch/Pauli helpers
// for n = 2, positivity classification, and rank-1 frames.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "qgamble/error.hpp"

namespace qgamble {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

namespace tol {
inline constexpr double kConstruction = 1e-12;  // Hermiticity, unit Bloch norm
inline constexpr double kDerived = 1e-10;       // projector / frame / PSD tests
inline constexpr double kEigenGroup = 1e-9;     // degenerate eigenvalue merge
} // namespace tol

/// An n×n complex Hermitian matrix. Every instance satisfies A = A† exactly:
/// inputs are checked against 1e-12 and then symmetrized.
class HermitianMatrix {
public:
    /// Validates and symmetrizes; throws NotHermitian / BadShape.
    static HermitianMatrix from_matrix(const CMatrix& m);
    static HermitianMatrix identity(Index n);
    static HermitianMatrix zero(Index n);
    static HermitianMatrix diagonal(const std::vector<double>& d);

    Index dim() const noexcept { return m_.rows(); }
    const CMatrix& matrix() const noexcept { return m_; }
    Complex operator()(Index i, Index j) const { return m_(i, j); }

    double trace() const { return m_.trace().real(); }
    double max_abs() const;
    bool is_zero(double tolerance = tol::kDerived) const { return max_abs() <= tolerance; }

    HermitianMatrix operator+(const HermitianMatrix& o) const;
    HermitianMatrix operator-(const HermitianMatrix& o) const;
    HermitianMatrix operator-() const;
    HermitianMatrix operator*(double s) const;
    HermitianMatrix operator/(double s) const;
    HermitianMatrix& operator+=(const HermitianMatrix& o);

private:
    explicit HermitianMatrix(CMatrix m);  // trusted; symmetrizes
    CMatrix m_;

    friend HermitianMatrix trusted_hermitian(CMatrix m);
};

inline HermitianMatrix operator*(double s, const HermitianMatrix& a) { return a * s; }

/// Internal constructor for matrices that are Hermitian up to round-off by construction
/// (products of the form V D V†, sums of Hermitian matrices).
HermitianMatrix trusted_hermitian(CMatrix m);

HermitianMatrix make_hermitian(const std::vector<std::vector<Complex>>& grid);

/// max_ij |A_ij - B_ij|
double max_entry_distance(const HermitianMatrix& a, const HermitianMatrix& b);

// ---------------------------------------------------------------------------
// Spectral decomposition

struct SpectralDecomposition {
    std::vector<double> eigenvalues;           // distinct, strictly increasing
    std::vector<HermitianMatrix> projectors;   // one per eigenvalue, rank = multiplicity
    std::vector<Index> ranks;

    HermitianMatrix reconstruct() const;
};

SpectralDecomposition spectral_decompose(const HermitianMatrix& g,
                                         double group_tol = tol::kEigenGroup);

/// Raw ascending eigenvalues (with multiplicity).
Eigen::VectorXd eigenvalues(const HermitianMatrix& g);

// ---------------------------------------------------------------------------
// Inner product and positivity

double inner(const HermitianMatrix& g, const HermitianMatrix& r);

enum class PsdClass { PositiveNonzero, NegativeNonzero, Zero, Indefinite };

PsdClass psd_classify(const HermitianMatrix& g);
const char* to_string(PsdClass c) noexcept;

bool is_projector(const HermitianMatrix& p, double tolerance = tol::kDerived);

// ---------------------------------------------------------------------------
// Qubit (n = 2) Bloch parametrization: Π_n = ½(I + n·σ)

struct BlochVector {
    std::array<double, 3> c{0.0, 0.0, 0.0};

    double x() const { return c[0]; }
    double y() const { return c[1]; }
    double z() const { return c[2]; }
    double norm() const;
    double dot(const BlochVector& o) const;
    BlochVector operator-() const { return {{-c[0], -c[1], -c[2]}}; }
};

const CMatrix& pauli(int axis);  // 0 → σ_x, 1 → σ_y, 2 → σ_z

/// ½(I + r·σ) for any real r (no unit-norm requirement).
HermitianMatrix bloch_matrix(const BlochVector& r);
HermitianMatrix projector_from_bloch(const BlochVector& n);
BlochVector bloch_from_projector(const HermitianMatrix& p);

// ---------------------------------------------------------------------------
// Frames: ordered resolutions of the identity into n rank-1 projectors.

class Frame {
public:
    static Frame from_projectors(std::vector<HermitianMatrix> projectors);
    /// Columns of a unitary matrix give the frame directions.
    static Frame from_unitary(const CMatrix& u);
    /// {Π_n, Π_{-n}} for n = 2.
    static Frame from_bloch(const BlochVector& n);
    static Frame computational(Index n);

    Index dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return projectors_.size(); }
    const HermitianMatrix& operator[](std::size_t i) const { return projectors_[i]; }
    const std::vector<HermitianMatrix>& projectors() const noexcept { return projectors_; }

private:
    Frame(Index dim, std::vector<HermitianMatrix> projectors)
        : dim_(dim), projectors_(std::move(projectors)) {}
    Index dim_ = 0;
    std::vector<HermitianMatrix> projectors_;
};

} // namespace qgamble
