// density.hpp: density matrices (PSD, unit trace).

#pragma once

#include "qgamble/hermitian.hpp"

namespace qgamble {

class DensityMatrix {
public:
    /// Throws NotDensity unless min eigenvalue >= -1e-10 and |Tr - 1| <= 1e-10.
    static DensityMatrix from_hermitian(const HermitianMatrix& m);
    static DensityMatrix maximally_mixed(Index n);
    /// ½(I + r·σ); requires |r| <= 1 + 1e-10.
    static DensityMatrix from_bloch(const BlochVector& r);
    /// Nearest density matrix in Frobenius norm (eigenvalues projected onto the simplex).
    static DensityMatrix nearest(const HermitianMatrix& m);

    Index dim() const noexcept { return m_.dim(); }
    const HermitianMatrix& matrix() const noexcept { return m_; }
    operator const HermitianMatrix&() const noexcept { return m_; }

    /// Bloch vector r with ρ = ½(I + r·σ); n = 2 only.
    BlochVector bloch() const;

private:
    explicit DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {}
    HermitianMatrix m_;
};

/// Tr(A ρ) for Hermitian A.
double expectation_value(const HermitianMatrix& a, const DensityMatrix& rho);

double frobenius_distance(const HermitianMatrix& a, const HermitianMatrix& b);

} // namespace qgamble
