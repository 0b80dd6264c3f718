#include "qgamble/density.hpp"

#include <cmath>
#include <sstream>

#include "alternating.hpp"

namespace qgamble {

DensityMatrix DensityMatrix::from_hermitian(const HermitianMatrix& m) {
    const double min_eig = eigenvalues(m)(0);
    if (min_eig < -tol::kDerived) {
        std::ostringstream os;
        os << "minimum eigenvalue " << min_eig << " < 0";
        throw Error(ErrorCode::NotDensity, os.str());
    }
    if (std::abs(m.trace() - 1.0) > tol::kDerived) {
        std::ostringstream os;
        os << "trace " << m.trace() << " != 1";
        throw Error(ErrorCode::NotDensity, os.str());
    }
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed(Index n) {
    return DensityMatrix(HermitianMatrix::identity(n) / static_cast<double>(n));
}

DensityMatrix DensityMatrix::from_bloch(const BlochVector& r) {
    const double nrm = r.norm();
    if (nrm > 1.0 + tol::kDerived) {
        std::ostringstream os;
        os << "Bloch vector norm " << nrm << " > 1";
        throw Error(ErrorCode::NotDensity, os.str());
    }
    BlochVector s = r;
    if (nrm > 1.0)
        for (auto& v : s.c) v /= nrm;
    return DensityMatrix(bloch_matrix(s));
}

DensityMatrix DensityMatrix::nearest(const HermitianMatrix& m) {
    return DensityMatrix(trusted_hermitian(detail::project_to_density(m.matrix())));
}

BlochVector DensityMatrix::bloch() const {
    if (dim() != 2) throw Error(ErrorCode::WrongDimension, "Bloch vectors exist only for n = 2");
    BlochVector r;
    for (int k = 0; k < 3; ++k)
        r.c[static_cast<std::size_t>(k)] = (pauli(k) * m_.matrix()).trace().real();
    return r;
}

double expectation_value(const HermitianMatrix& a, const DensityMatrix& rho) {
    return inner(a, rho.matrix());
}

double frobenius_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "frobenius_distance");
    return (a.matrix() - b.matrix()).norm();
}

} // namespace qgamble
