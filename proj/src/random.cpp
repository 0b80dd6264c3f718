#include "qgamble/random.hpp"

#include <cmath>

namespace qgamble {

namespace {

CMatrix ginibre(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    CMatrix a(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) a(i, j) = Complex(nd(rng), nd(rng));
    return a;
}

} // namespace

HermitianMatrix random_hermitian(Index n, Rng& rng) {
    return trusted_hermitian(ginibre(n, n, rng));
}

CMatrix random_unitary(Index n, Rng& rng) {
    const CMatrix z = ginibre(n, n, rng);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double ad = std::abs(d);
        if (ad > 0.0) q.col(j) *= d / ad;
    }
    return q;
}

HermitianMatrix random_rank1_projector(Index n, Rng& rng) {
    CVector v = ginibre(n, 1, rng).col(0);
    v.normalize();
    return trusted_hermitian(v * v.adjoint());
}

Frame random_frame(Index n, Rng& rng) { return Frame::from_unitary(random_unitary(n, rng)); }

DensityMatrix random_density(Index n, Rng& rng) {
    const CMatrix a = ginibre(n, n, rng);
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::from_hermitian(trusted_hermitian(rho));
}

BlochVector random_unit_vector(Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    BlochVector v;
    double nrm = 0.0;
    while (nrm < 1e-8) {
        v = BlochVector{{nd(rng), nd(rng), nd(rng)}};
        nrm = v.norm();
    }
    for (auto& c : v.c) c /= nrm;
    return v;
}

std::array<BlochVector, 3> random_orthonormal_triple(Rng& rng) {
    const BlochVector x = random_unit_vector(rng);
    BlochVector y;
    double nrm = 0.0;
    while (nrm < 1e-6) {
        const BlochVector t = random_unit_vector(rng);
        const double d = t.dot(x);
        y = BlochVector{{t.c[0] - d * x.c[0], t.c[1] - d * x.c[1], t.c[2] - d * x.c[2]}};
        nrm = y.norm();
    }
    for (auto& c : y.c) c /= nrm;
    const BlochVector z{{x.c[1] * y.c[2] - x.c[2] * y.c[1],
                         x.c[2] * y.c[0] - x.c[0] * y.c[2],
                         x.c[0] * y.c[1] - x.c[1] * y.c[0]}};
    return {x, y, z};
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace qgamble
