#pragma once

#include <cmath>
#include <complex>
#include <string>

#include <doctest.h>

#include "qgamble/density.hpp"
#include "qgamble/hermitian.hpp"
#include "qgamble/measures.hpp"
#include "qgamble/random.hpp"

namespace testing {

using namespace qgamble;

inline const double kSqrt2 = std::sqrt(2.0);

// Worked example matrices, typed in from their closed forms.
inline HermitianMatrix example_g() {
    return make_hermitian({{Complex(-0.25, 0), Complex(1.25, -1.25 * kSqrt2)},
                           {Complex(1.25, 1.25 * kSqrt2), Complex(-2.75, 0)}});
}
inline HermitianMatrix example_h() {
    return make_hermitian({{Complex(-2.75, 0), Complex(1.25, 1.25 * kSqrt2)},
                           {Complex(1.25, -1.25 * kSqrt2), Complex(-0.25, 0)}});
}
inline HermitianMatrix example_f() { return make_hermitian({{-3.0, 2.5}, {2.5, -3.0}}); }
inline BlochVector example_g_dir() { return {{0.5, 1.0 / kSqrt2, 0.5}}; }

inline HermitianMatrix sigma(int axis) { return trusted_hermitian(pauli(axis)); }

inline HermitianMatrix diag2(double a, double b) { return HermitianMatrix::diagonal({a, b}); }

inline DensityMatrix pure_z() { return DensityMatrix::from_hermitian(diag2(1.0, 0.0)); }

// Closed-form eigenvalues of a 2×2 Hermitian matrix, ascending.
inline std::pair<double, double> eig2(const HermitianMatrix& m) {
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
    return {0.5 * (a + d) - r, 0.5 * (a + d) + r};
}

// Expectation under a dispersion-free measure computed without the library's spectral code:
// for 2×2 non-scalar G = c I + s n·σ, the eigenvector of c + s is Π_n.
inline double dispersion_free_expectation_oracle(const Frame3& axes, const HermitianMatrix& g) {
    const double c = 0.5 * (g(0, 0) + g(1, 1)).real();
    const BlochVector v{{g(1, 0).real(), g(1, 0).imag(), 0.5 * (g(0, 0) - g(1, 1)).real()}};
    const double s = v.norm();
    if (s == 0.0) return c;
    const BlochVector n{{v.x() / s, v.y() / s, v.z() / s}};
    auto rule = [&](const BlochVector& u) {
        const double ux = u.dot(axes.x), uy = u.dot(axes.y), uz = u.dot(axes.z);
        if (std::abs(ux) > 1e-12) return ux > 0;
        if (std::abs(uy) > 1e-12) return uy > 0;
        return uz > 1e-12;
    };
    return rule(n) ? c + s : c - s;
}

inline Frame3 random_frame3(Rng& rng) {
    const auto t = random_orthonormal_triple(rng);
    return Frame3::make(t[0], t[1], t[2]);
}

inline double max_dev(const HermitianMatrix& a, const HermitianMatrix& b) { return max_entry_distance(a, b); }

} // namespace testing
