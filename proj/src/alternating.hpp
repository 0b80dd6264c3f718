// alternating.hpp: projection primitives and the alternating-projection engine shared by
// the density feasibility search, the Dutch-book certificate search and cone membership.
// Internal to the library.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qgamble/hermitian.hpp"

namespace qgamble::detail {

/// Real coordinates of a Hermitian matrix in an orthonormal basis of the n²-dimensional
/// real space, so that Tr(A B) = dot(coords(A), coords(B)).
Eigen::VectorXd to_real_coords(const CMatrix& h);
CMatrix from_real_coords(const Eigen::VectorXd& v, Index n);

/// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

/// Frobenius projection onto {X ⪰ 0, Tr X = 1}.
CMatrix project_to_density(const CMatrix& x);

/// Frobenius projection onto {Y : Y ⪯ upper}.
CMatrix clip_above(const CMatrix& x, const CMatrix& upper);

double max_eigenvalue(const CMatrix& h);

/// Lawson–Hanson non-negative least squares: argmin_{x >= 0} |A x - b|.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

struct PocsState {
    CMatrix x;                  // current iterate, always a density matrix
    double max_violation = 0.0; // max_j max(0, margin - Tr(G_j x))
    long iterations = 0;
    bool converged = false;
    bool stalled = false;
};

/// Cyclic projections onto {Tr(G_j X) >= margin} (taken inside the trace-one hyperplane)
/// followed by projection onto the density matrices. Runs until the violation drops to
/// `tol`, the iteration budget is spent, or the violation stops improving over a window.
PocsState pocs_density(const std::vector<HermitianMatrix>& gens, double margin, double tol,
                       long max_iter, CMatrix start, long stall_window = 500);

struct ConeSearch {
    Eigen::VectorXd weights;
    CMatrix combined;   // Σ ν_j G_j
    long iterations = 0;
    bool found = false;
};

/// Alternating projections between the cone {Σ ν_j G_j : ν >= 0} and {Y ⪯ upper}, starting at
/// `upper`. `accept(weights, combined)` decides when the current cone point is good enough.
ConeSearch cone_point_below(
    const std::vector<HermitianMatrix>& gens, const CMatrix& upper, long max_iter,
    const std::function<bool(const Eigen::VectorXd&, const CMatrix&)>& accept);

} // namespace qgamble::detail
