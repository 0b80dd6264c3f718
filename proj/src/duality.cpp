#include "qgamble/duality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "alternating.hpp"
#include "qgamble/random.hpp"

namespace qgamble {

namespace {

constexpr long kInitialStallWindow = 500;
constexpr long kCertificateBudget = 2000;
constexpr double kRankTol = 1e-9;
constexpr double kBlochSlack = 1e-9;

FeasibilityResult solve(const GambleCone& cone, double margin, double tol, long max_iter) {
    if (!(tol > 0.0)) throw Error(ErrorCode::BadParameter, "tolerance must be positive");
    if (max_iter < 1) throw Error(ErrorCode::BadParameter, "iteration cap must be >= 1");
    const Index n = cone.dim();

    // PSD generators hold at every density matrix.
    std::vector<HermitianMatrix> active;
    for (const auto& g : cone.generators())
        if (psd_classify(g) != PsdClass::PositiveNonzero) active.push_back(g);

    auto feasible = [&](const CMatrix& x, long iters) {
        const DensityMatrix rho = DensityMatrix::from_hermitian(trusted_hermitian(x));
        double worst = 0.0;
        for (const auto& g : cone.generators()) worst = std::max(worst, -inner(g, rho));
        return Feasible{rho, worst, iters};
    };

    CMatrix x = CMatrix::Identity(n, n) / static_cast<double>(n);
    if (active.empty()) return feasible(x, 0);

    long used = 0;
    long window = kInitialStallWindow;
    double violation = 0.0;
    while (used < max_iter) {
        const auto st = detail::pocs_density(active, margin, tol, max_iter - used, x, window);
        used += std::max(1L, st.iterations);
        x = st.x;
        violation = st.max_violation;
        if (st.converged) return feasible(x, used);
        if (!st.stalled) break;
        if (auto cert = search_dutch_book(cone, kSureLossMargin, kCertificateBudget))
            return Infeasible{*cert};
        window *= 2;
    }
    if (auto cert = search_dutch_book(cone, kSureLossMargin, kCertificateBudget))
        return Infeasible{*cert};
    return FeasibilityUndecided{violation, used};
}

Eigen::MatrixXd design_matrix(std::span<const Frame> frames, Index n) {
    std::size_t rows = 0;
    for (const auto& f : frames) {
        if (f.dim() != n) throw Error(ErrorCode::DimensionMismatch, "frame dimension vs measure");
        rows += f.size();
    }
    Eigen::MatrixXd a(static_cast<Index>(rows), n * n);
    Index r = 0;
    for (const auto& f : frames)
        for (const auto& pi : f.projectors()) a.row(r++) = detail::to_real_coords(pi.matrix()).transpose();
    return a;
}

Index numeric_rank(const Eigen::MatrixXd& a) {
    if (a.rows() == 0) return 0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(kRankTol);
    return qr.rank();
}

} // namespace

FeasibilityResult find_representing_density(const GambleCone& cone, double tol, long max_iter) {
    return solve(cone, 0.0, tol, max_iter);
}

FeasibilityResult find_interior_density(const GambleCone& cone, double margin, double tol,
                                        long max_iter) {
    if (!(margin >= 0.0)) throw Error(ErrorCode::BadParameter, "margin must be >= 0");
    return solve(cone, margin, tol, max_iter);
}

std::optional<DutchBookCertificate> search_dutch_book(const GambleCone& cone, double margin,
                                                      long max_iter) {
    if (cone.size() == 0) return std::nullopt;
    const Index n = cone.dim();
    const CMatrix target = -CMatrix::Identity(n, n);
    const auto search = detail::cone_point_below(
        cone.generators(), target, max_iter, [&](const Eigen::VectorXd& w, const CMatrix& x) {
            const double wmax = w.maxCoeff();
            return wmax > 0.0 && detail::max_eigenvalue(x) / wmax <= -margin;
        });
    if (!search.found) return std::nullopt;

    const double wmax = search.weights.maxCoeff();
    DutchBookCertificate cert{{}, HermitianMatrix::zero(n), 0.0};
    for (Index j = 0; j < search.weights.size(); ++j) {
        const double w = search.weights(j) / wmax;
        cert.weights.push_back(w);
        if (w > 0.0) cert.combined += cone.generators()[static_cast<std::size_t>(j)] * w;
    }
    cert.max_eigenvalue = eigenvalues(cert.combined).maxCoeff();
    if (cert.max_eigenvalue > -margin) return std::nullopt;
    return cert;
}

bool induced_sdg_contains(const DensityMatrix& rho, const HermitianMatrix& g) {
    if (g.dim() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "gamble vs density");
    if (psd_classify(g) == PsdClass::PositiveNonzero) return true;
    return inner(g, rho) > 1e-12;
}

// --------------------------- Reconstruction --------------------------------

Reconstruction2D reconstruct_density_2d(const ProbabilityMeasure& p) {
    if (p.dim() != 2) throw Error(ErrorCode::WrongDimension, "Bloch reconstruction needs n = 2");
    BlochVector r{};
    for (int k = 0; k < 3; ++k) {
        BlochVector e{};
        e.c[static_cast<std::size_t>(k)] = 1.0;
        r.c[static_cast<std::size_t>(k)] = 2.0 * p(projector_from_bloch(e)) - 1.0;
    }
    const double norm = r.norm();
    if (norm > 1.0 + kBlochSlack) return NonRepresentable{norm, r};
    if (norm > 1.0)
        for (auto& c : r.c) c /= norm;
    return DensityMatrix::from_bloch(r);
}

bool informationally_complete(std::span<const Frame> frames) {
    if (frames.empty()) return false;
    const Index n = frames.front().dim();
    return numeric_rank(design_matrix(frames, n)) == n * n;
}

LinearFit linear_inversion(const ProbabilityMeasure& p, std::span<const Frame> frames) {
    const Index n = p.dim();
    const Eigen::MatrixXd a = design_matrix(frames, n);
    if (numeric_rank(a) < n * n) {
        std::ostringstream os;
        os << "frame projectors span " << numeric_rank(a) << " of " << n * n << " dimensions";
        throw Error(ErrorCode::NotInformationallyComplete, os.str());
    }

    Eigen::VectorXd b(a.rows());
    Index r = 0;
    for (const auto& f : frames)
        for (const auto& pi : f.projectors()) b(r++) = p(pi);

    Eigen::MatrixXd aug(a.rows() + 1, a.cols());
    aug << a, detail::to_real_coords(CMatrix::Identity(n, n)).transpose();
    Eigen::VectorXd rhs(b.size() + 1);
    rhs << b, 1.0;

    const Eigen::VectorXd x = aug.completeOrthogonalDecomposition().solve(rhs);
    CMatrix m = detail::from_real_coords(x, n);
    m += CMatrix::Identity(n, n) * ((1.0 - m.trace().real()) / static_cast<double>(n));
    HermitianMatrix est = trusted_hermitian(m);

    const Eigen::VectorXd fitted = a * detail::to_real_coords(est.matrix());
    return LinearFit{std::move(est), (fitted - b).cwiseAbs().maxCoeff()};
}

ReconstructionND reconstruct_density_nd(const ProbabilityMeasure& p, std::span<const Frame> frames) {
    const LinearFit fit = linear_inversion(p, frames);
    if (fit.residual > kReconstructionResidual) {
        std::ostringstream os;
        os << "measure values are inconsistent with any Hermitian matrix (residual " << fit.residual << ")";
        throw Error(ErrorCode::ResidualTooLarge, os.str());
    }
    DensityMatrix rho = DensityMatrix::nearest(fit.estimate);
    double residual = 0.0;
    for (const auto& f : frames)
        for (const auto& pi : f.projectors())
            residual = std::max(residual, std::abs(inner(pi, rho) - p(pi)));
    return ReconstructionND{std::move(rho), residual};
}

std::vector<Frame> tomography_frames(Index n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorCode::BadShape, "dimension must be >= 1");
    Rng rng(seed);
    for (int attempt = 0; attempt < 16; ++attempt) {
        std::vector<Frame> frames;
        for (Index k = 0; k <= n; ++k) frames.push_back(random_frame(n, rng));
        if (informationally_complete(frames)) return frames;
    }
    throw Error(ErrorCode::NumericalFailure, "could not draw an informationally complete frame set");
}

} // namespace qgamble
