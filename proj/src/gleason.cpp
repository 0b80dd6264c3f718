#include "qgamble/gleason.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "alternating.hpp"
#include "qgamble/duality.hpp"
#include "qgamble/kernels.hpp"
#include "qgamble/random.hpp"

namespace qgamble {

namespace {

constexpr double kZero = 1e-12;
constexpr double kNegativeEig = 1e-10;
constexpr double kFitResidual = 1e-6;
constexpr int kValidationTrials = 200;

IncoherenceWitness make_witness(const ProbabilityMeasure& p, std::vector<HermitianMatrix> gambles) {
    const Index n = p.dim();
    HermitianMatrix sum = HermitianMatrix::zero(n);
    std::vector<double> ex;
    ex.reserve(gambles.size());
    for (const auto& g : gambles) {
        sum += g;
        ex.push_back(expectation(p, g).value);
    }
    // A table may not be defined on the eigenprojectors of the sum.
    double sum_ex = std::numeric_limits<double>::quiet_NaN();
    try {
        sum_ex = expectation(p, sum).value;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotDefined) throw;
    }
    const PsdClass cls = psd_classify(sum);
    const double top = eigenvalues(sum).maxCoeff();
    const WitnessKind kind = cls == PsdClass::NegativeNonzero ? WitnessKind::SureLoss : WitnessKind::NonAdditive;
    return IncoherenceWitness{std::move(gambles), std::move(ex), std::move(sum), sum_ex, cls, top, kind};
}

BlochVector combine(double a, const BlochVector& u, double b, const BlochVector& v) {
    BlochVector r{};
    for (std::size_t k = 0; k < 3; ++k) r.c[k] = a * u.c[k] + b * v.c[k];
    return r;
}

BlochVector normalized(BlochVector v) {
    const double n = v.norm();
    for (auto& c : v.c) c /= n;
    return v;
}

HermitianMatrix two_level(const BlochVector& dir, double l1, double l2) {
    return projector_from_bloch(dir) * l1 + projector_from_bloch(-dir) * l2;
}

std::string describe(const char* what, double value) {
    std::ostringstream os;
    os << what << " (" << value << ")";
    return os.str();
}

void require_projector_arg(const ProbabilityMeasure& p, const DensityMatrix& rho, const HermitianMatrix& pi) {
    if (pi.dim() != p.dim() || rho.dim() != p.dim())
        throw Error(ErrorCode::DimensionMismatch, "projector, density and measure dimensions differ");
    if (!is_projector(pi)) throw Error(ErrorCode::NotProjector, "refutation needs a projector");
}

// Frames on which a table can be evaluated everywhere and that determine a Hermitian matrix.
std::optional<std::vector<Frame>> fit_frames(const ProbabilityMeasure& p,
                                             const ProbabilityMeasure::Table& t, std::uint64_t seed) {
    auto evaluable = [&](const std::vector<Frame>& frames) {
        try {
            for (const auto& f : frames)
                for (const auto& pi : f.projectors()) (void)p(pi);
            return true;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotDefined) throw;
            return false;
        }
    };
    auto frames = tomography_frames(p.dim(), seed);
    if (evaluable(frames)) return frames;
    if (p.dim() != 2) return std::nullopt;

    // Qubit tables without a fallback: each listed rank-1 projector gives the frame {Π, I − Π}.
    std::vector<Frame> listed;
    std::vector<BlochVector> dirs;
    for (const auto& e : t.entries) {
        if (std::abs(e.projector.trace() - 1.0) > tol::kDerived) continue;
        const BlochVector d = bloch_from_projector(e.projector);
        dirs.push_back(d);
        listed.push_back(Frame::from_bloch(d));
        if (listed.size() == 3) {
            const auto& x = dirs[0];
            const auto& y = dirs[1];
            const auto& z = dirs[2];
            const double det = x.x() * (y.y() * z.z() - y.z() * z.y()) -
                               x.y() * (y.x() * z.z() - y.z() * z.x()) +
                               x.z() * (y.x() * z.y() - y.y() * z.x());
            if (std::abs(det) > 1e-6) return listed;
            listed.pop_back();
            dirs.pop_back();
        }
    }
    return std::nullopt;
}

} // namespace

const char* to_string(WitnessKind k) noexcept {
    return k == WitnessKind::SureLoss ? "sure_loss" : "non_additive";
}

bool verify_witness(const ProbabilityMeasure& p, const IncoherenceWitness& w) try {
    if (w.gambles.empty()) return false;
    HermitianMatrix sum = HermitianMatrix::zero(p.dim());
    for (const auto& g : w.gambles) {
        if (g.dim() != p.dim() || !induced_gamble_set_contains(p, g)) return false;
        sum += g;
    }
    if (max_entry_distance(sum, w.sum) > tol::kDerived * std::max(1.0, sum.max_abs())) return false;
    return psd_classify(sum) == PsdClass::NegativeNonzero || !induced_gamble_set_contains(p, sum);
} catch (const Error& e) {
    if (e.code() != ErrorCode::NotDefined) throw;
    return false;
}

IncoherenceWitness dispersion_free_witness(const Frame3& axes, double a, double lambda1,
                                           std::optional<double> lambda2) {
    if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::BadParameter, describe("a must lie in (0, 1)", a));
    if (!(lambda1 > 0.0)) throw Error(ErrorCode::BadParameter, describe("λ1 must be positive", lambda1));
    const double bound = -lambda1 * (1.0 + a) / (1.0 - a);
    const double l2 = lambda2.value_or(1.2 * bound);
    if (!(l2 < bound - kZero)) {
        std::ostringstream os;
        os << "λ2 = " << l2 << " must be below " << bound;
        throw Error(ErrorCode::BadParameter, os.str());
    }
    const double s = std::sqrt(1.0 - a * a);
    const BlochVector u = combine(std::sqrt(2.0 / 3.0), axes.y, std::sqrt(1.0 / 3.0), axes.z);
    const BlochVector g = normalized(combine(a, axes.x, s, u));
    const BlochVector h = normalized(combine(a, axes.x, -s, u));
    const auto p = ProbabilityMeasure::dispersion_free(axes);
    return make_witness(p, {two_level(g, lambda1, l2), two_level(h, lambda1, l2)});
}

HermitianMatrix refutation_gamble_case1(const ProbabilityMeasure& p, const DensityMatrix& rho,
                                        const HermitianMatrix& projector, double epsilon) {
    require_projector_arg(p, rho, projector);
    if (!(epsilon > 0.0)) throw Error(ErrorCode::BadParameter, describe("ε must be positive", epsilon));
    const double value = p(projector);
    const double t = inner(projector, rho);
    if (std::abs(value) > kZero)
        throw Error(ErrorCode::PreconditionViolated, describe("case 1 needs p(Π) = 0", value));
    if (!(t > kZero)) throw Error(ErrorCode::PreconditionViolated, describe("case 1 needs Tr(Π ρ) > 0", t));
    const HermitianMatrix rest = HermitianMatrix::identity(p.dim()) - projector;
    const double t_rest = inner(rest, rho);
    const double l1 = epsilon + 1.0 / t;
    const double l2 = t_rest <= kZero ? -1.0 : -1.0 / t_rest;
    return projector * l1 + rest * l2;
}

HermitianMatrix refutation_gamble_case2(const ProbabilityMeasure& p, const DensityMatrix& rho,
                                        const HermitianMatrix& projector) {
    require_projector_arg(p, rho, projector);
    const HermitianMatrix rest = HermitianMatrix::identity(p.dim()) - projector;
    const double value = p(projector);
    const double value_rest = p(rest);
    const double t = inner(projector, rho);
    if (!(value > kZero)) throw Error(ErrorCode::PreconditionViolated, describe("case 2 needs p(Π) > 0", value));
    if (!(t - value > kDisagreementTol)) {
        std::ostringstream os;
        os << "case 2 needs Tr(Π ρ) > p(Π), got " << t << " vs " << value;
        throw Error(ErrorCode::PreconditionViolated, os.str());
    }
    if (!(value_rest > kZero))
        throw Error(ErrorCode::PreconditionViolated, describe("case 2 needs p(I − Π) > 0", value_rest));
    // The exact gamble has E_p = 0; nudge it below so rounding can't land on the positive side.
    const double eta = 1e-10 / std::min(value, value_rest);
    return projector * (1.0 / value) - rest * ((1.0 + eta) / value_rest);
}

Refutation refute(const ProbabilityMeasure& p, const DensityMatrix& rho,
                  const HermitianMatrix& projector, double epsilon) {
    require_projector_arg(p, rho, projector);
    const double gap = inner(projector, rho) - p(projector);
    if (std::abs(gap) <= kDisagreementTol)
        throw Error(ErrorCode::PreconditionViolated, describe("p agrees with Tr(Π ρ)", gap));
    const bool mirrored = gap < 0.0;
    const HermitianMatrix pi = mirrored ? HermitianMatrix::identity(p.dim()) - projector : projector;
    const bool first = std::abs(p(pi)) <= kZero;
    HermitianMatrix g = first ? refutation_gamble_case1(p, rho, pi, epsilon) : refutation_gamble_case2(p, rho, pi);
    const double ex = expectation(p, g).value;
    const double tr = inner(g, rho);
    return Refutation{std::move(g), pi, first ? 1 : 2, mirrored, ex, tr};
}

std::optional<IncoherenceWitness> split_over_frames(const ProbabilityMeasure& p,
                                                    const HermitianMatrix& target,
                                                    std::span<const Frame> frames) {
    const Index n = p.dim();
    if (frames.empty() || target.dim() != n) return std::nullopt;
    Index cols = 0;
    for (const auto& f : frames) {
        if (f.dim() != n) return std::nullopt;
        cols += static_cast<Index>(f.size());
    }
    Eigen::MatrixXd a(n * n, cols);
    Eigen::VectorXd values(cols);
    Index c = 0;
    try {
        for (const auto& f : frames)
            for (const auto& pi : f.projectors()) {
                a.col(c) = detail::to_real_coords(pi.matrix());
                values(c++) = p(pi);
            }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotDefined) throw;
        return std::nullopt;
    }
    const Eigen::VectorXd s = detail::to_real_coords(target.matrix());
    const Eigen::VectorXd w = a.completeOrthogonalDecomposition().solve(s);
    if ((a * w - s).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, target.max_abs())) return std::nullopt;

    std::vector<double> e(frames.size(), 0.0);
    c = 0;
    for (std::size_t k = 0; k < frames.size(); ++k)
        for (std::size_t i = 0; i < frames[k].size(); ++i, ++c) e[k] += w(c) * values(c);
    double total = 0.0;
    for (double x : e) total += x;
    if (!(total > kZero)) return std::nullopt;

    // Shifting frame k by c_k·I moves its expectation to total/m; the shifts cancel in the sum.
    const double share = total / static_cast<double>(frames.size());
    std::vector<HermitianMatrix> pieces;
    c = 0;
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const double shift = share - e[k];
        CMatrix m = CMatrix::Zero(n, n);
        for (const auto& pi : frames[k].projectors()) m += (w(c++) + shift) * pi.matrix();
        pieces.push_back(trusted_hermitian(std::move(m)));
    }
    auto witness = make_witness(p, std::move(pieces));
    if (!verify_witness(p, witness)) return std::nullopt;
    return witness;
}

// --------------------------- Verdicts ---------------------------------------

namespace {

std::vector<HermitianMatrix> sample_projectors(Index n, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<HermitianMatrix> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k) out.push_back(random_rank1_projector(n, rng));
    return out;
}

CoherenceVerdict table_verdict(const ProbabilityMeasure& p, const ProbabilityMeasure::Table& t,
                               const CoherenceConfig& cfg) {
    const Index n = p.dim();
    const auto frames = fit_frames(p, t, splitmix64(cfg.seed));
    if (!frames) return CoherenceUndecided{"the table is not defined on an informationally complete frame set"};

    const LinearFit fit = linear_inversion(p, *frames);
    if (fit.residual > kFitResidual)
        return CoherenceUndecided{describe("table values admit no Hermitian fit, residual", fit.residual)};

    Eigen::SelfAdjointEigenSolver<CMatrix> es(fit.estimate.matrix());
    const double lmin = es.eigenvalues()(0);
    if (lmin < -kNegativeEig) {
        // The fitted functional is negative on Π_v, so −Π_v − |λmin|/2·I has positive value.
        const CVector v = es.eigenvectors().col(0);
        const HermitianMatrix pv = trusted_hermitian(v * v.adjoint());
        const HermitianMatrix target = -pv - HermitianMatrix::identity(n) * (std::abs(lmin) / 2.0);
        if (auto w = split_over_frames(p, target, *frames)) return Incoherent{std::move(*w), std::nullopt, std::nullopt};
        return CoherenceUndecided{describe("fitted matrix is not PSD but no witness verified, λmin", lmin)};
    }
    const DensityMatrix rho = DensityMatrix::nearest(fit.estimate);

    std::vector<HermitianMatrix> listed;
    const HermitianMatrix id = HermitianMatrix::identity(n);
    for (const auto& e : t.entries) {
        listed.push_back(e.projector);
        listed.push_back(id - e.projector);
    }
    double worst = 0.0;
    std::size_t checked = 0;
    auto on_disagreement = [&](const HermitianMatrix& pi) -> CoherenceVerdict {
        Refutation r = refute(p, rho, pi, cfg.epsilon);
        if (auto w = split_over_frames(p, r.gamble, *frames))
            return Incoherent{std::move(*w), std::move(r), rho};
        return CoherenceUndecided{"found a disagreement but the additivity witness did not verify"};
    };

    for (const auto& pi : listed) {
        if (pi.is_zero()) continue;
        double d;
        try {
            d = p(pi) - inner(pi, rho);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotDefined) throw;
            continue;
        }
        ++checked;
        worst = std::max(worst, std::abs(d));
        if (std::abs(d) > cfg.tol) return on_disagreement(pi);
    }

    const auto sampled = sample_projectors(n, cfg.samples, splitmix64(cfg.seed + 1));
    const auto diffs = kernels::born_disagreements(p, rho, sampled);
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        if (std::isnan(diffs[k])) continue;
        ++checked;
        worst = std::max(worst, std::abs(diffs[k]));
        if (std::abs(diffs[k]) > cfg.tol) return on_disagreement(sampled[k]);
    }
    return Coherent{rho, worst, checked};
}

} // namespace

CoherenceVerdict check_measure_coherence(const ProbabilityMeasure& p, const CoherenceConfig& cfg) {
    if (cfg.samples < 0) throw Error(ErrorCode::BadParameter, "samples must be >= 0");
    if (!(cfg.tol > 0.0)) throw Error(ErrorCode::BadParameter, "tolerance must be positive");

    if (const auto* b = std::get_if<ProbabilityMeasure::Born>(&p.kind())) {
        const auto sampled = sample_projectors(p.dim(), cfg.samples, splitmix64(cfg.seed + 1));
        const auto diffs = kernels::born_disagreements(p, b->rho, sampled);
        double worst = 0.0;
        for (double d : diffs) worst = std::max(worst, std::abs(d));
        return Coherent{b->rho, worst, diffs.size()};
    }
    if (const auto* d = std::get_if<ProbabilityMeasure::DispersionFree>(&p.kind())) {
        return Incoherent{dispersion_free_witness(d->axes, kExampleA, kExampleLambda1, kExampleLambda2),
                          std::nullopt, std::nullopt};
    }

    const int trials = std::clamp(cfg.samples, 1, kValidationTrials);
    const auto v = validate_measure(p, trials, splitmix64(cfg.seed + 2));
    if (!v.valid) throw Error(ErrorCode::InvalidMeasure, v.detail);
    return table_verdict(p, std::get<ProbabilityMeasure::Table>(p.kind()), cfg);
}

} // namespace qgamble
