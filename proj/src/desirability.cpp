#include "qgamble/desirability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "alternating.hpp"
#include "qgamble/duality.hpp"
#include "qgamble/random.hpp"

namespace qgamble {

namespace {

constexpr double kDuplicateTol = 1e-10;
constexpr double kMembershipTol = 1e-9;
constexpr long kMembershipIterations = 5000;

bool same_ray(const HermitianMatrix& a, const HermitianMatrix& b) {
    return max_entry_distance(a / a.max_abs(), b / b.max_abs()) <= kDuplicateTol;
}

} // namespace

PayoffVector payoff(const HermitianMatrix& g, const Frame& frame) {
    if (g.dim() != frame.dim()) throw Error(ErrorCode::DimensionMismatch, "gamble vs frame");
    PayoffVector out{g, frame, {}};
    out.gammas.reserve(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        const CMatrix& pi = frame[i].matrix();
        const double gamma = inner(g, frame[i]);
        const double residual = (pi * g.matrix() * pi - gamma * pi).cwiseAbs().maxCoeff();
        if (residual > tol::kDerived) {
            std::ostringstream os;
            os << "Π G Π is not a multiple of Π for projector " << i << " (residual " << residual << ")";
            throw Error(ErrorCode::NumericalFailure, os.str());
        }
        out.gammas.push_back(gamma);
    }
    return out;
}

// --------------------------- GambleCone ------------------------------------

GambleCone::GambleCone(Index n, std::vector<HermitianMatrix> generators) : dim_(n) {
    if (n < 1) throw Error(ErrorCode::BadShape, "dimension must be >= 1");
    generators_.reserve(generators.size());
    for (std::size_t k = 0; k < generators.size(); ++k) {
        auto& g = generators[k];
        if (g.dim() != n) {
            std::ostringstream os;
            os << "generator " << k << " has dimension " << g.dim() << ", cone has " << n;
            throw Error(ErrorCode::DimensionMismatch, os.str());
        }
        if (g.is_zero()) {
            std::ostringstream os;
            os << "generator " << k << " is the zero matrix";
            throw Error(ErrorCode::BadParameter, os.str());
        }
        const bool dup = std::any_of(generators_.begin(), generators_.end(),
                                     [&](const HermitianMatrix& h) { return same_ray(g, h); });
        if (!dup) generators_.push_back(std::move(g));
    }
}

HermitianMatrix cone_combine(const GambleCone& cone, std::span<const double> weights,
                             const std::optional<HermitianMatrix>& psd_part) {
    if (weights.size() != cone.size()) {
        std::ostringstream os;
        os << weights.size() << " weights for " << cone.size() << " generators";
        throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    bool any = false;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        if (!(weights[j] >= 0.0)) {
            std::ostringstream os;
            os << "weight " << j << " is " << weights[j];
            throw Error(ErrorCode::NegativeWeight, os.str());
        }
        any = any || weights[j] > 0.0;
    }
    HermitianMatrix out = HermitianMatrix::zero(cone.dim());
    for (std::size_t j = 0; j < weights.size(); ++j)
        if (weights[j] > 0.0) out += cone.generators()[j] * weights[j];
    if (psd_part) {
        if (psd_part->dim() != cone.dim())
            throw Error(ErrorCode::DimensionMismatch, "psd part has the wrong dimension");
        if (psd_classify(*psd_part) != PsdClass::PositiveNonzero)
            throw Error(ErrorCode::BadParameter, "psd part is not PositiveNonzero");
        out += *psd_part;
        any = true;
    }
    if (!any) throw Error(ErrorCode::BadParameter, "all weights are zero and no psd part given");
    return out;
}

bool cone_contains(const GambleCone& cone, const HermitianMatrix& g) {
    if (g.dim() != cone.dim()) throw Error(ErrorCode::DimensionMismatch, "gamble vs cone");
    const PsdClass c = psd_classify(g);
    if (c == PsdClass::PositiveNonzero) return true;
    if (c == PsdClass::Zero || cone.size() == 0) return false;
    // g is not PSD, so any cone point below it uses a nonzero weight vector.
    const auto search = detail::cone_point_below(
        cone.generators(), g.matrix(), kMembershipIterations,
        [&](const Eigen::VectorXd&, const CMatrix& x) {
            return detail::max_eigenvalue(x - g.matrix()) <= kMembershipTol;
        });
    return search.found;
}

bool verify_certificate(const DutchBookCertificate& cert, const GambleCone& cone, double margin) {
    if (cert.weights.size() != cone.size()) return false;
    if (std::any_of(cert.weights.begin(), cert.weights.end(), [](double w) { return !(w >= 0.0); }))
        return false;
    HermitianMatrix sum = HermitianMatrix::zero(cone.dim());
    for (std::size_t j = 0; j < cone.size(); ++j) sum += cone.generators()[j] * cert.weights[j];
    if (max_entry_distance(sum, cert.combined) > tol::kDerived * std::max(1.0, sum.max_abs()))
        return false;
    return eigenvalues(sum).maxCoeff() <= -margin;
}

// --------------------------- Axiom checks -----------------------------------

PartialLossCheck check_avoiding_partial_loss(const GambleCone& cone, double eps) {
    const auto r = find_representing_density(cone);
    if (const auto* f = std::get_if<Feasible>(&r)) return AvoidsPartialLoss{f->rho};
    if (const auto* inf = std::get_if<Infeasible>(&r))
        if (inf->certificate.max_eigenvalue <= -eps) return inf->certificate;
    if (auto cert = search_dutch_book(cone, eps)) return *cert;
    if (const auto* u = std::get_if<FeasibilityUndecided>(&r))
        return PartialLossUndecided{u->max_violation, u->iterations};
    return PartialLossUndecided{0.0, 0};
}

AxiomReport check_sdg_axioms(const GambleCone& cone, int samples, std::uint64_t seed,
                             const std::optional<DensityMatrix>& dual) {
    if (samples < 0) throw Error(ErrorCode::BadParameter, "samples must be >= 0");
    AxiomReport rep;
    const Index n = cone.dim();

    if (dual) {
        if (dual->dim() != n) throw Error(ErrorCode::DimensionMismatch, "dual density vs cone");
        rep.dual = *dual;
    } else {
        // Prefer a density strictly inside every half-space so (S3) can be witnessed.
        auto r = find_interior_density(cone, 2.0 * kOpennessEpsilon);
        if (!std::holds_alternative<Feasible>(r)) r = find_representing_density(cone);
        if (const auto* f = std::get_if<Feasible>(&r)) {
            rep.dual = f->rho;
        } else if (std::holds_alternative<Infeasible>(r)) {
            rep.note = "generators admit a sure loss; no dual density exists";
        } else {
            rep.inconclusive = true;
            rep.note = "dual density search did not converge";
        }
    }

    const HermitianMatrix eps_id = HermitianMatrix::identity(n) * kOpennessEpsilon;
    rep.s3_holds = true;
    for (std::size_t j = 0; j < cone.size(); ++j) {
        const auto& g = cone.generators()[j];
        GeneratorOpenness o{j, psd_classify(g) == PsdClass::PositiveNonzero, std::nan(""), false};
        if (rep.dual) o.shifted_value = inner(g - eps_id, *rep.dual);
        o.holds = o.positive || (rep.dual && o.shifted_value > 1e-12);
        rep.s3_holds = rep.s3_holds && o.holds;
        rep.s3.push_back(o);
    }

    if (rep.dual && cone.size() > 0) {
        Rng rng(seed);
        std::exponential_distribution<double> weight(1.0);
        for (int s = 0; s < samples; ++s) {
            std::vector<double> w(cone.size());
            bool any = false;
            for (auto& x : w) {
                x = uniform01(rng) < 0.5 ? weight(rng) : 0.0;
                any = any || x > 0.0;
            }
            if (!any) w[static_cast<std::size_t>(rng() % cone.size())] = 1.0;
            ++rep.s1_samples;
            if (!induced_sdg_contains(*rep.dual, cone_combine(cone, w))) ++rep.s1_failures;
        }
    }
    return rep;
}

} // namespace qgamble
