#include "qgamble/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qgamble/kernels.hpp"
#include "qgamble/random.hpp"

namespace qgamble {

namespace {

constexpr double kSignTol = 1e-12;
constexpr double kLookupTol = 1e-10;

void require_dim(const HermitianMatrix& m, Index n) {
    if (m.dim() != n) {
        std::ostringstream os;
        os << "projector has dimension " << m.dim() << ", measure has " << n;
        throw Error(ErrorCode::DimensionMismatch, os.str());
    }
}

void require_projector(const HermitianMatrix& m) {
    if (!is_projector(m)) throw Error(ErrorCode::NotProjector, "argument is not idempotent");
}

double clamp_unit(double v) {
    if (v < 0.0 && v >= -tol::kDerived) return 0.0;
    if (v > 1.0 && v <= 1.0 + tol::kDerived) return 1.0;
    return v;
}

double table_eval(const ProbabilityMeasure::Table& t, const HermitianMatrix& proj) {
    for (const auto& e : t.entries)
        if (max_entry_distance(e.projector, proj) <= kLookupTol) return e.value;
    const HermitianMatrix complement = HermitianMatrix::identity(t.dim) - proj;
    for (const auto& e : t.entries)
        if (max_entry_distance(e.projector, complement) <= kLookupTol) return 1.0 - e.value;
    if (complement.max_abs() <= kLookupTol) return 1.0;
    if (proj.max_abs() <= kLookupTol) return 0.0;
    if (t.fallback) return born_eval(*t.fallback, proj);
    throw Error(ErrorCode::NotDefined, "projector is not listed in the table and no fallback is set");
}

} // namespace

// --------------------------- Frame3 ----------------------------------------

Frame3 Frame3::make(const BlochVector& x, const BlochVector& y, const BlochVector& z) {
    const std::array<const BlochVector*, 3> v{&x, &y, &z};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i; j < 3; ++j) {
            const double want = i == j ? 1.0 : 0.0;
            if (std::abs(v[i]->dot(*v[j]) - want) > kSignTol) {
                std::ostringstream os;
                os << "axes " << i << "," << j << " have dot product " << v[i]->dot(*v[j]);
                throw Error(ErrorCode::BadFrame3, os.str());
            }
        }
    }
    return Frame3{x, y, z};
}

Frame3 Frame3::standard() {
    return Frame3{{{1.0, 0.0, 0.0}}, {{0.0, 1.0, 0.0}}, {{0.0, 0.0, 1.0}}};
}

// --------------------------- ProbabilityMeasure ----------------------------

ProbabilityMeasure ProbabilityMeasure::born(DensityMatrix rho) {
    const Index n = rho.dim();
    return ProbabilityMeasure(n, Born{std::move(rho)});
}

ProbabilityMeasure ProbabilityMeasure::dispersion_free(Frame3 axes) {
    return ProbabilityMeasure(2, DispersionFree{axes});
}

ProbabilityMeasure ProbabilityMeasure::table(Index n, std::vector<TableEntry> entries,
                                             std::optional<DensityMatrix> fallback) {
    if (n < 1) throw Error(ErrorCode::BadShape, "dimension must be >= 1");
    for (const auto& e : entries) {
        require_dim(e.projector, n);
        require_projector(e.projector);
        if (!(e.value >= 0.0 && e.value <= 1.0)) {
            std::ostringstream os;
            os << "table value " << e.value << " outside [0, 1]";
            throw Error(ErrorCode::BadValue, os.str());
        }
    }
    if (fallback && fallback->dim() != n)
        throw Error(ErrorCode::DimensionMismatch, "fallback state has the wrong dimension");
    return ProbabilityMeasure(n, Table{n, std::move(entries), std::move(fallback)});
}

const char* ProbabilityMeasure::kind_name() const noexcept {
    if (std::holds_alternative<Born>(kind_)) return "born";
    if (std::holds_alternative<DispersionFree>(kind_)) return "dispersion_free";
    return "table";
}

double ProbabilityMeasure::operator()(const HermitianMatrix& projector) const {
    require_dim(projector, dim_);
    if (const auto* b = std::get_if<Born>(&kind_)) return born_eval(b->rho, projector);
    if (const auto* d = std::get_if<DispersionFree>(&kind_))
        return dispersion_free_eval(d->axes, projector);
    require_projector(projector);
    return table_eval(std::get<Table>(kind_), projector);
}

double born_eval(const DensityMatrix& rho, const HermitianMatrix& projector) {
    require_dim(projector, rho.dim());
    require_projector(projector);
    // Tr ρ = 1 by definition; don't let rounding in the trace break p(I) = 1.
    if (projector.is_zero(kLookupTol)) return 0.0;
    if (max_entry_distance(projector, HermitianMatrix::identity(rho.dim())) <= kLookupTol) return 1.0;
    return clamp_unit(inner(projector, rho.matrix()));
}

int dispersion_free_eval(const Frame3& axes, const HermitianMatrix& projector) {
    if (projector.dim() != 2)
        throw Error(ErrorCode::WrongDimension, "dispersion-free measures are defined for n = 2");
    require_projector(projector);
    const double tr = projector.trace();
    if (std::abs(tr) <= tol::kDerived) return 0;
    if (std::abs(tr - 2.0) <= tol::kDerived) return 1;

    const BlochVector n = bloch_from_projector(projector);
    const double nx = n.dot(axes.x);
    if (nx > kSignTol) return 1;
    if (nx < -kSignTol) return 0;
    const double ny = n.dot(axes.y);
    if (ny > kSignTol) return 1;
    if (ny < -kSignTol) return 0;
    return n.dot(axes.z) > kSignTol ? 1 : 0;
}

// --------------------------- Expectation -----------------------------------

ExpectationReport expectation(const ProbabilityMeasure& p, const HermitianMatrix& g) {
    if (g.dim() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "gamble vs measure");
    ExpectationReport r{0.0, spectral_decompose(g)};
    for (std::size_t i = 0; i < r.decomposition.eigenvalues.size(); ++i)
        r.value += r.decomposition.eigenvalues[i] * p(r.decomposition.projectors[i]);
    return r;
}

bool induced_gamble_set_contains(const ProbabilityMeasure& p, const HermitianMatrix& g) {
    if (g.dim() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "gamble vs measure");
    if (psd_classify(g) == PsdClass::PositiveNonzero) return true;
    return expectation(p, g).value > 1e-12;
}

// --------------------------- Validation ------------------------------------

MeasureValidation validate_measure(const ProbabilityMeasure& p, int trials, std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorCode::BadParameter, "trials must be >= 1");
    const Index n = p.dim();
    MeasureValidation out;

    out.p1_violation = std::abs(p(HermitianMatrix::identity(n)) - 1.0);
    if (out.p1_violation > kP1Tolerance) {
        out.valid = false;
        std::ostringstream os;
        os << "(P1) p(I) deviates from 1 by " << out.p1_violation;
        out.detail = os.str();
    }

    auto record = [&](double defect, const std::string& what) {
        ++out.checks;
        if (defect > out.max_p2_violation) {
            out.max_p2_violation = defect;
            if (defect > kP2Tolerance) {
                out.valid = false;
                std::ostringstream os;
                os << "(P2) " << what << " additivity defect " << defect;
                if (out.p1_violation <= kP1Tolerance) out.detail = os.str();
            }
        }
    };

    if (const auto* t = std::get_if<ProbabilityMeasure::Table>(&p.kind())) {
        const HermitianMatrix id = HermitianMatrix::identity(n);
        for (std::size_t k = 0; k < t->entries.size(); ++k) {
            const auto& e = t->entries[k];
            const double sum = p(e.projector) + p(id - e.projector);
            std::ostringstream os;
            os << "entry " << k << " with its complement:";
            record(std::abs(sum - 1.0), os.str());
        }
    }

    Rng rng(seed);
    std::vector<Frame> frames;
    frames.reserve(static_cast<std::size_t>(trials));
    for (int k = 0; k < trials; ++k) frames.push_back(random_frame(n, rng));

    const auto defects = kernels::additivity_defects(p, frames);
    for (std::size_t k = 0; k < defects.size(); ++k) {
        if (std::isnan(defects[k].frame_sum)) {
            ++out.skipped;
            continue;
        }
        std::ostringstream os;
        os << "random frame " << k << ":";
        record(defects[k].frame_sum, os.str());
        if (!std::isnan(defects[k].merged_pair)) {
            os << " merged pair";
            record(defects[k].merged_pair, os.str());
        }
    }
    return out;
}

} // namespace qgamble
