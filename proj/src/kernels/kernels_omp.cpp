#include <omp.h>

#include <exception>

#include "items.hpp"

namespace qgamble::kernels {

namespace {

// Runs body(k) for k in [0, count) across threads; the first exception (by index) is
// rethrown after the loop.
template <class Body>
void parallel_for(std::size_t count, Body body) {
    const auto n = static_cast<long>(count);
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) {
        try {
            body(static_cast<std::size_t>(k));
        } catch (...) {
            errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

std::vector<AdditivityDefect> additivity_defects(const ProbabilityMeasure& p,
                                                 std::span<const Frame> frames) {
    std::vector<AdditivityDefect> out(frames.size());
    parallel_for(frames.size(), [&](std::size_t k) { out[k] = item::additivity_defect(p, frames[k]); });
    return out;
}

std::vector<double> born_disagreements(const ProbabilityMeasure& p, const DensityMatrix& rho,
                                       std::span<const HermitianMatrix> projectors) {
    std::vector<double> out(projectors.size());
    parallel_for(projectors.size(),
                 [&](std::size_t k) { out[k] = item::disagreement(p, rho, projectors[k]); });
    return out;
}

Eigen::MatrixXd payoff_table(std::span<const HermitianMatrix> gambles, const Frame& frame) {
    Eigen::MatrixXd out(static_cast<Index>(gambles.size()), static_cast<Index>(frame.size()));
    parallel_for(gambles.size(), [&](std::size_t g) {
        item::payoff_row(gambles[g], frame, out, static_cast<Index>(g));
    });
    return out;
}

} // namespace qgamble::kernels
