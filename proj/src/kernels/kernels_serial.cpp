#include "items.hpp"

namespace qgamble::kernels::serial {

std::vector<AdditivityDefect> additivity_defects(const ProbabilityMeasure& p,
                                                 std::span<const Frame> frames) {
    std::vector<AdditivityDefect> out(frames.size());
    for (std::size_t k = 0; k < frames.size(); ++k) out[k] = item::additivity_defect(p, frames[k]);
    return out;
}

std::vector<double> born_disagreements(const ProbabilityMeasure& p, const DensityMatrix& rho,
                                       std::span<const HermitianMatrix> projectors) {
    std::vector<double> out(projectors.size());
    for (std::size_t k = 0; k < projectors.size(); ++k)
        out[k] = item::disagreement(p, rho, projectors[k]);
    return out;
}

Eigen::MatrixXd payoff_table(std::span<const HermitianMatrix> gambles, const Frame& frame) {
    Eigen::MatrixXd out(static_cast<Index>(gambles.size()), static_cast<Index>(frame.size()));
    for (std::size_t g = 0; g < gambles.size(); ++g)
        item::payoff_row(gambles[g], frame, out, static_cast<Index>(g));
    return out;
}

} // namespace qgamble::kernels::serial
