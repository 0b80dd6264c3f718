// items.hpp: single-item bodies shared by the serial and OpenMP kernels.

#pragma once

#include <cmath>
#include <limits>

#include "qgamble/error.hpp"
#include "qgamble/kernels.hpp"

namespace qgamble::kernels::item {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline double eval_or_nan(const ProbabilityMeasure& p, const HermitianMatrix& proj) {
    try {
        return p(proj);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotDefined) return kNaN;
        throw;
    }
}

inline AdditivityDefect additivity_defect(const ProbabilityMeasure& p, const Frame& f) {
    AdditivityDefect d{kNaN, kNaN};
    double sum = 0.0;
    std::vector<double> vals(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        vals[i] = eval_or_nan(p, f[i]);
        sum += vals[i];
    }
    d.frame_sum = std::abs(sum - 1.0);
    if (f.size() >= 3) {
        const double merged = eval_or_nan(p, f[0] + f[1]);
        d.merged_pair = std::abs(merged - vals[0] - vals[1]);
    }
    return d;
}

inline double disagreement(const ProbabilityMeasure& p, const DensityMatrix& rho,
                           const HermitianMatrix& proj) {
    return eval_or_nan(p, proj) - inner(proj, rho.matrix());
}

inline void payoff_row(const HermitianMatrix& g, const Frame& f, Eigen::MatrixXd& out, Index row) {
    for (std::size_t i = 0; i < f.size(); ++i) out(row, static_cast<Index>(i)) = inner(g, f[i]);
}

} // namespace qgamble::kernels::item
