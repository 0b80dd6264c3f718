// kernels.hpp: batch evaluation kernels.
//
// The functions in qgamble::kernels are OpenMP-parallel over the batch index. Each has a
// serial reference in qgamble::kernels::serial with identical results; tests compare the two
// and bench/ times them. Entries that cannot be evaluated (NotDefined) come back as NaN.

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qgamble/density.hpp"
#include "qgamble/hermitian.hpp"
#include "qgamble/measures.hpp"

namespace qgamble::kernels {

struct AdditivityDefect {
    double frame_sum;    // |Σ_i p(Π_i) − 1|
    double merged_pair;  // |p(Π_0 + Π_1) − p(Π_0) − p(Π_1)|, NaN for n < 3
};

std::vector<AdditivityDefect> additivity_defects(const ProbabilityMeasure& p,
                                                 std::span<const Frame> frames);

/// p(Π_k) − Tr(Π_k ρ) for each projector.
std::vector<double> born_disagreements(const ProbabilityMeasure& p, const DensityMatrix& rho,
                                       std::span<const HermitianMatrix> projectors);

/// Row g, column i: γ_i = Tr(G_g Π_i).
Eigen::MatrixXd payoff_table(std::span<const HermitianMatrix> gambles, const Frame& frame);

namespace serial {

std::vector<AdditivityDefect> additivity_defects(const ProbabilityMeasure& p,
                                                 std::span<const Frame> frames);
std::vector<double> born_disagreements(const ProbabilityMeasure& p, const DensityMatrix& rho,
                                       std::span<const HermitianMatrix> projectors);
Eigen::MatrixXd payoff_table(std::span<const HermitianMatrix> gambles, const Frame& frame);

} // namespace serial

} // namespace qgamble::kernels
