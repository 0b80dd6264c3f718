// random.hpp: seeded samplers for Hermitian matrices, states, projectors and frames.
//
// All samplers draw from a caller-owned std::mt19937_64, so a fixed seed reproduces a run.

#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "qgamble/density.hpp"
#include "qgamble/hermitian.hpp"

namespace qgamble {

using Rng = std::mt19937_64;

/// Entries with independent standard-normal real and imaginary parts, then symmetrized.
HermitianMatrix random_hermitian(Index n, Rng& rng);

/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase correction).
CMatrix random_unitary(Index n, Rng& rng);

/// Haar-uniform rank-1 projector; uniform on the Bloch sphere for n = 2.
HermitianMatrix random_rank1_projector(Index n, Rng& rng);

Frame random_frame(Index n, Rng& rng);

/// Hilbert–Schmidt random density matrix (A A† / Tr for Ginibre A).
DensityMatrix random_density(Index n, Rng& rng);

BlochVector random_unit_vector(Rng& rng);

/// A uniformly random orthonormal triple (x, y, z) in R³.
std::array<BlochVector, 3> random_orthonormal_triple(Rng& rng);

/// SplitMix64 finalizer; used to derive independent per-round seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(Rng& rng);

} // namespace qgamble
