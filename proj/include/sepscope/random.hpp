#pragma once

// Seedable random sources. All randomized routines draw from std::mt19937_64;
// per-task seeds are derived with splitmix64 so results do not depend on
// scheduling.

#include <cstdint>
#include <random>

#include "sepscope/tensor_core.hpp"

namespace sepscope {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Entries i.i.d. standard complex Gaussian.
ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix haar_unitary(Eigen::Index dim, Rng& rng);

PureState random_pure_state(const SystemShape& shape, Rng& rng);
/// G G† / Tr with G of size dim × rank (rank = dim gives Hilbert–Schmidt).
DensityMatrix random_density(const SystemShape& shape, Rng& rng, int rank = 0);

}  // namespace sepscope
