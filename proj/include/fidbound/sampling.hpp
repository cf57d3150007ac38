#pragma once

#include "fidbound/tensor_core.hpp"

#include <cstdint>
#include <random>

namespace fidbound::sampling {

using Rng = std::mt19937_64;

/// Independent stream for (seed, stream index).
Rng stream(std::uint64_t seed, std::uint64_t index);

CMatrix<double> gaussian_matrix(long rows, long cols, Rng &rng);

/// Haar-random isometry (rows >= cols), columns orthonormal.
CMatrix<double> random_isometry(long rows, long cols, Rng &rng);

/// Orthonormal columns of the QR factor of `g` (rows >= cols).
CMatrix<double> isometry_from(const CMatrix<double> &g);

PureState haar_pure_state(const Dims &dims, Rng &rng);

/// W W^dagger / Tr with Gaussian W of shape dim x rank.
DensityOperator random_density(const Dims &dims, int rank, Rng &rng);

/// Uniform point on the probability simplex.
std::vector<double> random_probabilities(std::size_t count, Rng &rng);

} // namespace fidbound::sampling
