#ifndef WITLOOP_RANDOM_HPP
#define WITLOOP_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "witloop/operator.hpp"

namespace witloop
{

using Rng = std::mt19937_64;

// Haar-random unit vector in C^d.
CVector random_ket(int d, Rng& rng);

// Haar-random d x d unitary (QR of a Ginibre matrix with phase fix).
CMatrix random_unitary(int d, Rng& rng);

// Haar-random n x n real orthogonal matrix.
Eigen::MatrixXd random_orthogonal(int n, Rng& rng);

// Hermitian matrix with i.i.d. Gaussian entries (GUE-like), scaled by `scale`.
HermitianOperator random_hermitian(std::vector<int> dims, Rng& rng, double scale = 1.0);

// Random mixed state: G G^dagger / tr for a square Ginibre matrix G.
HermitianOperator random_density_matrix(std::vector<int> dims, Rng& rng);

// Tensor product of one Haar-random ket per party.
CVector random_product_ket(const std::vector<int>& dims, Rng& rng);

}  // namespace witloop

#endif  // WITLOOP_RANDOM_HPP
