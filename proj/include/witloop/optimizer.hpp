#ifndef WITLOOP_OPTIMIZER_HPP
#define WITLOOP_OPTIMIZER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "witloop/decomposition.hpp"
#include "witloop/operator.hpp"

namespace witloop
{

// W = c00 1x1 + sum_j b_j 1 x s_j + sum_i a_i s_i x 1 + sum_ij C_ij s_i x s_j
struct PauliCoefficients
{
  double c00 = 0.0;
  Eigen::Vector3d a = Eigen::Vector3d::Zero();  // c_{i0}
  Eigen::Vector3d b = Eigen::Vector3d::Zero();  // c_{0j}
  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();  // c_{ij}
};

// Throws DimensionMismatch unless w.dims() == {2, 2}.
PauliCoefficients pauli_coefficients(const HermitianOperator& w);

HermitianOperator to_operator(const PauliCoefficients& pc);

// n . (X, Y, Z) for a unit Bloch vector n; eigenvalues +-1.
struct RotatedPauli
{
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();

  CMatrix matrix() const;
};

struct ProductTerm
{
  double weight = 0.0;  // nonnegative
  RotatedPauli a;
  RotatedPauli b;
};

struct LocalTerm
{
  double weight = 0.0;  // nonnegative
  RotatedPauli sigma;
};

// Minimal-sum|c| decomposition over rotated local Pauli measurements:
//   W = c0 1 + sum_i s_i sA_i x sB_i + cA sA x 1 + cB 1 x sB.
struct OptimalDecomposition
{
  double c0 = 0.0;
  std::vector<ProductTerm> schmidt_terms;  // descending weight, zeros pruned
  std::optional<LocalTerm> local_a;
  std::optional<LocalTerm> local_b;
  double abs_sum = 0.0;

  // Settings with spectra {-1, +1}, usable by the loophole module.
  WitnessDecomposition as_decomposition() const;
  HermitianOperator reassemble() const;
};

// Operator-Schmidt decomposition of the two-body part via the SVD of C,
// with each single-body part collapsed onto one rotated Pauli of weight
// equal to its Bloch-vector norm.
OptimalDecomposition optimize_two_qubit(const HermitianOperator& w);

struct AlternativeDecomposition
{
  std::vector<ProductTerm> terms;
  double weight_sum = 0.0;
};

// Rewrites the two-body part C = A B^T through C = (A G)(B G^{-T})^T for
// an invertible terms x terms mixing matrix G, where A = U^T S^{1/2} and
// B = V^T S^{1/2} are padded with zero columns. G = identity with
// terms = 3 reproduces the Schmidt terms. Throws ConstructionFailed if a
// product term vanishes or the result does not reassemble to 1e-9.
AlternativeDecomposition mixed_decomposition(const PauliCoefficients& pc, const Eigen::MatrixXd& mixing);

// mixed_decomposition with G = Q1 diag(exp(z)) Q2, Q1/Q2 Haar orthogonal
// and z Gaussian; resamples a bounded number of times before giving up.
AlternativeDecomposition random_decomposition(const HermitianOperator& w, int terms, std::uint64_t seed);

// Two-body part sum_ij C_ij s_i x s_j as a 4x4 matrix.
CMatrix two_body_matrix(const Eigen::Matrix3d& c);

}  // namespace witloop

#endif  // WITLOOP_OPTIMIZER_HPP
