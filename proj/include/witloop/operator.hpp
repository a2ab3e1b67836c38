#ifndef WITLOOP_OPERATOR_HPP
#define WITLOOP_OPERATOR_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace witloop
{

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Maximum allowed |M - M^dagger| entry for an operator to count as Hermitian.
inline constexpr double kHermiticityTolerance = 1e-10;

// Dense Hermitian operator on a tensor product of subsystems with
// dimensions dims[0] x dims[1] x ... . Construction validates shape,
// finiteness and Hermiticity, then symmetrizes (M + M^dagger)/2 so that
// downstream code sees an exactly Hermitian matrix.
class HermitianOperator
{
public:
  HermitianOperator(std::vector<int> dims, CMatrix matrix);

  static HermitianOperator identity(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  const CMatrix& matrix() const { return matrix_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }
  int parties() const { return static_cast<int>(dims_.size()); }

  double trace() const { return matrix_.trace().real(); }

  HermitianOperator scaled(double factor) const;

private:
  std::vector<int> dims_;
  CMatrix matrix_;
};

// Product of the entries of dims; throws InvalidDimension on a
// non-positive entry or an empty list.
int total_dimension(std::span<const int> dims);

// Real spectrum in ascending order.
struct Spectrum
{
  std::vector<double> eigenvalues;
  double lambda_min = 0.0;
  double lambda_max = 0.0;

  static Spectrum from_sorted(std::vector<double> ascending);
};

struct EigenSystem
{
  Spectrum spectrum;
  CMatrix vectors;  // column k belongs to spectrum.eigenvalues[k]
};

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);

// Kronecker product of plain matrices, left factor most significant.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix kron(std::span<const CMatrix> factors);

Spectrum hermitian_eigenvalues(const HermitianOperator& a);
// Checks Hermiticity (throws NonHermitianInput) before diagonalizing.
Spectrum hermitian_eigenvalues(const CMatrix& a);

EigenSystem hermitian_eigensystem(const HermitianOperator& a);

// tr(A B). Throws DimensionMismatch when the total dimensions differ.
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);

// Max-entry deviation from Hermiticity.
double hermiticity_defect(const CMatrix& m);

struct Svd3
{
  Eigen::Matrix3d u;  // rows are the left singular vectors
  Eigen::Vector3d s;  // descending, nonnegative
  Eigen::Matrix3d v;  // rows are the right singular vectors
};

// SVD of a real 3x3 matrix in the convention U C V^T = diag(s).
//
// Ordering is by descending s; inside a group of equal singular values
// (within 1e-12) rows are ordered lexicographically by U. Each U row is
// sign-normalized so its first non-negligible entry is positive, with
// the matching V row flipped alongside.
Svd3 svd_3x3(const Eigen::Matrix3d& c);

}  // namespace witloop

#endif  // WITLOOP_OPERATOR_HPP
