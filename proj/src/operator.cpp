#include "witloop/operator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "witloop/errors.hpp"

namespace witloop
{

int total_dimension(std::span<const int> dims)
{
  if (dims.empty())
    throw InvalidDimension("dims must list at least one subsystem");
  long long total = 1;
  for (int d : dims)
  {
    if (d <= 0)
      throw InvalidDimension("subsystem dimension must be positive, got " + std::to_string(d));
    total *= d;
    if (total > (1LL << 20))
      throw InvalidDimension("total dimension too large for dense storage");
  }
  return static_cast<int>(total);
}

double hermiticity_defect(const CMatrix& m)
{
  if (m.rows() != m.cols())
    return std::numeric_limits<double>::infinity();
  if (m.size() == 0)
    return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(std::vector<int> dims, CMatrix matrix)
  : dims_(std::move(dims))
{
  const int side = total_dimension(dims_);
  if (matrix.rows() != side || matrix.cols() != side)
    throw DimensionMismatch("matrix is " + std::to_string(matrix.rows()) + "x" +
                            std::to_string(matrix.cols()) + " but dims multiply to " +
                            std::to_string(side));
  if (!matrix.allFinite())
    throw NonHermitianInput("matrix has non-finite entries");
  const double defect = hermiticity_defect(matrix);
  if (defect > kHermiticityTolerance)
    throw NonHermitianInput("matrix is not Hermitian (max |M - M^dagger| = " + std::to_string(defect) +
                            ")");
  matrix_ = 0.5 * (matrix + matrix.adjoint());
}

HermitianOperator HermitianOperator::identity(std::vector<int> dims)
{
  const int side = total_dimension(dims);
  return HermitianOperator(std::move(dims), CMatrix::Identity(side, side));
}

HermitianOperator HermitianOperator::scaled(double factor) const
{
  return HermitianOperator(dims_, matrix_ * factor);
}

Spectrum Spectrum::from_sorted(std::vector<double> ascending)
{
  Spectrum out;
  out.eigenvalues = std::move(ascending);
  if (!out.eigenvalues.empty())
  {
    out.lambda_min = out.eigenvalues.front();
    out.lambda_max = out.eigenvalues.back();
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b)
{
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix kron(std::span<const CMatrix> factors)
{
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& f : factors)
    out = kron(out, f);
  return out;
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b)
{
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return HermitianOperator(std::move(dims), kron(a.matrix(), b.matrix()));
}

namespace
{

Spectrum spectrum_of(const Eigen::VectorXd& values)
{
  std::vector<double> ev(values.data(), values.data() + values.size());
  std::sort(ev.begin(), ev.end());
  return Spectrum::from_sorted(std::move(ev));
}

}  // namespace

Spectrum hermitian_eigenvalues(const HermitianOperator& a)
{
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return spectrum_of(solver.eigenvalues());
}

Spectrum hermitian_eigenvalues(const CMatrix& a)
{
  const double defect = hermiticity_defect(a);
  if (defect > kHermiticityTolerance)
    throw NonHermitianInput("eigenvalue request on non-Hermitian matrix (defect " +
                            std::to_string(defect) + ")");
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return spectrum_of(solver.eigenvalues());
}

EigenSystem hermitian_eigensystem(const HermitianOperator& a)
{
  // Eigen already returns eigenvalues in ascending order.
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  const Eigen::VectorXd& values = solver.eigenvalues();
  EigenSystem out;
  out.spectrum = Spectrum::from_sorted(std::vector<double>(values.data(), values.data() + values.size()));
  out.vectors = solver.eigenvectors();
  return out;
}

double hs_inner(const HermitianOperator& a, const HermitianOperator& b)
{
  if (a.dimension() != b.dimension())
    throw DimensionMismatch("trace inner product of operators with dimensions " +
                            std::to_string(a.dimension()) + " and " + std::to_string(b.dimension()));
  // tr(AB) = sum_ij A_ij B_ji
  return a.matrix().cwiseProduct(b.matrix().transpose()).sum().real();
}

Svd3 svd_3x3(const Eigen::Matrix3d& c)
{
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // Eigen: C = Ue S Ve^T, so U = Ue^T and V = Ve^T give U C V^T = S.
  Eigen::Matrix3d u = svd.matrixU().transpose();
  Eigen::Matrix3d v = svd.matrixV().transpose();
  Eigen::Vector3d s = svd.singularValues();

  for (int k = 0; k < 3; ++k)
  {
    for (int j = 0; j < 3; ++j)
    {
      if (std::abs(u(k, j)) > 1e-12)
      {
        if (u(k, j) < 0.0)
        {
          u.row(k) *= -1.0;
          v.row(k) *= -1.0;
        }
        break;
      }
    }
  }

  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(s(a) - s(b)) > 1e-12)
      return s(a) > s(b);
    for (int j = 0; j < 3; ++j)
      if (std::abs(u(a, j) - u(b, j)) > 1e-12)
        return u(a, j) < u(b, j);
    return false;
  });

  Svd3 out;
  for (int k = 0; k < 3; ++k)
  {
    out.u.row(k) = u.row(order[k]);
    out.v.row(k) = v.row(order[k]);
    out.s(k) = s(order[k]);
  }
  return out;
}

}  // namespace witloop
