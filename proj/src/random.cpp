#include "witloop/random.hpp"

#include <cmath>

namespace witloop
{

namespace
{

CMatrix ginibre(int rows, int cols, Rng& rng)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
    {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

CVector random_ket(int d, Rng& rng)
{
  CVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

CMatrix random_unitary(int d, Rng& rng)
{
  const CMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k)
  {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0)
      q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Eigen::MatrixXd random_orthogonal(int n, Rng& rng)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k)
    if (r(k, k) < 0.0)
      q.col(k) *= -1.0;
  return q;
}

HermitianOperator random_hermitian(std::vector<int> dims, Rng& rng, double scale)
{
  const int side = total_dimension(dims);
  const CMatrix g = ginibre(side, side, rng);
  return HermitianOperator(std::move(dims), 0.5 * scale * (g + g.adjoint()));
}

HermitianOperator random_density_matrix(std::vector<int> dims, Rng& rng)
{
  const int side = total_dimension(dims);
  const CMatrix g = ginibre(side, side, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return HermitianOperator(std::move(dims), rho);
}

CVector random_product_ket(const std::vector<int>& dims, Rng& rng)
{
  CVector out = CVector::Ones(1);
  for (int d : dims)
  {
    const CVector k = random_ket(d, rng);
    CVector next(out.size() * d);
    for (Eigen::Index i = 0; i < out.size(); ++i)
      next.segment(i * d, d) = out(i) * k;
    out = std::move(next);
  }
  return out;
}

}  // namespace witloop
