// Independent reference computations for the test suites. Nothing here
// calls into the library's numerical kernels.
#ifndef WITLOOP_TESTS_ORACLES_HPP
#define WITLOOP_TESTS_ORACLES_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle
{

using C = std::complex<double>;
using M = Eigen::MatrixXcd;

inline M pauli(int k)
{
  const C i(0.0, 1.0);
  M m(2, 2);
  switch (k)
  {
  case 0: m << 1, 0, 0, 1; break;
  case 1: m << 0, 1, 1, 0; break;
  case 2: m << 0, -i, i, 0; break;
  default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Kronecker product by the index formula (A x B)_{(i,k),(j,l)} = A_ij B_kl.
inline M kron_index(const M& a, const M& b)
{
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Triple-loop product, no Eigen expression templates.
inline M matmul_naive(const M& a, const M& b)
{
  M out = M::Zero(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      for (int k = 0; k < a.cols(); ++k)
        out(i, j) += a(i, k) * b(k, j);
  return out;
}

inline C trace_naive(const M& a)
{
  C t = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    t += a(i, i);
  return t;
}

// Characteristic polynomial det(x - A) = x^n + c[n-1] x^{n-1} + ... + c[0]
// via Faddeev-LeVerrier; coefficients returned low to high, leading 1 last.
inline std::vector<C> characteristic_polynomial(const M& a)
{
  const int n = static_cast<int>(a.rows());
  std::vector<C> coeff(n + 1);
  coeff[n] = 1.0;
  M mk = M::Zero(n, n);
  const M id = M::Identity(n, n);
  for (int k = 1; k <= n; ++k)
  {
    mk = matmul_naive(a, mk) + coeff[n - k + 1] * id;
    coeff[n - k] = -trace_naive(matmul_naive(a, mk)) / static_cast<double>(k);
  }
  return coeff;
}

// Coefficients (low to high) of prod_i (x - r_i).
inline std::vector<double> polynomial_from_roots(const std::vector<double>& roots)
{
  std::vector<double> p{1.0};
  for (double r : roots)
  {
    std::vector<double> next(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
    {
      next[i + 1] += p[i];
      next[i] -= r * p[i];
    }
    p = std::move(next);
  }
  return p;
}

inline M phi_plus_witness_explicit()
{
  // 1/2 - |phi+><phi+| written out entry by entry.
  M w = M::Zero(4, 4);
  w(0, 0) = 0.0;
  w(1, 1) = 0.5;
  w(2, 2) = 0.5;
  w(3, 3) = 0.0;
  w(0, 3) = -0.5;
  w(3, 0) = -0.5;
  return w;
}

}  // namespace oracle

#endif  // WITLOOP_TESTS_ORACLES_HPP
