#include "witloop/witnesses.hpp"

#include <cmath>

#include "witloop/errors.hpp"

namespace witloop
{

HermitianOperator projector(std::vector<int> dims, const CVector& v)
{
  return HermitianOperator(std::move(dims), v * v.adjoint());
}

HermitianOperator phi_plus_state()
{
  return ghz_state(2);
}

HermitianOperator phi_plus_witness()
{
  return HermitianOperator({2, 2}, 0.5 * CMatrix::Identity(4, 4) - phi_plus_state().matrix());
}

HermitianOperator ghz_state(int qubits)
{
  if (qubits < 2)
    throw InvalidDimension("GHZ state needs at least two qubits");
  const int side = 1 << qubits;
  CVector v = CVector::Zero(side);
  v(0) = 1.0 / std::sqrt(2.0);
  v(side - 1) = 1.0 / std::sqrt(2.0);
  return projector(std::vector<int>(qubits, 2), v);
}

HermitianOperator ghz_witness(int qubits)
{
  const HermitianOperator ghz = ghz_state(qubits);
  const CMatrix w = 0.5 * CMatrix::Identity(ghz.dimension(), ghz.dimension()) - ghz.matrix();
  return HermitianOperator(ghz.dims(), w / w.trace().real());
}

HermitianOperator maximally_mixed(std::vector<int> dims)
{
  const int side = total_dimension(dims);
  return HermitianOperator(std::move(dims), CMatrix::Identity(side, side) / static_cast<double>(side));
}

CMatrix partial_transpose_second(const CMatrix& m, int dim_a, int dim_b)
{
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k)
        for (int l = 0; l < dim_b; ++l)
          out(i * dim_b + j, k * dim_b + l) = m(i * dim_b + l, k * dim_b + j);
  return out;
}

HermitianOperator random_two_qubit_witness(Rng& rng)
{
  const CVector psi = random_ket(4, rng);
  const CMatrix pt = partial_transpose_second(psi * psi.adjoint(), 2, 2);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  const double t = weight(rng) * weight(rng);
  const CMatrix w = pt + t * random_density_matrix({2, 2}, rng).matrix();
  return HermitianOperator({2, 2}, w / w.trace().real());
}

}  // namespace witloop
