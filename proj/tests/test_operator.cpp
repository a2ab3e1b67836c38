#include <gtest/gtest.h>

#include "oracles.hpp"
#include "witloop/errors.hpp"
#include "witloop/operator.hpp"
#include "witloop/random.hpp"
#include "witloop/witnesses.hpp"

using namespace witloop;

namespace
{

HermitianOperator qubit(const CMatrix& m)
{
  return HermitianOperator({2}, m);
}

double max_abs(const CMatrix& m)
{
  return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST(HermitianOperator, RejectsShapeMismatch)
{
  EXPECT_THROW(HermitianOperator({2, 2}, CMatrix::Identity(3, 3)), DimensionMismatch);
  EXPECT_THROW(HermitianOperator({2, 0}, CMatrix::Identity(2, 2)), InvalidDimension);
  EXPECT_THROW(HermitianOperator({}, CMatrix::Identity(1, 1)), InvalidDimension);
}

TEST(HermitianOperator, RejectsNonHermitianAndNonFinite)
{
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(qubit(m), NonHermitianInput);

  CMatrix nan = CMatrix::Identity(2, 2);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(qubit(nan), NonHermitianInput);
}

TEST(HermitianOperator, SymmetrizesWithinTolerance)
{
  CMatrix m = oracle::pauli(1);
  m(0, 1) += 5e-11;
  const HermitianOperator op = qubit(m);
  EXPECT_EQ(hermiticity_defect(op.matrix()), 0.0);
}

TEST(TensorProduct, IdentityAndDiagonalCases)
{
  const auto id4 = tensor_product(HermitianOperator::identity({2}), HermitianOperator::identity({2}));
  EXPECT_EQ(id4.dims(), (std::vector<int>{2, 2}));
  EXPECT_EQ(max_abs(id4.matrix() - CMatrix::Identity(4, 4)), 0.0);

  const auto zz = tensor_product(qubit(oracle::pauli(3)), qubit(oracle::pauli(3)));
  Eigen::VectorXcd expected(4);
  expected << 1, -1, -1, 1;
  EXPECT_EQ(max_abs(zz.matrix() - CMatrix(expected.asDiagonal())), 0.0);
}

TEST(TensorProduct, XXSquaredTraceByDirectMultiplication)
{
  const auto xx = tensor_product(qubit(oracle::pauli(1)), qubit(oracle::pauli(1)));
  const auto sq = oracle::matmul_naive(xx.matrix(), xx.matrix());
  EXPECT_NEAR(oracle::trace_naive(sq).real(), 4.0, 1e-15);
}

TEST(TensorProduct, MatchesIndexFormulaAndIsAssociative)
{
  Rng rng(11);
  const auto a = random_hermitian({2}, rng);
  const auto b = random_hermitian({3}, rng);
  const auto c = random_hermitian({2}, rng);
  EXPECT_LT(max_abs(tensor_product(a, b).matrix() - oracle::kron_index(a.matrix(), b.matrix())), 1e-15);
  const auto left = tensor_product(tensor_product(a, b), c);
  const auto right = tensor_product(a, tensor_product(b, c));
  EXPECT_EQ(left.dims(), (std::vector<int>{2, 3, 2}));
  EXPECT_LT(max_abs(left.matrix() - right.matrix()), 1e-12);
}

TEST(Eigenvalues, PauliZ)
{
  const Spectrum s = hermitian_eigenvalues(qubit(oracle::pauli(3)));
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-14);
  EXPECT_EQ(s.lambda_min, s.eigenvalues.front());
  EXPECT_EQ(s.lambda_max, s.eigenvalues.back());
}

TEST(Eigenvalues, XYAgainstCharacteristicPolynomial)
{
  const CMatrix xy = oracle::kron_index(oracle::pauli(1), oracle::pauli(2));
  // Oracle: the characteristic polynomial must equal (x-1)^2 (x+1)^2.
  const auto poly = oracle::characteristic_polynomial(xy);
  const auto expected = oracle::polynomial_from_roots({-1, -1, 1, 1});
  ASSERT_EQ(poly.size(), expected.size());
  for (std::size_t i = 0; i < poly.size(); ++i)
    EXPECT_NEAR(std::abs(poly[i] - expected[i]), 0.0, 1e-12) << "coefficient " << i;

  const Spectrum s = hermitian_eigenvalues(HermitianOperator({2, 2}, xy));
  const std::vector<double> want{-1, -1, 1, 1};
  for (std::size_t i = 0; i < 4; ++i)
    EXPECT_NEAR(s.eigenvalues[i], want[i], 1e-12);
}

TEST(Eigenvalues, ScalarMatrix)
{
  const Spectrum s = hermitian_eigenvalues(HermitianOperator::identity({2, 2}).scaled(0.25));
  for (double e : s.eigenvalues)
    EXPECT_NEAR(e, 0.25, 1e-15);
}

TEST(Eigenvalues, RawMatrixOverloadChecksHermiticity)
{
  CMatrix m = CMatrix::Zero(2, 2);
  m(1, 0) = Complex(0.0, 1.0);
  EXPECT_THROW(hermitian_eigenvalues(m), NonHermitianInput);
}

TEST(Eigenvalues, ReconstructionAndTraceProperty)
{
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial)
  {
    const std::vector<int> dims = trial % 2 ? std::vector<int>{2, 2, 2, 2} : std::vector<int>{3, 3};
    const auto a = random_hermitian(dims, rng);
    const EigenSystem es = hermitian_eigensystem(a);
    const Eigen::VectorXd lam =
      Eigen::Map<const Eigen::VectorXd>(es.spectrum.eigenvalues.data(), es.spectrum.eigenvalues.size());
    const CMatrix rebuilt = es.vectors * lam.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    EXPECT_LE(max_abs(a.matrix() - rebuilt), 1e-9);
    EXPECT_NEAR(lam.sum(), a.trace(), 1e-9);
    EXPECT_TRUE(std::is_sorted(es.spectrum.eigenvalues.begin(), es.spectrum.eigenvalues.end()));
  }
}

TEST(Eigenvalues, RayleighQuotientWithinSpectrum)
{
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial)
  {
    const auto a = random_hermitian({2, 3}, rng);
    const auto rho = random_density_matrix({2, 3}, rng);
    const Spectrum s = hermitian_eigenvalues(a);
    const double value = hs_inner(a, rho) / rho.trace();
    EXPECT_LE(s.lambda_min - 1e-12, value);
    EXPECT_LE(value, s.lambda_max + 1e-12);
  }
}

TEST(HsInner, PauliOrthogonalityAndWitnessNormalization)
{
  EXPECT_NEAR(hs_inner(qubit(oracle::pauli(1)), qubit(oracle::pauli(1))), 2.0, 1e-15);
  EXPECT_NEAR(hs_inner(qubit(oracle::pauli(1)), qubit(oracle::pauli(2))), 0.0, 1e-15);
  EXPECT_NEAR(hs_inner(HermitianOperator::identity({2, 2}), phi_plus_witness()), 1.0, 1e-15);
  EXPECT_THROW(hs_inner(HermitianOperator::identity({2}), HermitianOperator::identity({3})), DimensionMismatch);
}

namespace
{

void expect_valid_svd(const Eigen::Matrix3d& c, const Svd3& svd)
{
  EXPECT_LE((svd.u * c * svd.v.transpose() - Eigen::Matrix3d(svd.s.asDiagonal())).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((svd.u * svd.u.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((svd.v * svd.v.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_GE(svd.s(2), 0.0);
  EXPECT_GE(svd.s(0), svd.s(1));
  EXPECT_GE(svd.s(1), svd.s(2));
}

}  // namespace

TEST(Svd3, DiagonalPositive)
{
  const Eigen::Matrix3d c = Eigen::Vector3d(3, 2, 1).asDiagonal();
  const Svd3 svd = svd_3x3(c);
  expect_valid_svd(c, svd);
  EXPECT_LE((svd.s - Eigen::Vector3d(3, 2, 1)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((svd.u - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((svd.v - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Svd3, SignAbsorbed)
{
  const Eigen::Matrix3d c = Eigen::Vector3d(-1, 0, 0).asDiagonal();
  const Svd3 svd = svd_3x3(c);
  expect_valid_svd(c, svd);
  EXPECT_NEAR(svd.s(0), 1.0, 1e-14);
  EXPECT_NEAR(svd.s(1), 0.0, 1e-14);
  EXPECT_NEAR(svd.s(2), 0.0, 1e-14);
  // U rows are sign-normalized, so the minus sign lands in V.
  EXPECT_GT(svd.u(0, 0), 0.0);
  EXPECT_LT(svd.v(0, 0), 0.0);
}

TEST(Svd3, RandomMatricesMultiplyBack)
{
  Rng rng(17);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 500; ++trial)
  {
    Eigen::Matrix3d c;
    for (int i = 0; i < 9; ++i)
      c(i) = normal(rng);
    expect_valid_svd(c, svd_3x3(c));
  }
}

TEST(Svd3, SingularValuesInvariantUnderOrthogonalMaps)
{
  Rng rng(23);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 200; ++trial)
  {
    Eigen::Matrix3d c;
    for (int i = 0; i < 9; ++i)
      c(i) = normal(rng);
    const Eigen::Matrix3d o1 = random_orthogonal(3, rng);
    const Eigen::Matrix3d o2 = random_orthogonal(3, rng);
    EXPECT_LE((svd_3x3(c).s - svd_3x3(o1 * c * o2).s).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Svd3, DegenerateValuesAreDeterministic)
{
  const Eigen::Matrix3d c = Eigen::Vector3d(-0.25, 0.25, -0.25).asDiagonal();
  const Svd3 a = svd_3x3(c);
  const Svd3 b = svd_3x3(c);
  expect_valid_svd(c, a);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.v, b.v);
  for (int k = 0; k < 3; ++k)
    EXPECT_NEAR(a.s(k), 0.25, 1e-15);
  // Tie-break: U rows in ascending lexicographic order.
  for (int k = 0; k + 1 < 3; ++k)
  {
    const Eigen::RowVector3d r0 = a.u.row(k);
    const Eigen::RowVector3d r1 = a.u.row(k + 1);
    EXPECT_TRUE(std::lexicographical_compare(r0.data(), r0.data() + 3, r1.data(), r1.data() + 3));
  }
}
