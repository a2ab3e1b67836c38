#include "witloop/optimizer.hpp"

#include <cmath>
#include <random>
#include <string>

#include "witloop/errors.hpp"
#include "witloop/random.hpp"

namespace witloop
{

namespace
{

constexpr double kPrune = 1e-12;
constexpr double kVanishingWeight = 1e-14;
constexpr int kMaxMixingAttempts = 64;

const std::vector<CMatrix>& paulis()
{
  static const std::vector<CMatrix> p = pauli_basis().elements;
  return p;
}

void require_two_qubits(const HermitianOperator& w)
{
  if (w.dims() != std::vector<int>{2, 2})
    throw DimensionMismatch("two-qubit operator required (dims [2,2])");
}

}  // namespace

PauliCoefficients pauli_coefficients(const HermitianOperator& w)
{
  require_two_qubits(w);
  const auto& s = paulis();
  auto coeff = [&](int i, int j) {
    const CMatrix g = kron(s[i], s[j]);
    return w.matrix().cwiseProduct(g.transpose()).sum().real() / 4.0;
  };
  PauliCoefficients pc;
  pc.c00 = coeff(0, 0);
  for (int i = 1; i <= 3; ++i)
  {
    pc.a(i - 1) = coeff(i, 0);
    pc.b(i - 1) = coeff(0, i);
    for (int j = 1; j <= 3; ++j)
      pc.C(i - 1, j - 1) = coeff(i, j);
  }
  return pc;
}

CMatrix two_body_matrix(const Eigen::Matrix3d& c)
{
  const auto& s = paulis();
  CMatrix m = CMatrix::Zero(4, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m += c(i, j) * kron(s[i + 1], s[j + 1]);
  return m;
}

HermitianOperator to_operator(const PauliCoefficients& pc)
{
  const auto& s = paulis();
  CMatrix m = pc.c00 * CMatrix::Identity(4, 4) + two_body_matrix(pc.C);
  for (int i = 0; i < 3; ++i)
  {
    m += pc.a(i) * kron(s[i + 1], s[0]);
    m += pc.b(i) * kron(s[0], s[i + 1]);
  }
  return HermitianOperator({2, 2}, m);
}

CMatrix RotatedPauli::matrix() const
{
  const auto& s = paulis();
  return axis(0) * s[1] + axis(1) * s[2] + axis(2) * s[3];
}

WitnessDecomposition OptimalDecomposition::as_decomposition() const
{
  const CMatrix id = CMatrix::Identity(2, 2);
  WitnessDecomposition dec;
  dec.dims = {2, 2};
  dec.c0 = c0;
  for (std::size_t k = 0; k < schmidt_terms.size(); ++k)
  {
    const auto& t = schmidt_terms[k];
    dec.settings.push_back(
      make_setting(t.weight, {t.a.matrix(), t.b.matrix()}, "schmidt_" + std::to_string(k + 1)));
  }
  if (local_a)
    dec.settings.push_back(make_setting(local_a->weight, {local_a->sigma.matrix(), id}, "local_A"));
  if (local_b)
    dec.settings.push_back(make_setting(local_b->weight, {id, local_b->sigma.matrix()}, "local_B"));
  return dec;
}

HermitianOperator OptimalDecomposition::reassemble() const
{
  return witloop::reassemble(as_decomposition());
}

OptimalDecomposition optimize_two_qubit(const HermitianOperator& w)
{
  const PauliCoefficients pc = pauli_coefficients(w);
  const Svd3 svd = svd_3x3(pc.C);

  OptimalDecomposition out;
  out.c0 = pc.c00;
  for (int k = 0; k < 3; ++k)
  {
    if (svd.s(k) <= kPrune)
      continue;
    ProductTerm t;
    t.weight = svd.s(k);
    t.a.axis = svd.u.row(k).transpose();
    t.b.axis = svd.v.row(k).transpose();
    out.schmidt_terms.push_back(t);
    out.abs_sum += t.weight;
  }
  const double na = pc.a.norm();
  if (na > kPrune)
  {
    out.local_a = LocalTerm{na, RotatedPauli{pc.a / na}};
    out.abs_sum += na;
  }
  const double nb = pc.b.norm();
  if (nb > kPrune)
  {
    out.local_b = LocalTerm{nb, RotatedPauli{pc.b / nb}};
    out.abs_sum += nb;
  }
  return out;
}

AlternativeDecomposition mixed_decomposition(const PauliCoefficients& pc, const Eigen::MatrixXd& mixing)
{
  const Eigen::Index m = mixing.rows();
  if (m < 3 || mixing.cols() != m)
    throw ConstructionFailed("mixing matrix must be square with at least 3 rows");

  const Svd3 svd = svd_3x3(pc.C);
  Eigen::MatrixXd left = Eigen::MatrixXd::Zero(3, m);
  Eigen::MatrixXd right = Eigen::MatrixXd::Zero(3, m);
  for (int k = 0; k < 3; ++k)
  {
    const double root = std::sqrt(svd.s(k));
    left.col(k) = root * svd.u.row(k).transpose();
    right.col(k) = root * svd.v.row(k).transpose();
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(mixing);
  if (!lu.isInvertible())
    throw ConstructionFailed("mixing matrix is singular");
  const Eigen::MatrixXd x = left * mixing;
  const Eigen::MatrixXd y = right * lu.inverse().transpose();

  AlternativeDecomposition out;
  Eigen::Matrix3d rebuilt = Eigen::Matrix3d::Zero();
  for (Eigen::Index j = 0; j < m; ++j)
  {
    const double nx = x.col(j).norm();
    const double ny = y.col(j).norm();
    const double weight = nx * ny;
    if (weight <= kVanishingWeight)
      continue;
    ProductTerm t;
    t.weight = weight;
    t.a.axis = x.col(j) / nx;
    t.b.axis = y.col(j) / ny;
    rebuilt += weight * t.a.axis * t.b.axis.transpose();
    out.terms.push_back(t);
    out.weight_sum += weight;
  }

  const double err = (two_body_matrix(rebuilt) - two_body_matrix(pc.C)).cwiseAbs().maxCoeff();
  if (err > 1e-9)
    throw ConstructionFailed("mixed decomposition misses the two-body part by " + std::to_string(err));
  return out;
}

AlternativeDecomposition random_decomposition(const HermitianOperator& w, int terms, std::uint64_t seed)
{
  if (terms < 3)
    throw ConstructionFailed("an alternative decomposition needs at least 3 terms, got " +
                             std::to_string(terms));
  const PauliCoefficients pc = pauli_coefficients(w);
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 0.5);

  for (int attempt = 0; attempt < kMaxMixingAttempts; ++attempt)
  {
    Eigen::VectorXd scales(terms);
    for (int k = 0; k < terms; ++k)
      scales(k) = std::exp(normal(rng));
    const Eigen::MatrixXd g =
      random_orthogonal(terms, rng) * scales.asDiagonal() * random_orthogonal(terms, rng);
    try
    {
      AlternativeDecomposition alt = mixed_decomposition(pc, g);
      if (static_cast<int>(alt.terms.size()) == terms)
        return alt;
    }
    catch (const ConstructionFailed&)
    {
      // resample
    }
  }
  throw ConstructionFailed("random mixing did not produce " + std::to_string(terms) +
                           " nonvanishing terms after " + std::to_string(kMaxMixingAttempts) + " attempts");
}

}  // namespace witloop
