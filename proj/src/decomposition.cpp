#include "witloop/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "witloop/errors.hpp"
#include "witloop/random.hpp"

namespace witloop
{

OperatorBasis pauli_basis()
{
  const Complex i(0.0, 1.0);
  OperatorBasis b;
  b.dim = 2;
  CMatrix id = CMatrix::Identity(2, 2);
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  y << 0.0, -i, i, 0.0;
  z << 1.0, 0.0, 0.0, -1.0;
  b.elements = {id, x, y, z};
  b.labels = {"I", "X", "Y", "Z"};
  return b;
}

OperatorBasis gellmann_basis(int d)
{
  if (d < 2)
    throw InvalidDimension("Gell-Mann basis needs d >= 2, got " + std::to_string(d));
  const Complex i(0.0, 1.0);
  OperatorBasis b;
  b.dim = d;
  b.elements.push_back(CMatrix::Identity(d, d));
  b.labels.push_back("I");

  auto push = [&](CMatrix m) {
    b.elements.push_back(std::move(m));
    b.labels.push_back("gm_" + std::to_string(b.elements.size() - 1));
  };

  for (int k = 1; k < d; ++k)
  {
    for (int j = 0; j < k; ++j)
    {
      CMatrix sym = CMatrix::Zero(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      push(std::move(sym));

      CMatrix anti = CMatrix::Zero(d, d);
      anti(j, k) = -i;
      anti(k, j) = i;
      push(std::move(anti));
    }
    CMatrix diag = CMatrix::Zero(d, d);
    const double norm = std::sqrt(2.0 / (k * (k + 1.0)));
    for (int m = 0; m < k; ++m)
      diag(m, m) = norm;
    diag(k, k) = -k * norm;
    push(std::move(diag));
  }
  return b;
}

CMatrix LocalSetting::assembled() const
{
  return kron(std::span<const CMatrix>(factors));
}

LocalSetting make_setting(double coefficient, std::vector<CMatrix> factors, std::string label)
{
  LocalSetting s;
  s.coefficient = coefficient;
  s.factors = std::move(factors);
  s.label = std::move(label);
  s.spectrum = hermitian_eigenvalues(s.assembled());
  return s;
}

double WitnessDecomposition::abs_sum() const
{
  double total = 0.0;
  for (const auto& s : settings)
    total += std::abs(s.coefficient);
  return total;
}

namespace
{

void check_bases(const HermitianOperator& w, const std::vector<OperatorBasis>& per_party)
{
  if (per_party.size() != w.dims().size())
    throw DimensionMismatch("got " + std::to_string(per_party.size()) + " bases for " +
                            std::to_string(w.dims().size()) + " parties");
  for (std::size_t p = 0; p < per_party.size(); ++p)
    if (per_party[p].dim != w.dims()[p])
      throw DimensionMismatch("basis for party " + std::to_string(p) + " has dimension " +
                              std::to_string(per_party[p].dim) + " but the party has " +
                              std::to_string(w.dims()[p]));
}

std::vector<std::size_t> digits_of(std::size_t index, const std::vector<OperatorBasis>& per_party)
{
  std::vector<std::size_t> digits(per_party.size());
  for (std::size_t p = per_party.size(); p-- > 0;)
  {
    digits[p] = index % per_party[p].size();
    index /= per_party[p].size();
  }
  return digits;
}

std::size_t product_count(const std::vector<OperatorBasis>& per_party)
{
  std::size_t n = 1;
  for (const auto& b : per_party)
    n *= b.size();
  return n;
}

struct Term
{
  std::vector<CMatrix> factors;
  std::string label;
  double norm = 1.0;  // prod tr(g^2)
};

Term term_for(std::size_t index, const std::vector<OperatorBasis>& per_party)
{
  Term t;
  bool single_char = true;
  for (const auto& b : per_party)
    for (const auto& l : b.labels)
      single_char = single_char && l.size() == 1;

  const auto digits = digits_of(index, per_party);
  for (std::size_t p = 0; p < per_party.size(); ++p)
  {
    const CMatrix& g = per_party[p].elements[digits[p]];
    t.factors.push_back(g);
    t.norm *= (g * g).trace().real();
    if (!single_char && p > 0)
      t.label += ",";
    t.label += per_party[p].labels[digits[p]];
  }
  return t;
}

template <typename Coefficient>
WitnessDecomposition decompose_with(const HermitianOperator& w, const std::vector<OperatorBasis>& per_party,
                                    Coefficient coefficient, bool parallel)
{
  check_bases(w, per_party);
  const std::size_t count = product_count(per_party);
  std::vector<std::optional<LocalSetting>> slots(count);
  double c0 = 0.0;

  const auto body = [&](std::size_t index) {
    Term t = term_for(index, per_party);
    const CMatrix g = kron(std::span<const CMatrix>(t.factors));
    const double c = coefficient(w.matrix(), g) / t.norm;
    if (index == 0)
    {
      c0 = c;
      return;
    }
    if (std::abs(c) > kCoefficientPruning)
      slots[index] = make_setting(c, std::move(t.factors), std::move(t.label));
  };

  const long long n = static_cast<long long>(count);
  if (parallel)
  {
#pragma omp parallel for schedule(dynamic)
    for (long long index = 0; index < n; ++index)
      body(static_cast<std::size_t>(index));
  }
  else
  {
    for (long long index = 0; index < n; ++index)
      body(static_cast<std::size_t>(index));
  }

  WitnessDecomposition dec;
  dec.dims = w.dims();
  dec.c0 = c0;
  for (auto& s : slots)
    if (s)
      dec.settings.push_back(std::move(*s));
  return dec;
}

}  // namespace

WitnessDecomposition decompose(const HermitianOperator& w, const std::vector<OperatorBasis>& per_party)
{
  return decompose_with(
    w, per_party,
    [](const CMatrix& a, const CMatrix& g) { return a.cwiseProduct(g.transpose()).sum().real(); },
    true);
}

WitnessDecomposition decompose(const HermitianOperator& w, const OperatorBasis& basis)
{
  return decompose(w, std::vector<OperatorBasis>(w.dims().size(), basis));
}

WitnessDecomposition decompose_serial(const HermitianOperator& w,
                                      const std::vector<OperatorBasis>& per_party)
{
  return decompose_with(
    w, per_party, [](const CMatrix& a, const CMatrix& g) { return (a * g).trace().real(); }, false);
}

std::vector<OperatorBasis> bases_for(const std::vector<int>& dims, BasisKind kind)
{
  std::vector<OperatorBasis> out;
  out.reserve(dims.size());
  for (int d : dims)
  {
    if (kind == BasisKind::pauli)
    {
      if (d != 2)
        throw DimensionMismatch("Pauli basis needs qubits, got a party of dimension " + std::to_string(d));
      out.push_back(pauli_basis());
    }
    else
    {
      out.push_back(gellmann_basis(d));
    }
  }
  return out;
}

HermitianOperator reassemble(const WitnessDecomposition& dec)
{
  const int side = total_dimension(dec.dims);
  CMatrix m = dec.c0 * CMatrix::Identity(side, side);
  for (const auto& s : dec.settings)
  {
    if (s.factors.size() != dec.dims.size())
      throw DimensionMismatch("setting " + s.label + " has " + std::to_string(s.factors.size()) +
                              " factors for " + std::to_string(dec.dims.size()) + " parties");
    for (std::size_t p = 0; p < s.factors.size(); ++p)
      if (s.factors[p].rows() != dec.dims[p] || s.factors[p].cols() != dec.dims[p])
        throw DimensionMismatch("setting " + s.label + " factor " + std::to_string(p) +
                                " does not match party dimension " + std::to_string(dec.dims[p]));
    m += s.coefficient * s.assembled();
  }
  return HermitianOperator(dec.dims, m);
}

WitnessValidation validate_witness(const HermitianOperator& w, int samples, std::uint64_t seed)
{
  WitnessValidation out;
  const Spectrum spec = hermitian_eigenvalues(w);
  out.lambda_min = spec.lambda_min;
  out.has_negative_eigenvalue = spec.lambda_min < -kHermiticityTolerance;

  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k)
  {
    const CVector psi = random_product_ket(w.dims(), rng);
    best = std::min(best, psi.dot(w.matrix() * psi).real());
  }
  out.min_product_value = samples > 0 ? best : 0.0;
  return out;
}

}  // namespace witloop
