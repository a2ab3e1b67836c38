#ifndef WITLOOP_DECOMPOSITION_HPP
#define WITLOOP_DECOMPOSITION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "witloop/operator.hpp"

namespace witloop
{

// Coefficients with magnitude at or below this are dropped by decompose().
inline constexpr double kCoefficientPruning = 1e-12;

// Single-party operator basis: element 0 is the identity, followed by
// d^2 - 1 traceless, mutually orthogonal Hermitian generators with
// tr(g^2) = 2.
struct OperatorBasis
{
  int dim = 0;
  std::vector<CMatrix> elements;
  std::vector<std::string> labels;

  std::size_t size() const { return elements.size(); }
};

// {I, X, Y, Z}.
OperatorBasis pauli_basis();

// Identity plus the d^2 - 1 generalized Gell-Mann matrices, in the usual
// ordering (for d = 3 this is lambda_1 .. lambda_8). Labels are "I" and
// "gm_1" .. "gm_{d^2-1}". Throws InvalidDimension for d < 2.
OperatorBasis gellmann_basis(int d);

// One measurable term c * (f_1 x f_2 x ... x f_n) of a witness expansion.
// At least one factor is not the identity.
struct LocalSetting
{
  double coefficient = 0.0;
  std::vector<CMatrix> factors;
  std::string label;
  Spectrum spectrum;  // of the assembled tensor product

  CMatrix assembled() const;
};

// Builds a setting and computes the spectrum of its tensor product.
LocalSetting make_setting(double coefficient, std::vector<CMatrix> factors, std::string label);

// W = c0 * 1 + sum_alpha c_alpha S_alpha.
struct WitnessDecomposition
{
  std::vector<int> dims;
  double c0 = 0.0;
  std::vector<LocalSetting> settings;

  // sum_alpha |c_alpha|
  double abs_sum() const;
};

// Expands w in the product basis built from one basis per party.
// Coefficients are tr(W G) / prod tr(g_nu^2); the all-identity term
// becomes c0, and terms with |c| <= kCoefficientPruning are dropped.
// Settings come out in mixed-radix order of the basis indices (party 0
// most significant). The loop over basis products runs under OpenMP.
WitnessDecomposition decompose(const HermitianOperator& w, const std::vector<OperatorBasis>& per_party);

// Same basis for every party; its dim must match every entry of w.dims().
WitnessDecomposition decompose(const HermitianOperator& w, const OperatorBasis& basis);

// Serial reference for decompose(); computes each coefficient as the
// trace of a full matrix product.
WitnessDecomposition decompose_serial(const HermitianOperator& w,
                                      const std::vector<OperatorBasis>& per_party);

enum class BasisKind
{
  pauli,
  gellmann,
};

// Pauli requires every party to be a qubit (DimensionMismatch otherwise).
std::vector<OperatorBasis> bases_for(const std::vector<int>& dims, BasisKind kind);

HermitianOperator reassemble(const WitnessDecomposition& dec);

struct WitnessValidation
{
  double min_product_value = 0.0;
  bool has_negative_eigenvalue = false;
  double lambda_min = 0.0;
};

// Screens w with `samples` Haar-random pure product states. Passing is a
// necessary condition for w to be a witness, not a proof.
WitnessValidation validate_witness(const HermitianOperator& w, int samples, std::uint64_t seed);

}  // namespace witloop

#endif  // WITLOOP_DECOMPOSITION_HPP
