#ifndef WITLOOP_ADVERSARY_HPP
#define WITLOOP_ADVERSARY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "witloop/decomposition.hpp"
#include "witloop/loophole.hpp"
#include "witloop/operator.hpp"

namespace witloop
{

// Count-level model of one measurement setting: ideal (error-free) counts
// per eigenvalue bin plus the totals of additional and lost events.
struct Outcome
{
  double eigenvalue = 0.0;
  long long ideal_count = 0;
};

struct CountRecord
{
  std::vector<Outcome> outcomes;
  long long eps_plus = 0;
  long long eps_minus = 0;

  long long ideal_total() const;
  long long measured_total() const { return ideal_total() + eps_plus - eps_minus; }
};

// Throws InfeasibleAllocation for negative counts, eps_minus > N or an
// empty measured record.
void validate(const CountRecord& rec);

// Where the adversary puts the additional events and takes the lost ones.
struct Allocation
{
  std::vector<long long> added;
  std::vector<long long> lost;
};

// sum_i (n_i + added_i - lost_i) lambda_i / (N + eps_plus - eps_minus).
// Throws InfeasibleAllocation unless sum(added) = eps_plus,
// sum(lost) = eps_minus and 0 <= lost_i <= n_i.
double measured_expectation(const CountRecord& rec, const Allocation& alloc);

enum class Direction
{
  minimize,
  maximize,
};

struct Extremum
{
  double value = 0.0;  // c * measured_expectation
  Allocation allocation;
};

// Exact extremum of c * <S>_m over integer-feasible allocations. Because
// the denominator is fixed, the objective is linear: every additional
// event goes to the bin with the extremal c*lambda, and lost events are
// drained greedily from the bins at the opposite extreme.
Extremum adversarial_extremum(const CountRecord& rec, double c, Direction direction);

// Number of feasible allocations.
double allocation_lattice_size(const CountRecord& rec);

// Brute-force reference for adversarial_extremum. Throws std::length_error
// when the lattice exceeds max_points.
Extremum adversarial_extremum_enumerate(const CountRecord& rec, double c, Direction direction,
                                        double max_points = 1e6);

// Integer counts round(total * p_i) with largest-remainder correction so
// that they sum to `total` exactly. Negative probabilities are clamped to 0.
std::vector<long long> largest_remainder_counts(std::span<const double> probabilities, long long total);

struct SettingVerification
{
  std::string label;
  double coefficient = 0.0;
  double true_expectation = 0.0;
  CountRecord record;
  double formula = 0.0;        // closed-form worst case of c<S>_m
  double unconstrained = 0.0;  // integer counts, lost events not capped per bin
  double oracle = 0.0;         // best feasible adversary
  double deficit = 0.0;        // oracle - unconstrained
};

struct ClosedFormVerification
{
  double true_value = 0.0;     // <W>_t
  double formula_value = 0.0;  // c0 + sum closed-form worst cases
  double oracle_value = 0.0;   // c0 + sum oracle worst cases
  double gap = 0.0;            // oracle - formula
  double attainability_deficit = 0.0;
  double discretization = 0.0;  // gap - attainability_deficit
  double wm_bound = 0.0;
  std::vector<SettingVerification> settings;
};

// Rejects states that are not unit-trace and positive semidefinite to tol.
void require_density_matrix(const HermitianOperator& rho, double tol = 1e-8);

// Builds one CountRecord per setting from the Born statistics of `state`
// (n_ideal events per setting, eps_minus = round((1 - eta_minus) N),
// eps_plus = round(N (1/eta_plus - 1))), runs the adversary per setting
// and compares against the closed form.
ClosedFormVerification verify_closed_form(const WitnessDecomposition& dec, const HermitianOperator& state,
                                          const EfficiencyPair& eff, long long n_ideal);

// Variant taking <S_alpha>_t directly; every setting must have exactly two
// distinct eigenvalues so that the outcome distribution is determined.
ClosedFormVerification verify_closed_form(const WitnessDecomposition& dec,
                                          std::span<const double> state_expectations,
                                          const EfficiencyPair& eff, long long n_ideal);

}  // namespace witloop

#endif  // WITLOOP_ADVERSARY_HPP
