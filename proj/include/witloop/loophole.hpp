#ifndef WITLOOP_LOOPHOLE_HPP
#define WITLOOP_LOOPHOLE_HPP

#include <optional>
#include <vector>

#include "witloop/decomposition.hpp"
#include "witloop/operator.hpp"

namespace witloop
{

// Detector efficiencies, each in (0, 1].
//   eta_plus  = N / (N + eps_plus)   additional-events efficiency (dark counts)
//   eta_minus = (N - eps_minus) / N  lost-events efficiency
class EfficiencyPair
{
public:
  // Throws InvalidEfficiency outside (0, 1] or for non-finite input.
  EfficiencyPair(double eta_plus, double eta_minus);

  static EfficiencyPair perfect() { return {1.0, 1.0}; }

  double eta_plus() const { return eta_plus_; }
  double eta_minus() const { return eta_minus_; }

private:
  double eta_plus_;
  double eta_minus_;
};

// Extremal per-event contributions of additional (plus) and lost (minus)
// events to c * <S>: plus = min_lambda c*lambda, minus = max_lambda c*lambda.
// A zero coefficient gives (0, 0).
struct Omega
{
  double plus = 0.0;
  double minus = 0.0;
};

Omega omega(double c, const Spectrum& spectrum);

// (1/eta_plus + eta_minus - 1)^{-1}
double kappa(const EfficiencyPair& eff);

// Worst-case measured c<S>_m given the true <S>_t:
//   kappa * (c<S>_t - Omega+ (1 - 1/eta_plus) - Omega- (1 - eta_minus)).
// Throws OutOfSpectrumRange when <S>_t lies outside [lambda_min, lambda_max].
double worst_case_setting_expectation(double c, const Spectrum& spectrum, double true_expect,
                                      const EfficiencyPair& eff);

// Largest measured <W>_m that still certifies <W>_t < 0 (strictly below
// certifies):
//   c0 (1 - kappa) - kappa * sum_alpha (Omega_a+ (1 - 1/eta_plus) + Omega_a- (1 - eta_minus)).
double wm_bound(const WitnessDecomposition& dec, const EfficiencyPair& eff);

// Qubit specialization where Omega_a+- = -+|c_a|:
//   c0 - (c0 + abs_sum (1/eta_plus - eta_minus)) / (eta_minus + 1/eta_plus - 1).
double wm_bound_qubits(double c0, double abs_sum, const EfficiencyPair& eff);

// Minimal lost-events efficiency for eta_plus = 1: eta_minus must exceed
// (1 - wm / (c0 + abs_sum))^{-1}. Returns nullopt when wm >= 0, where there
// is nothing to certify. Throws InvalidDecomposition if c0 + abs_sum <= 0.
//
// For non-qubit settings pass sum_alpha Omega_a- in place of abs_sum.
std::optional<double> eta_minus_threshold(double wm_measured, double c0, double abs_sum);

struct LoopholeReport
{
  double kappa = 0.0;
  std::vector<double> omega_plus;
  std::vector<double> omega_minus;
  double wm_bound = 0.0;
  bool certified = false;
  std::optional<double> eta_minus_threshold;  // nullopt: impossible
};

LoopholeReport analyze(const WitnessDecomposition& dec, const EfficiencyPair& eff, double wm_measured);

struct ContourGrid
{
  std::vector<double> eta_plus;   // columns
  std::vector<double> eta_minus;  // rows
  Eigen::MatrixXd values;         // values(row, col) = wm_bound_qubits
};

// k / n for k = 1 .. n.
std::vector<double> efficiency_axis(int n);

// wm_bound_qubits over eta_minus x eta_plus; rows run in parallel.
ContourGrid contour_grid(double c0, double abs_sum, const std::vector<double>& eta_plus,
                         const std::vector<double>& eta_minus);

ContourGrid contour_grid_serial(double c0, double abs_sum, const std::vector<double>& eta_plus,
                                const std::vector<double>& eta_minus);

}  // namespace witloop

#endif  // WITLOOP_LOOPHOLE_HPP
