#include "witloop/loophole.hpp"

#include <cmath>
#include <string>

#include "witloop/errors.hpp"

namespace witloop
{

namespace
{

constexpr double kSpectrumSlack = 1e-9;

void check_efficiency(double eta, const char* name)
{
  if (!std::isfinite(eta) || eta <= 0.0 || eta > 1.0)
    throw InvalidEfficiency(std::string(name) + " must lie in (0, 1], got " + std::to_string(eta));
}

void check_axis(const std::vector<double>& axis, const char* name)
{
  for (double eta : axis)
    check_efficiency(eta, name);
}

}  // namespace

EfficiencyPair::EfficiencyPair(double eta_plus, double eta_minus)
  : eta_plus_(eta_plus), eta_minus_(eta_minus)
{
  check_efficiency(eta_plus, "eta_plus");
  check_efficiency(eta_minus, "eta_minus");
}

Omega omega(double c, const Spectrum& spectrum)
{
  if (c > 0.0)
    return {c * spectrum.lambda_min, c * spectrum.lambda_max};
  if (c < 0.0)
    return {c * spectrum.lambda_max, c * spectrum.lambda_min};
  return {};
}

double kappa(const EfficiencyPair& eff)
{
  return 1.0 / (1.0 / eff.eta_plus() + eff.eta_minus() - 1.0);
}

double worst_case_setting_expectation(double c, const Spectrum& spectrum, double true_expect,
                                      const EfficiencyPair& eff)
{
  if (c == 0.0)
    return 0.0;
  if (true_expect < spectrum.lambda_min - kSpectrumSlack || true_expect > spectrum.lambda_max + kSpectrumSlack)
    throw OutOfSpectrumRange("true expectation " + std::to_string(true_expect) + " outside [" +
                             std::to_string(spectrum.lambda_min) + ", " + std::to_string(spectrum.lambda_max) +
                             "]");
  const Omega om = omega(c, spectrum);
  return kappa(eff) *
         (c * true_expect - om.plus * (1.0 - 1.0 / eff.eta_plus()) - om.minus * (1.0 - eff.eta_minus()));
}

double wm_bound(const WitnessDecomposition& dec, const EfficiencyPair& eff)
{
  const double k = kappa(eff);
  double shift = 0.0;
  for (const auto& s : dec.settings)
  {
    const Omega om = omega(s.coefficient, s.spectrum);
    shift += om.plus * (1.0 - 1.0 / eff.eta_plus()) + om.minus * (1.0 - eff.eta_minus());
  }
  return dec.c0 * (1.0 - k) - k * shift;
}

double wm_bound_qubits(double c0, double abs_sum, const EfficiencyPair& eff)
{
  const double inv_plus = 1.0 / eff.eta_plus();
  return c0 - (c0 + abs_sum * (inv_plus - eff.eta_minus())) / (eff.eta_minus() + inv_plus - 1.0);
}

std::optional<double> eta_minus_threshold(double wm_measured, double c0, double abs_sum)
{
  const double scale = c0 + abs_sum;
  if (!(scale > 0.0))
    throw InvalidDecomposition("c0 + sum|c| must be positive, got " + std::to_string(scale));
  if (!(wm_measured < 0.0))
    return std::nullopt;
  return 1.0 / (1.0 - wm_measured / scale);
}

LoopholeReport analyze(const WitnessDecomposition& dec, const EfficiencyPair& eff, double wm_measured)
{
  LoopholeReport r;
  r.kappa = kappa(eff);
  double minus_sum = 0.0;
  for (const auto& s : dec.settings)
  {
    const Omega om = omega(s.coefficient, s.spectrum);
    r.omega_plus.push_back(om.plus);
    r.omega_minus.push_back(om.minus);
    minus_sum += om.minus;
  }
  r.wm_bound = wm_bound(dec, eff);
  r.certified = wm_measured < r.wm_bound;
  r.eta_minus_threshold = eta_minus_threshold(wm_measured, dec.c0, minus_sum);
  return r;
}

std::vector<double> efficiency_axis(int n)
{
  if (n < 1)
    throw InvalidEfficiency("efficiency axis needs at least one point");
  std::vector<double> axis(n);
  for (int k = 1; k <= n; ++k)
    axis[k - 1] = static_cast<double>(k) / n;
  return axis;
}

ContourGrid contour_grid(double c0, double abs_sum, const std::vector<double>& eta_plus,
                         const std::vector<double>& eta_minus)
{
  check_axis(eta_plus, "eta_plus");
  check_axis(eta_minus, "eta_minus");
  ContourGrid g{eta_plus, eta_minus, Eigen::MatrixXd(eta_minus.size(), eta_plus.size())};
  const long long rows = static_cast<long long>(eta_minus.size());
  const long long cols = static_cast<long long>(eta_plus.size());
#pragma omp parallel for schedule(static)
  for (long long r = 0; r < rows; ++r)
  {
    const double em = eta_minus[r];
    for (long long c = 0; c < cols; ++c)
    {
      const double inv_plus = 1.0 / eta_plus[c];
      g.values(r, c) = c0 - (c0 + abs_sum * (inv_plus - em)) / (em + inv_plus - 1.0);
    }
  }
  return g;
}

ContourGrid contour_grid_serial(double c0, double abs_sum, const std::vector<double>& eta_plus,
                                const std::vector<double>& eta_minus)
{
  check_axis(eta_plus, "eta_plus");
  check_axis(eta_minus, "eta_minus");
  ContourGrid g{eta_plus, eta_minus, Eigen::MatrixXd(eta_minus.size(), eta_plus.size())};
  for (std::size_t r = 0; r < eta_minus.size(); ++r)
    for (std::size_t c = 0; c < eta_plus.size(); ++c)
      g.values(r, c) = wm_bound_qubits(c0, abs_sum, EfficiencyPair(eta_plus[c], eta_minus[r]));
  return g;
}

}  // namespace witloop
