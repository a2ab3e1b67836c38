#include "witloop/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "witloop/errors.hpp"

namespace witloop
{

long long CountRecord::ideal_total() const
{
  long long n = 0;
  for (const auto& o : outcomes)
    n += o.ideal_count;
  return n;
}

void validate(const CountRecord& rec)
{
  if (rec.outcomes.empty())
    throw InfeasibleAllocation("count record has no outcomes");
  for (const auto& o : rec.outcomes)
    if (o.ideal_count < 0)
      throw InfeasibleAllocation("negative ideal count");
  if (rec.eps_plus < 0 || rec.eps_minus < 0)
    throw InfeasibleAllocation("negative error totals");
  if (rec.eps_minus > rec.ideal_total())
    throw InfeasibleAllocation("cannot lose " + std::to_string(rec.eps_minus) + " of " +
                               std::to_string(rec.ideal_total()) + " events");
  if (rec.measured_total() <= 0)
    throw InfeasibleAllocation("no events recorded");
}

double measured_expectation(const CountRecord& rec, const Allocation& alloc)
{
  validate(rec);
  const std::size_t k = rec.outcomes.size();
  if (alloc.added.size() != k || alloc.lost.size() != k)
    throw InfeasibleAllocation("allocation has the wrong number of bins");
  long long added = 0;
  long long lost = 0;
  double numerator = 0.0;
  for (std::size_t i = 0; i < k; ++i)
  {
    if (alloc.added[i] < 0)
      throw InfeasibleAllocation("negative additional events in bin " + std::to_string(i));
    if (alloc.lost[i] < 0 || alloc.lost[i] > rec.outcomes[i].ideal_count)
      throw InfeasibleAllocation("bin " + std::to_string(i) + " cannot lose " + std::to_string(alloc.lost[i]) +
                                 " events");
    added += alloc.added[i];
    lost += alloc.lost[i];
    const long long n = rec.outcomes[i].ideal_count + alloc.added[i] - alloc.lost[i];
    numerator += static_cast<double>(n) * rec.outcomes[i].eigenvalue;
  }
  if (added != rec.eps_plus || lost != rec.eps_minus)
    throw InfeasibleAllocation("allocation totals do not match eps_plus/eps_minus");
  return numerator / static_cast<double>(rec.measured_total());
}

Extremum adversarial_extremum(const CountRecord& rec, double c, Direction direction)
{
  validate(rec);
  const std::size_t k = rec.outcomes.size();
  // Score each bin by how much an event there moves the objective in the
  // adversary's favour.
  const double sign = direction == Direction::minimize ? 1.0 : -1.0;
  std::vector<double> score(k);
  for (std::size_t i = 0; i < k; ++i)
    score[i] = sign * c * rec.outcomes[i].eigenvalue;

  Allocation alloc{std::vector<long long>(k, 0), std::vector<long long>(k, 0)};
  const auto best_add = std::min_element(score.begin(), score.end()) - score.begin();
  alloc.added[best_add] = rec.eps_plus;

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  long long remaining = rec.eps_minus;
  for (std::size_t i : order)
  {
    const long long take = std::min(remaining, rec.outcomes[i].ideal_count);
    alloc.lost[i] = take;
    remaining -= take;
    if (remaining == 0)
      break;
  }

  Extremum out;
  out.value = c == 0.0 ? 0.0 : c * measured_expectation(rec, alloc);
  out.allocation = std::move(alloc);
  return out;
}

namespace
{

double binomial(long long n, long long r)
{
  if (r < 0 || r > n)
    return 0.0;
  double out = 1.0;
  for (long long i = 1; i <= r; ++i)
    out = out * static_cast<double>(n - r + i) / static_cast<double>(i);
  return out;
}

// Number of vectors 0 <= l_i <= cap_i with sum = total.
double bounded_compositions(const std::vector<long long>& caps, long long total)
{
  std::vector<double> ways(total + 1, 0.0);
  ways[0] = 1.0;
  for (long long cap : caps)
  {
    std::vector<double> prefix(total + 2, 0.0);
    for (long long s = 0; s <= total; ++s)
      prefix[s + 1] = prefix[s] + ways[s];
    std::vector<double> next(total + 1, 0.0);
    for (long long s = 0; s <= total; ++s)
      next[s] = prefix[s + 1] - prefix[std::max(0LL, s - cap)];
    ways = std::move(next);
  }
  return ways[total];
}

void enumerate_bounded(const std::vector<long long>& caps, long long total, std::size_t bin,
                       std::vector<long long>& current, std::vector<std::vector<long long>>& out)
{
  if (bin + 1 == caps.size())
  {
    if (total <= caps[bin])
    {
      current[bin] = total;
      out.push_back(current);
    }
    return;
  }
  for (long long v = 0; v <= std::min(total, caps[bin]); ++v)
  {
    current[bin] = v;
    enumerate_bounded(caps, total - v, bin + 1, current, out);
  }
}

std::vector<std::vector<long long>> all_bounded(const std::vector<long long>& caps, long long total)
{
  std::vector<std::vector<long long>> out;
  std::vector<long long> current(caps.size(), 0);
  enumerate_bounded(caps, total, 0, current, out);
  return out;
}

}  // namespace

double allocation_lattice_size(const CountRecord& rec)
{
  validate(rec);
  const long long k = static_cast<long long>(rec.outcomes.size());
  std::vector<long long> caps;
  for (const auto& o : rec.outcomes)
    caps.push_back(o.ideal_count);
  return binomial(rec.eps_plus + k - 1, k - 1) * bounded_compositions(caps, rec.eps_minus);
}

Extremum adversarial_extremum_enumerate(const CountRecord& rec, double c, Direction direction,
                                        double max_points)
{
  const double size = allocation_lattice_size(rec);
  if (size > max_points)
    throw std::length_error("allocation lattice has " + std::to_string(size) + " points");

  std::vector<long long> lost_caps;
  for (const auto& o : rec.outcomes)
    lost_caps.push_back(o.ideal_count);
  const auto lost_options = all_bounded(lost_caps, rec.eps_minus);
  const auto added_options =
    all_bounded(std::vector<long long>(rec.outcomes.size(), rec.eps_plus), rec.eps_plus);

  std::optional<Extremum> best;
  for (const auto& lost : lost_options)
  {
    for (const auto& added : added_options)
    {
      Allocation alloc{added, lost};
      const double value = c * measured_expectation(rec, alloc);
      const bool better = !best || (direction == Direction::minimize ? value < best->value : value > best->value);
      if (better)
        best = Extremum{value, std::move(alloc)};
    }
  }
  return *best;
}

std::vector<long long> largest_remainder_counts(std::span<const double> probabilities, long long total)
{
  const std::size_t k = probabilities.size();
  std::vector<double> p(k);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i)
  {
    p[i] = std::max(0.0, probabilities[i]);
    sum += p[i];
  }
  if (!(sum > 0.0))
    throw InvalidState("outcome probabilities sum to zero");

  std::vector<long long> counts(k);
  std::vector<double> remainder(k);
  long long assigned = 0;
  for (std::size_t i = 0; i < k; ++i)
  {
    const double exact = static_cast<double>(total) * p[i] / sum;
    counts[i] = static_cast<long long>(std::floor(exact));
    remainder[i] = exact - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t j = 0; assigned < total; j = (j + 1) % k)
  {
    ++counts[order[j]];
    ++assigned;
  }
  return counts;
}

void require_density_matrix(const HermitianOperator& rho, double tol)
{
  const double tr = rho.trace();
  if (std::abs(tr - 1.0) > tol)
    throw InvalidState("state trace is " + std::to_string(tr) + ", expected 1");
  const Spectrum spec = hermitian_eigenvalues(rho);
  if (spec.lambda_min < -tol)
    throw InvalidState("state has negative eigenvalue " + std::to_string(spec.lambda_min));
}

namespace
{

constexpr double kEigenvalueMerge = 1e-9;

// Outcome distribution of one setting: distinct eigenvalues and their
// Born probabilities.
struct OutcomeDistribution
{
  std::vector<double> eigenvalues;
  std::vector<double> probabilities;
  double expectation = 0.0;
};

OutcomeDistribution born_distribution(const LocalSetting& s, const HermitianOperator& state)
{
  const CMatrix op = s.assembled();
  const EigenSystem es = hermitian_eigensystem(HermitianOperator(state.dims(), op));
  OutcomeDistribution d;
  const auto& ev = es.spectrum.eigenvalues;
  for (std::size_t k = 0; k < ev.size(); ++k)
  {
    const CVector v = es.vectors.col(static_cast<Eigen::Index>(k));
    const double p = v.dot(state.matrix() * v).real();
    if (d.eigenvalues.empty() || ev[k] - d.eigenvalues.back() > kEigenvalueMerge)
    {
      d.eigenvalues.push_back(ev[k]);
      d.probabilities.push_back(p);
    }
    else
    {
      d.probabilities.back() += p;
    }
  }
  d.expectation = state.matrix().cwiseProduct(op.transpose()).sum().real();
  return d;
}

OutcomeDistribution two_outcome_distribution(const LocalSetting& s, double expectation)
{
  const double lo = s.spectrum.lambda_min;
  const double hi = s.spectrum.lambda_max;
  for (double e : s.spectrum.eigenvalues)
    if (std::abs(e - lo) > kEigenvalueMerge && std::abs(e - hi) > kEigenvalueMerge)
      throw OutOfSpectrumRange("setting " + s.label +
                               " has more than two outcomes; pass the state instead of expectations");
  if (hi - lo <= kEigenvalueMerge)
    return {{lo}, {1.0}, lo};
  if (expectation < lo - kEigenvalueMerge || expectation > hi + kEigenvalueMerge)
    throw OutOfSpectrumRange("expectation of " + s.label + " outside its spectrum");
  const double p_hi = std::clamp((expectation - lo) / (hi - lo), 0.0, 1.0);
  return {{lo, hi}, {1.0 - p_hi, p_hi}, expectation};
}

void verify_setting(const LocalSetting& s, const OutcomeDistribution& d, const EfficiencyPair& eff,
                    long long eps_plus, long long eps_minus, long long n_ideal, SettingVerification& v)
{
  v.label = s.label;
  v.coefficient = s.coefficient;
  v.true_expectation = d.expectation;

  const auto counts = largest_remainder_counts(d.probabilities, n_ideal);
  for (std::size_t i = 0; i < counts.size(); ++i)
    v.record.outcomes.push_back({d.eigenvalues[i], counts[i]});
  v.record.eps_plus = eps_plus;
  v.record.eps_minus = eps_minus;

  v.formula = worst_case_setting_expectation(s.coefficient, s.spectrum, d.expectation, eff);
  v.oracle = adversarial_extremum(v.record, s.coefficient, Direction::minimize).value;

  // Same integer totals, but every lost event taken at the extremal bin
  // regardless of its population.
  const Omega om = omega(s.coefficient, s.spectrum);
  double ideal_sum = 0.0;
  for (const auto& o : v.record.outcomes)
    ideal_sum += static_cast<double>(o.ideal_count) * s.coefficient * o.eigenvalue;
  v.unconstrained =
    (ideal_sum + static_cast<double>(eps_plus) * om.plus - static_cast<double>(eps_minus) * om.minus) /
    static_cast<double>(v.record.measured_total());
  v.deficit = v.oracle - v.unconstrained;
}

ClosedFormVerification run_verification(const WitnessDecomposition& dec,
                                        const std::vector<OutcomeDistribution>& dists, const EfficiencyPair& eff,
                                        long long n_ideal)
{
  if (n_ideal <= 0)
    throw InfeasibleAllocation("need a positive number of ideal events per setting");
  const long long eps_minus = std::llround((1.0 - eff.eta_minus()) * static_cast<double>(n_ideal));
  const long long eps_plus = std::llround(static_cast<double>(n_ideal) * (1.0 / eff.eta_plus() - 1.0));

  ClosedFormVerification out;
  out.settings.resize(dec.settings.size());
  std::vector<std::exception_ptr> failures(dec.settings.size());
  const long long n = static_cast<long long>(dec.settings.size());

#pragma omp parallel for schedule(dynamic)
  for (long long a = 0; a < n; ++a)
  {
    try
    {
      verify_setting(dec.settings[a], dists[a], eff, eps_plus, eps_minus, n_ideal, out.settings[a]);
    }
    catch (...)
    {
      failures[a] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f)
      std::rethrow_exception(f);

  out.true_value = dec.c0;
  out.formula_value = dec.c0;
  out.oracle_value = dec.c0;
  for (const auto& v : out.settings)
  {
    out.true_value += v.coefficient * v.true_expectation;
    out.formula_value += v.formula;
    out.oracle_value += v.oracle;
    out.attainability_deficit += v.deficit;
  }
  out.gap = out.oracle_value - out.formula_value;
  out.discretization = out.gap - out.attainability_deficit;
  out.wm_bound = wm_bound(dec, eff);
  return out;
}

}  // namespace

ClosedFormVerification verify_closed_form(const WitnessDecomposition& dec, const HermitianOperator& state,
                                          const EfficiencyPair& eff, long long n_ideal)
{
  if (state.dims() != dec.dims)
    throw DimensionMismatch("state dims do not match the witness dims");
  require_density_matrix(state);
  std::vector<OutcomeDistribution> dists;
  for (const auto& s : dec.settings)
    dists.push_back(born_distribution(s, state));
  return run_verification(dec, dists, eff, n_ideal);
}

ClosedFormVerification verify_closed_form(const WitnessDecomposition& dec,
                                          std::span<const double> state_expectations,
                                          const EfficiencyPair& eff, long long n_ideal)
{
  if (state_expectations.size() != dec.settings.size())
    throw DimensionMismatch("need one expectation per setting");
  std::vector<OutcomeDistribution> dists;
  for (std::size_t a = 0; a < dec.settings.size(); ++a)
    dists.push_back(two_outcome_distribution(dec.settings[a], state_expectations[a]));
  return run_verification(dec, dists, eff, n_ideal);
}

}  // namespace witloop
