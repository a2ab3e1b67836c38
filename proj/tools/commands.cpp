#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli_io.hpp"
#include "witloop/random.hpp"
#include "witloop/witnesses.hpp"

namespace witloop::cli
{

namespace
{

class NothingToCertify : public Error
{
public:
  using Error::Error;
};

// Reference value for the scan: threshold of the optimal Bell-state witness.
constexpr double kConjecturedBound = 2.0 / 3.0;

struct Context
{
  std::ostream& out;
  std::ostream& err;
  bool color;

  std::string verdict(bool good, const std::string& text) const
  {
    if (!color)
      return text;
    return (good ? "\033[32m" : "\033[31m") + text + "\033[0m";
  }
};

struct ChosenDecomposition
{
  std::string kind;
  WitnessDecomposition dec;
  std::optional<OptimalDecomposition> optimal;
};

bool all_qubits(const std::vector<int>& dims)
{
  return std::all_of(dims.begin(), dims.end(), [](int d) { return d == 2; });
}

// "auto" picks the optimal two-qubit decomposition when it applies, the
// Pauli basis for other qubit witnesses and Gell-Mann otherwise.
ChosenDecomposition choose_decomposition(const HermitianOperator& w, std::string kind)
{
  const bool two_qubit = w.dims() == std::vector<int>{2, 2};
  if (kind == "auto")
    kind = two_qubit ? "optimal" : (all_qubits(w.dims()) ? "pauli" : "gellmann");

  ChosenDecomposition c;
  c.kind = kind;
  if (kind == "optimal")
  {
    c.optimal = optimize_two_qubit(w);
    c.dec = c.optimal->as_decomposition();
  }
  else
  {
    c.dec = decompose(w, bases_for(w.dims(), kind == "pauli" ? BasisKind::pauli : BasisKind::gellmann));
  }
  return c;
}

double omega_minus_sum(const WitnessDecomposition& dec)
{
  double total = 0.0;
  for (const auto& s : dec.settings)
    total += omega(s.coefficient, s.spectrum).minus;
  return total;
}

void print_threshold(const Context& ctx, double threshold)
{
  ctx.out << "eta_minus_threshold: " << format12(threshold) << "\n";
  ctx.out << "eta_minus_threshold_4dp: " << format_fixed(threshold, 4) << "\n";
  ctx.out << "certified when eta_minus > " << format_fixed(threshold, 4) << " (eta_plus = 1)\n";
}

// ---------------------------------------------------------------- decompose

struct DecomposeOptions
{
  std::string input;
  std::string basis = "auto";
  std::string output;
  std::optional<double> wm;
  std::optional<double> eta_plus;
  std::optional<double> eta_minus;
};

int cmd_decompose(const DecomposeOptions& opt, const Context& ctx)
{
  const OperatorFile file = read_operator_file(opt.input);
  const HermitianOperator& w = file.op;

  std::string basis = opt.basis;
  if (basis == "auto")
    basis = all_qubits(w.dims()) ? "pauli" : "gellmann";
  const WitnessDecomposition dec =
    decompose(w, bases_for(w.dims(), basis == "pauli" ? BasisKind::pauli : BasisKind::gellmann));

  Json report{{"label", file.label}, {"dims", w.dims()}, {"basis", basis}, {"decomposition", decomposition_to_json(dec)}};

  std::optional<OptimalDecomposition> optimal;
  if (w.dims() == std::vector<int>{2, 2})
  {
    optimal = optimize_two_qubit(w);
    report["optimal"] = optimal_to_json(*optimal);
  }
  const WitnessDecomposition best = optimal ? optimal->as_decomposition() : dec;

  const bool json_to_stdout = opt.output == "-";
  std::ostream& summary = json_to_stdout ? ctx.err : ctx.out;
  if (!file.label.empty())
    summary << "label: " << file.label << "\n";
  summary << "basis: " << basis << "\n";
  summary << "c0: " << format12(dec.c0) << "\n";
  summary << "settings: " << dec.settings.size() << "\n";
  summary << "abs_sum: " << format12(dec.abs_sum()) << "\n";
  if (optimal)
    summary << "optimal_abs_sum: " << format12(optimal->abs_sum) << "\n";

  if (opt.wm)
  {
    const auto threshold = eta_minus_threshold(*opt.wm, best.c0, omega_minus_sum(best));
    Json t{{"wm_measured", round12(*opt.wm)}, {"decomposition_used", optimal ? "optimal" : basis}};
    if (threshold)
    {
      t["eta_minus_threshold"] = round12(*threshold);
      t["eta_minus_threshold_4dp"] = format_fixed(*threshold, 4);
      t["certifiable"] = *threshold < 1.0;
      summary << "eta_minus_threshold: " << format12(*threshold) << " (" << format_fixed(*threshold, 4) << ")\n";
    }
    else
    {
      t["eta_minus_threshold"] = nullptr;
      t["certifiable"] = false;
      summary << "eta_minus_threshold: not certifiable (<W>_m >= 0)\n";
    }
    report["threshold"] = std::move(t);

    if (opt.eta_plus || opt.eta_minus)
    {
      const EfficiencyPair eff(opt.eta_plus.value_or(1.0), opt.eta_minus.value_or(1.0));
      const LoopholeReport lr = analyze(best, eff, *opt.wm);
      report["certification"] = {{"eta_plus", round12(eff.eta_plus())},
                                 {"eta_minus", round12(eff.eta_minus())},
                                 {"kappa", round12(lr.kappa)},
                                 {"wm_bound", round12(lr.wm_bound)},
                                 {"certified", lr.certified}};
      summary << "wm_bound: " << format12(lr.wm_bound) << "\n";
      summary << "certified: " << ctx.verdict(lr.certified, lr.certified ? "yes" : "no") << "\n";
    }
  }

  if (!opt.output.empty())
    write_text(opt.output, report.dump(2) + "\n", ctx.out);
  return kExitOk;
}

// ---------------------------------------------------------------- threshold

struct ThresholdOptions
{
  double wm = 0.0;
  std::optional<double> c0;
  std::optional<double> abs_sum;
  std::string input;
  std::optional<double> eta_plus;
  std::optional<double> eta_minus;
  std::string output;
};

int cmd_threshold(const ThresholdOptions& opt, const Context& ctx)
{
  const bool direct = opt.c0 || opt.abs_sum;
  if (direct == !opt.input.empty())
    throw ParseError("give either --c0 and --abs-sum, or --input");
  if (direct && !(opt.c0 && opt.abs_sum))
    throw ParseError("--c0 and --abs-sum must be given together");
  if (opt.eta_plus && !opt.eta_minus)
    throw ParseError("--eta-plus needs --eta-minus");

  double c0 = 0.0;
  double minus_sum = 0.0;
  std::optional<WitnessDecomposition> dec;
  std::string source = "direct";
  if (direct)
  {
    c0 = *opt.c0;
    minus_sum = *opt.abs_sum;
    if (minus_sum < 0.0)
      throw ParseError("--abs-sum must be nonnegative");
  }
  else
  {
    const OperatorFile file = read_operator_file(opt.input);
    ChosenDecomposition chosen = choose_decomposition(file.op, "auto");
    source = chosen.kind;
    c0 = chosen.dec.c0;
    minus_sum = omega_minus_sum(chosen.dec);
    dec = std::move(chosen.dec);
  }

  Json report{{"wm_measured", round12(opt.wm)}, {"c0", round12(c0)}, {"abs_sum", round12(minus_sum)}, {"decomposition", source}};
  ctx.out << "c0: " << format12(c0) << "\n";
  ctx.out << "abs_sum: " << format12(minus_sum) << "\n";

  const auto threshold = eta_minus_threshold(opt.wm, c0, minus_sum);
  if (!threshold)
  {
    ctx.out << ctx.verdict(false, "not certifiable") << ": <W>_m = " << format12(opt.wm)
            << " >= 0, nothing to certify\n";
    throw NothingToCertify("measured witness value is not negative");
  }
  print_threshold(ctx, *threshold);
  report["eta_minus_threshold"] = round12(*threshold);
  report["eta_minus_threshold_4dp"] = format_fixed(*threshold, 4);

  if (opt.eta_minus)
  {
    const EfficiencyPair eff(opt.eta_plus.value_or(1.0), *opt.eta_minus);
    const double bound = dec ? wm_bound(*dec, eff) : wm_bound_qubits(c0, minus_sum, eff);
    const bool certified = opt.wm < bound;
    ctx.out << "eta_plus: " << format12(eff.eta_plus()) << "\n";
    ctx.out << "eta_minus: " << format12(eff.eta_minus()) << "\n";
    ctx.out << "wm_bound: " << format12(bound) << "\n";
    ctx.out << "certified: " << ctx.verdict(certified, certified ? "yes" : "no") << "\n";
    report["eta_plus"] = round12(eff.eta_plus());
    report["eta_minus"] = round12(eff.eta_minus());
    report["wm_bound"] = round12(bound);
    report["certified"] = certified;
  }
  if (!opt.output.empty())
    write_text(opt.output, report.dump(2) + "\n", ctx.out);
  return kExitOk;
}

// ---------------------------------------------------------------- contour

struct ContourOptions
{
  double c0 = 0.25;
  double abs_sum = 0.75;
  int grid = 20;
  std::string output = "-";
};

int cmd_contour(const ContourOptions& opt, const Context& ctx)
{
  if (opt.grid < 2)
    throw ParseError("--grid must be at least 2");
  const auto axis = efficiency_axis(opt.grid);
  const ContourGrid g = contour_grid(opt.c0, opt.abs_sum, axis, axis);

  std::ostringstream csv;
  csv << "eta_minus\\eta_plus";
  for (double ep : g.eta_plus)
    csv << "," << format12(ep);
  csv << "\n";
  for (std::size_t r = 0; r < g.eta_minus.size(); ++r)
  {
    csv << format12(g.eta_minus[r]);
    for (std::size_t c = 0; c < g.eta_plus.size(); ++c)
      csv << "," << format12(g.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
    csv << "\n";
  }
  write_text(opt.output, csv.str(), ctx.out);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions
{
  std::string input;
  std::string state;
  double eta_minus = 1.0;
  double eta_plus = 1.0;
  long long shots = 10000;
  std::string basis = "auto";
  std::string output;
};

int cmd_verify(const VerifyOptions& opt, const Context& ctx)
{
  if (opt.shots <= 0)
    throw ParseError("--shots must be positive");
  const EfficiencyPair eff(opt.eta_plus, opt.eta_minus);
  const OperatorFile witness = read_operator_file(opt.input);
  const OperatorFile state = read_operator_file(opt.state);
  if (state.op.dims() != witness.op.dims())
    throw DimensionMismatch("state dims do not match witness dims");
  require_density_matrix(state.op);

  const ChosenDecomposition chosen = choose_decomposition(witness.op, opt.basis);
  const ClosedFormVerification v = verify_closed_form(chosen.dec, state.op, eff, opt.shots);

  std::ostream& summary = opt.output == "-" ? ctx.err : ctx.out;
  summary << "decomposition: " << chosen.kind << "\n";
  summary << "true_value: " << format12(v.true_value) << "\n";
  summary << "formula_worst_case: " << format12(v.formula_value) << "\n";
  summary << "oracle_worst_case: " << format12(v.oracle_value) << "\n";
  summary << "gap: " << format12(v.gap) << "\n";
  summary << "attainability_deficit: " << format12(v.attainability_deficit) << "\n";
  summary << "discretization: " << format12(v.discretization) << "\n";
  summary << "wm_bound: " << format12(v.wm_bound) << "\n";
  if (v.true_value >= 0.0)
    summary << "note: <W>_t >= 0, no entanglement to certify\n";
  else
  {
    const bool certified = v.oracle_value < v.wm_bound;
    summary << "worst-case measurement certifies: " << ctx.verdict(certified, certified ? "yes" : "no") << "\n";
  }

  if (!opt.output.empty())
  {
    Json report = verification_to_json(v);
    report["decomposition"] = chosen.kind;
    report["eta_plus"] = round12(eff.eta_plus());
    report["eta_minus"] = round12(eff.eta_minus());
    report["shots"] = opt.shots;
    write_text(opt.output, report.dump(2) + "\n", ctx.out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- conjecture-scan

struct ScanOptions
{
  int samples = 1000;
  std::uint64_t seed = 1;
  int product_samples = 500;
  std::string output;
};

int cmd_conjecture_scan(const ScanOptions& opt, const Context& ctx)
{
  if (opt.samples < 1)
    throw ParseError("--samples must be at least 1");
  if (opt.product_samples < 1)
    throw ParseError("--product-samples must be at least 1");

  Rng rng(opt.seed);
  double best = std::numeric_limits<double>::infinity();
  Json argmin;
  int accepted = 0;
  int rejected = 0;
  const int max_attempts = 100 * opt.samples;
  for (int attempt = 0; accepted < opt.samples && attempt < max_attempts; ++attempt)
  {
    const HermitianOperator w = random_two_qubit_witness(rng);
    const WitnessValidation check = validate_witness(w, opt.product_samples, rng());
    if (!check.has_negative_eigenvalue || check.min_product_value < -1e-9)
    {
      ++rejected;
      continue;
    }
    ++accepted;
    const OptimalDecomposition optimal = optimize_two_qubit(w);
    const auto threshold = eta_minus_threshold(check.lambda_min, optimal.c0, optimal.abs_sum);
    if (threshold && *threshold < best)
    {
      best = *threshold;
      argmin = {{"sample", accepted - 1},
                {"lambda_min", round12(check.lambda_min)},
                {"c0", round12(optimal.c0)},
                {"abs_sum", round12(optimal.abs_sum)},
                {"threshold", round12(*threshold)},
                {"witness", operator_to_json(w, "scan minimum")}};
    }
  }

  const HermitianOperator reference = phi_plus_witness();
  const OptimalDecomposition ref_opt = optimize_two_qubit(reference);
  const double ref_lambda = hermitian_eigenvalues(reference).lambda_min;
  const double ref_threshold = eta_minus_threshold(ref_lambda, ref_opt.c0, ref_opt.abs_sum).value();
  const bool counterexample = accepted > 0 && best < kConjecturedBound - 1e-9;

  Json report{{"note", "conjecture exploration, not a proof"},
              {"conjectured_bound", round12(kConjecturedBound)},
              {"samples", accepted},
              {"rejected", rejected},
              {"seed", opt.seed},
              {"product_samples", opt.product_samples},
              {"min_threshold", accepted > 0 ? Json(round12(best)) : Json(nullptr)},
              {"argmin", argmin},
              {"counterexample", counterexample},
              {"reference_phi_plus",
               {{"lambda_min", round12(ref_lambda)}, {"abs_sum", round12(ref_opt.abs_sum)}, {"threshold", round12(ref_threshold)}}}};

  std::ostream& summary = opt.output == "-" ? ctx.err : ctx.out;
  summary << "conjecture exploration, not a proof\n";
  summary << "witnesses scanned: " << accepted << " (rejected " << rejected << ")\n";
  summary << "reference W_phi+ threshold: " << format12(ref_threshold) << "\n";
  if (accepted > 0)
    summary << "minimum threshold: " << format12(best) << " (" << format_fixed(best, 4) << ")\n";
  if (counterexample)
    summary << ctx.verdict(false, "COUNTEREXAMPLE") << ": a witness needs only eta_minus > " << format12(best)
            << ", below 2/3\n";
  else
    summary << "no witness below 2/3 found\n";

  if (!opt.output.empty())
    write_text(opt.output, report.dump(2) + "\n", ctx.out);
  return kExitOk;
}

int exit_code_for(const std::exception& e)
{
  if (dynamic_cast<const NothingToCertify*>(&e))
    return kExitNothing;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidEfficiency*>(&e))
    return kExitInput;
  return kExitSemantic;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color)
{
  CLI::App app{"Detector-efficiency loophole analysis for entanglement witnesses", "witloop"};
  app.require_subcommand(1);

  DecomposeOptions dopt;
  auto* dec_cmd = app.add_subcommand("decompose", "Expand a witness in a local operator basis");
  dec_cmd->add_option("input", dopt.input, "Witness JSON file")->required();
  dec_cmd->add_option("--basis", dopt.basis, "pauli, gellmann or auto")
    ->check(CLI::IsMember({"auto", "pauli", "gellmann"}));
  dec_cmd->add_option("--output", dopt.output, "Write the JSON report here (- for stdout)");
  dec_cmd->add_option("--wm", dopt.wm, "Measured witness value");
  dec_cmd->add_option("--eta-plus", dopt.eta_plus, "Additional-events efficiency");
  dec_cmd->add_option("--eta-minus", dopt.eta_minus, "Lost-events efficiency");

  ThresholdOptions topt;
  auto* thr_cmd = app.add_subcommand("threshold", "Minimal detector efficiency for a measured value");
  thr_cmd->add_option("--wm", topt.wm, "Measured witness value")->required();
  thr_cmd->add_option("--c0", topt.c0, "Identity coefficient");
  thr_cmd->add_option("--abs-sum", topt.abs_sum, "Sum of |c_alpha| over measured settings");
  thr_cmd->add_option("--input", topt.input, "Witness JSON file (decomposed and optimized)");
  thr_cmd->add_option("--eta-plus", topt.eta_plus, "Additional-events efficiency");
  thr_cmd->add_option("--eta-minus", topt.eta_minus, "Lost-events efficiency");
  thr_cmd->add_option("--output", topt.output, "Write a JSON report here (- for stdout)");

  ContourOptions copt;
  auto* con_cmd = app.add_subcommand("contour", "Grid of the maximal certifying <W>_m over (eta_plus, eta_minus)");
  con_cmd->add_option("--c0", copt.c0, "Identity coefficient");
  con_cmd->add_option("--abs-sum", copt.abs_sum, "Sum of |c_alpha|");
  con_cmd->add_option("--grid", copt.grid, "Points per axis (k/N, k = 1..N)");
  con_cmd->add_option("--output", copt.output, "CSV path (- for stdout)");

  VerifyOptions vopt;
  auto* ver_cmd = app.add_subcommand("verify", "Compare the closed-form worst case with a count-level adversary");
  ver_cmd->add_option("--input", vopt.input, "Witness JSON file")->required();
  ver_cmd->add_option("--state", vopt.state, "Density matrix JSON file")->required();
  ver_cmd->add_option("--eta-minus", vopt.eta_minus, "Lost-events efficiency")->required();
  ver_cmd->add_option("--eta-plus", vopt.eta_plus, "Additional-events efficiency");
  ver_cmd->add_option("--shots", vopt.shots, "Ideal events per setting");
  ver_cmd->add_option("--basis", vopt.basis, "auto, optimal, pauli or gellmann")
    ->check(CLI::IsMember({"auto", "optimal", "pauli", "gellmann"}));
  ver_cmd->add_option("--output", vopt.output, "Write a JSON report here (- for stdout)");

  ScanOptions sopt;
  auto* scan_cmd = app.add_subcommand("conjecture-scan", "Search random two-qubit witnesses for thresholds below 2/3");
  scan_cmd->add_option("--samples", sopt.samples, "Number of witnesses");
  scan_cmd->add_option("--seed", sopt.seed, "RNG seed");
  scan_cmd->add_option("--product-samples", sopt.product_samples, "Product states per witness screen");
  scan_cmd->add_option("--output", sopt.output, "Write the JSON report here (- for stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const Context ctx{out, err, color};
  try
  {
    if (*dec_cmd)
      return cmd_decompose(dopt, ctx);
    if (*thr_cmd)
      return cmd_threshold(topt, ctx);
    if (*con_cmd)
      return cmd_contour(copt, ctx);
    if (*ver_cmd)
      return cmd_verify(vopt, ctx);
    if (*scan_cmd)
      return cmd_conjecture_scan(sopt, ctx);
  }
  catch (const std::exception& e)
  {
    const int code = exit_code_for(e);
    if (code != kExitNothing)
      err << "error: " << e.what() << "\n";
    return code;
  }
  return kExitInput;
}

}  // namespace witloop::cli
