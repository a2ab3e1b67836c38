#include "cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace witloop::cli
{

namespace
{

const Json& field(const Json& obj, const char* key, const std::string& where)
{
  if (!obj.is_object())
    throw ParseError(where + " must be an object");
  const auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError("missing field \"" + std::string(where.empty() ? "" : where + ".") + key + "\"");
  return *it;
}

double number(const Json& v, const std::string& where)
{
  if (!v.is_number())
    throw ParseError("field \"" + where + "\" must be a number");
  return v.get<double>();
}

Json vector_json(const Eigen::Vector3d& v)
{
  return Json::array({round12(v(0)), round12(v(1)), round12(v(2))});
}

}  // namespace

OperatorFile parse_operator(const Json& doc)
{
  if (!doc.is_object())
    throw ParseError("top level must be a JSON object");

  std::string label;
  if (const auto it = doc.find("label"); it != doc.end() && !it->is_null())
  {
    if (!it->is_string())
      throw ParseError("field \"label\" must be a string");
    label = it->get<std::string>();
  }

  const Json& dims_json = field(doc, "dims", "");
  if (!dims_json.is_array() || dims_json.empty())
    throw ParseError("field \"dims\" must be a non-empty array of integers");
  std::vector<int> dims;
  for (std::size_t i = 0; i < dims_json.size(); ++i)
  {
    if (!dims_json[i].is_number_integer())
      throw ParseError("field \"dims[" + std::to_string(i) + "]\" must be an integer");
    dims.push_back(dims_json[i].get<int>());
  }

  const Json& rows = field(doc, "matrix", "");
  if (!rows.is_array())
    throw ParseError("field \"matrix\" must be an array of rows");
  const std::size_t n = rows.size();
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
  {
    const std::string row_name = "matrix[" + std::to_string(i) + "]";
    if (!rows[i].is_array())
      throw ParseError("field \"" + row_name + "\" must be an array");
    if (rows[i].size() != n)
      throw DimensionMismatch("field \"" + row_name + "\" has " + std::to_string(rows[i].size()) +
                              " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j)
    {
      const std::string where = row_name + "[" + std::to_string(j) + "]";
      const Json& entry = rows[i][j];
      if (!entry.is_object())
        throw ParseError("field \"" + where + "\" must be an object {\"re\", \"im\"}");
      m(i, j) = Complex(number(field(entry, "re", where), where + ".re"), number(field(entry, "im", where), where + ".im"));
    }
  }

  const int side = total_dimension(dims);
  if (side != static_cast<int>(n))
    throw DimensionMismatch("field \"matrix\" is " + std::to_string(n) + "x" + std::to_string(n) +
                            " but \"dims\" multiply to " + std::to_string(side));
  return OperatorFile{label, HermitianOperator(std::move(dims), std::move(m))};
}

OperatorFile read_operator_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open " + path);
  Json doc;
  try
  {
    doc = Json::parse(in);
  }
  catch (const Json::parse_error& e)
  {
    throw ParseError(path + ": invalid JSON: " + e.what());
  }
  return parse_operator(doc);
}

Json operator_to_json(const HermitianOperator& op, const std::string& label)
{
  Json rows = Json::array();
  for (int i = 0; i < op.dimension(); ++i)
  {
    Json row = Json::array();
    for (int j = 0; j < op.dimension(); ++j)
      row.push_back({{"re", round12(op.matrix()(i, j).real())}, {"im", round12(op.matrix()(i, j).imag())}});
    rows.push_back(std::move(row));
  }
  Json doc{{"dims", op.dims()}, {"matrix", std::move(rows)}};
  if (!label.empty())
    doc["label"] = label;
  return doc;
}

std::string format12(double x)
{
  if (x == 0.0)
    x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x)
{
  const double r = std::stod(format12(x));
  return r == 0.0 ? 0.0 : r;
}

std::string format_fixed(double x, int decimals)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

Json decomposition_to_json(const WitnessDecomposition& dec)
{
  Json settings = Json::array();
  for (const auto& s : dec.settings)
    settings.push_back({{"label", s.label},
                        {"coefficient", round12(s.coefficient)},
                        {"lambda_min", round12(s.spectrum.lambda_min)},
                        {"lambda_max", round12(s.spectrum.lambda_max)}});
  return {{"c0", round12(dec.c0)},
          {"abs_sum", round12(dec.abs_sum())},
          {"setting_count", dec.settings.size()},
          {"settings", std::move(settings)}};
}

Json optimal_to_json(const OptimalDecomposition& opt)
{
  Json terms = Json::array();
  for (const auto& t : opt.schmidt_terms)
    terms.push_back({{"weight", round12(t.weight)}, {"axis_a", vector_json(t.a.axis)}, {"axis_b", vector_json(t.b.axis)}});
  auto local = [](const std::optional<LocalTerm>& l) -> Json {
    if (!l)
      return nullptr;
    return {{"weight", round12(l->weight)}, {"axis", vector_json(l->sigma.axis)}};
  };
  return {{"c0", round12(opt.c0)},
          {"abs_sum", round12(opt.abs_sum)},
          {"schmidt_terms", std::move(terms)},
          {"local_a", local(opt.local_a)},
          {"local_b", local(opt.local_b)}};
}

Json verification_to_json(const ClosedFormVerification& v)
{
  Json settings = Json::array();
  for (const auto& s : v.settings)
  {
    Json outcomes = Json::array();
    for (const auto& o : s.record.outcomes)
      outcomes.push_back({{"eigenvalue", round12(o.eigenvalue)}, {"ideal_count", o.ideal_count}});
    settings.push_back({{"label", s.label},
                        {"coefficient", round12(s.coefficient)},
                        {"true_expectation", round12(s.true_expectation)},
                        {"outcomes", std::move(outcomes)},
                        {"eps_plus", s.record.eps_plus},
                        {"eps_minus", s.record.eps_minus},
                        {"formula", round12(s.formula)},
                        {"oracle", round12(s.oracle)},
                        {"attainability_deficit", round12(s.deficit)}});
  }
  return {{"true_value", round12(v.true_value)},
          {"formula_value", round12(v.formula_value)},
          {"oracle_value", round12(v.oracle_value)},
          {"gap", round12(v.gap)},
          {"attainability_deficit", round12(v.attainability_deficit)},
          {"discretization", round12(v.discretization)},
          {"wm_bound", round12(v.wm_bound)},
          {"settings", std::move(settings)}};
}

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
  if (path == "-")
  {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw ParseError("cannot write " + path);
  file << text;
  if (!file)
    throw ParseError("failed writing " + path);
}

}  // namespace witloop::cli
