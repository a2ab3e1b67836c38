#ifndef WITLOOP_TOOLS_CLI_IO_HPP
#define WITLOOP_TOOLS_CLI_IO_HPP

#include <string>

#include <json.hpp>

#include "witloop/adversary.hpp"
#include "witloop/decomposition.hpp"
#include "witloop/errors.hpp"
#include "witloop/loophole.hpp"
#include "witloop/operator.hpp"
#include "witloop/optimizer.hpp"

namespace witloop::cli
{

using Json = nlohmann::json;

// Malformed input (bad JSON, missing or mistyped field, unreadable or
// unwritable path). Maps to exit code 2.
class ParseError : public Error
{
public:
  using Error::Error;
};

struct OperatorFile
{
  std::string label;
  HermitianOperator op;
};

// Schema: {"label": str?, "dims": [int,...],
//          "matrix": [[{"re": float, "im": float}, ...], ...]}
OperatorFile parse_operator(const Json& doc);
OperatorFile read_operator_file(const std::string& path);
Json operator_to_json(const HermitianOperator& op, const std::string& label);

// 12 significant digits, round-half-even on exact ties (glibc printf).
std::string format12(double x);
// Value rounded to 12 significant digits; -0 becomes 0.
double round12(double x);
std::string format_fixed(double x, int decimals);

Json decomposition_to_json(const WitnessDecomposition& dec);
Json optimal_to_json(const OptimalDecomposition& opt);
Json verification_to_json(const ClosedFormVerification& v);

// Writes `text` to path, or to `out` when path is "-". Throws ParseError
// when the file cannot be written.
void write_text(const std::string& path, const std::string& text, std::ostream& out);

}  // namespace witloop::cli

#endif  // WITLOOP_TOOLS_CLI_IO_HPP
