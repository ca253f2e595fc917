#ifndef TOOLS_COMMANDS_HPP
#define TOOLS_COMMANDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "model_io.hpp"

namespace simplex_mle::cli {

// exit codes: 0 ok (including failure-as-answer), 2 validation,
// 3 solver divergence, 4 internal invariant violation
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitDivergent = 3;
inline constexpr int kExitInternal = 4;

struct RunOptions {
  std::string command;
  std::string model_path;
  std::optional<std::string> other_path;   // compare
  std::optional<std::string> out_path;     // trace CSV
  std::optional<std::vector<double>> z;    // conjugate
  std::optional<long long> n;              // compare
  std::string method = "pp";               // solve: pp | ap
  double tol = 1e-7;
};

struct CommandResult {
  nlohmann::ordered_json document;
  int exit_code = kExitOk;
  std::optional<std::string> csv;  // trace payload, written to out_path
};

CommandResult run(const RunOptions& options);

/// Round to 9 significant digits; document numbers all pass through here so
/// repeated runs are byte-identical and diffs stay readable.
double snap(double v);

/// Tolerance default: SIMPLEX_MLE_TOL when set, else 1e-7.
double default_tolerance();

/// Structural check of an emitted document against the shipped result
/// schema (docs/result.schema.json).
bool validate_result_document(const nlohmann::ordered_json& doc, std::string* error = nullptr);

}  // namespace simplex_mle::cli

#endif  // TOOLS_COMMANDS_HPP
