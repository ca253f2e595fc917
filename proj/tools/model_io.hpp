#ifndef TOOLS_MODEL_IO_HPP
#define TOOLS_MODEL_IO_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "simplex_mle/simplex_mle.hpp"

namespace simplex_mle::cli {

/// A model file: alphabet, observed type (counts preferred over
/// frequencies), constraint rows with optional moment sugar, and the
/// optional estimating-equations sections.
struct ParsedModel {
  ConstraintModel model;
  TypeVector nu;
  std::vector<std::pair<double, std::vector<ConstraintRow>>> theta_table;
  std::optional<std::string> builtin;  // "qin-lawless" | "second-moment"
  std::vector<double> theta_grid;

  bool has_profile_section() const { return builtin.has_value() || !theta_table.empty(); }
};

ParsedModel parse_model(const nlohmann::json& doc);
ParsedModel load_model(const std::string& path);

/// Comma-separated or JSON-array vector flag.
std::vector<double> parse_vector_flag(const std::string& text);

}  // namespace simplex_mle::cli

#endif  // TOOLS_MODEL_IO_HPP
