#include "model_io.hpp"

#include <fstream>
#include <sstream>

namespace simplex_mle::cli {

namespace {

using nlohmann::json;

Alphabet parse_alphabet(const json& doc) {
  if (!doc.contains("alphabet") || !doc["alphabet"].is_array())
    throw ValidationError("model: 'alphabet' must be an array");
  const auto& arr = doc["alphabet"];
  bool all_numeric = true;
  for (const auto& item : arr)
    if (!item.is_number()) all_numeric = false;
  if (all_numeric) {
    std::vector<double> values;
    for (const auto& item : arr) values.push_back(item.get<double>());
    return Alphabet(values);
  }
  std::vector<std::string> labels;
  for (const auto& item : arr) {
    if (item.is_string()) {
      const auto& text = item.get<std::string>();
      if (text.find_first_of(",\r\n") != std::string::npos)
        throw ValidationError("alphabet labels must not contain commas or line breaks");
      labels.push_back(text);
    } else if (item.is_number()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.9g", item.get<double>());
      labels.emplace_back(buf);
    } else {
      throw ValidationError("model: alphabet labels must be strings or numbers");
    }
  }
  return Alphabet(std::move(labels));
}

TypeVector parse_type(const json& doc, std::size_t m) {
  if (!doc.contains("type") || !doc["type"].is_object())
    throw ValidationError("model: 'type' must be an object with counts or frequencies");
  const auto& type = doc["type"];
  if (type.contains("counts")) {
    std::vector<long long> counts;
    for (const auto& item : type["counts"]) {
      if (!item.is_number_integer() || item.get<long long>() < 0)
        throw ValidationError("model: counts must be nonnegative integers");
      counts.push_back(item.get<long long>());
    }
    if (counts.size() != m) throw ValidationError("model: counts length must match the alphabet");
    return TypeVector::from_counts(counts);
  }
  if (type.contains("frequencies")) {
    std::vector<double> nu;
    for (const auto& item : type["frequencies"]) nu.push_back(item.get<double>());
    if (nu.size() != m)
      throw ValidationError("model: frequencies length must match the alphabet");
    std::optional<long long> n;
    if (type.contains("n")) n = type["n"].get<long long>();
    return TypeVector(std::move(nu), n);
  }
  throw ValidationError("model: type needs 'counts' or 'frequencies'");
}

RowKind parse_kind(const json& row) {
  std::string kind = row.value("kind", std::string("eq"));
  if (kind == "eq") return RowKind::Equality;
  if (kind == "le") return RowKind::Inequality;
  throw ValidationError("model: constraint kind must be 'eq' or 'le'");
}

ConstraintRow parse_row(const json& row, const Alphabet& alphabet) {
  if (!row.is_object()) throw ValidationError("model: each constraint must be an object");
  if (row.contains("moment"))
    return moment_row(alphabet, row["moment"].get<int>(), row.value("rhs", 0.0),
                      parse_kind(row));
  if (!row.contains("u")) throw ValidationError("model: constraint needs 'u' or 'moment'");
  ConstraintRow out;
  for (const auto& item : row["u"]) out.u.push_back(item.get<double>());
  if (out.u.size() != alphabet.size())
    throw ValidationError("model: constraint vector length must match the alphabet");
  out.rhs = row.value("rhs", 0.0);
  out.kind = parse_kind(row);
  return out;
}

}  // namespace

ParsedModel parse_model(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("model: top level must be an object");
  Alphabet alphabet = parse_alphabet(doc);
  TypeVector nu = parse_type(doc, alphabet.size());

  std::vector<ConstraintRow> rows;
  if (doc.contains("constraints")) {
    if (!doc["constraints"].is_array())
      throw ValidationError("model: 'constraints' must be an array");
    for (const auto& row : doc["constraints"]) rows.push_back(parse_row(row, alphabet));
  }

  ParsedModel parsed{ConstraintModel(alphabet, std::move(rows)), std::move(nu), {}, {}, {}};

  if (doc.contains("theta_table")) {
    for (const auto& entry : doc["theta_table"]) {
      if (!entry.contains("theta") || !entry.contains("constraints"))
        throw ValidationError("model: theta_table entries need 'theta' and 'constraints'");
      std::vector<ConstraintRow> theta_rows;
      for (const auto& row : entry["constraints"]) theta_rows.push_back(parse_row(row, alphabet));
      parsed.theta_table.emplace_back(entry["theta"].get<double>(), std::move(theta_rows));
    }
  }
  if (doc.contains("builtin")) {
    std::string name = doc["builtin"].get<std::string>();
    if (name != "qin-lawless" && name != "second-moment")
      throw ValidationError("model: unknown builtin '" + name + "'");
    parsed.builtin = name;
  }
  if (doc.contains("theta_grid"))
    for (const auto& item : doc["theta_grid"]) parsed.theta_grid.push_back(item.get<double>());
  if (parsed.builtin && parsed.theta_grid.empty())
    throw ValidationError("model: a builtin needs a theta_grid");
  return parsed;
}

ParsedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("model is not valid JSON: ") + e.what());
  }
  return parse_model(doc);
}

std::vector<double> parse_vector_flag(const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.front() == '[') {
    try {
      auto arr = nlohmann::json::parse(body);
      std::vector<double> out;
      for (const auto& item : arr) out.push_back(item.get<double>());
      return out;
    } catch (const nlohmann::json::exception&) {
      throw ValidationError("vector flag is not a valid JSON array");
    }
  }
  std::vector<double> out;
  std::stringstream stream(body);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str()) throw ValidationError("vector flag has a non-numeric entry");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("vector flag is empty");
  return out;
}

}  // namespace simplex_mle::cli
