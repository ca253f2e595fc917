#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace simplex_mle::cli {

namespace {

using nlohmann::ordered_json;

std::string format9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

ordered_json jnum(double v) { return snap(v); }

ordered_json jvec(const std::vector<double>& v) {
  ordered_json arr = ordered_json::array();
  for (double x : v) arr.push_back(jnum(x));
  return arr;
}

std::string verdict_string(Verdict v) {
  switch (v) {
    case Verdict::HSet: return "h-set";
    case Verdict::ZSet: return "z-set";
    default: return "regular";
  }
}

ordered_json classification_json(const ConstraintModel& model, const Classification& cls) {
  ordered_json out;
  out["verdict"] = verdict_string(cls.verdict);
  if (cls.witness) out["witness"] = jvec(*cls.witness);
  if (cls.verdict == Verdict::ZSet) {
    ordered_json forced = ordered_json::array();
    for (std::size_t i : cls.forced_zero) forced.push_back(model.alphabet.labels[i]);
    out["forced_zero"] = forced;
  }
  return out;
}

ordered_json dual_json(const DualSolution& dual) {
  ordered_json out;
  out["status"] = dual.status == DualStatus::Converged ? "converged" : "divergent";
  if (dual.status == DualStatus::Converged) {
    out["alpha"] = jvec(dual.alpha);
    out["value"] = jnum(dual.value);
  }
  return out;
}

ordered_json gap_json(const GapDiagnosis& gap) {
  ordered_json out;
  out["gap_present"] = gap.gap_present;
  out["condition_iv"] = gap.condition_iv;
  out["extremality_residual"] = jnum(gap.extremality_residual);
  out["q_bd"] = jvec(gap.q_bd.q);
  return out;
}

ordered_json el_json(const ConstraintModel& model, const TypeVector& nu, const ELSolution& el) {
  ordered_json out;
  out["solved"] = el.solved();
  if (el.solved()) {
    auto split = active_passive_split(nu);
    ordered_json letters = ordered_json::array();
    for (std::size_t i : split.active) letters.push_back(model.alphabet.labels[i]);
    out["active_letters"] = letters;
    out["p_active"] = jvec(*el.p_active);
    out["value"] = jnum(el.value);
  } else {
    out["failure"] = el.failure == ELFailure::ConvexHull ? "convex-hull" : "zero-likelihood";
  }
  return out;
}

std::string trace_csv(const ConstraintModel& model, const PPTrace& trace) {
  std::ostringstream out;
  out << "delta";
  for (const auto& label : model.alphabet.labels) out << ",q_" << label;
  out << ",value";
  for (std::size_t h = 1; h <= model.row_count() + 1; ++h) out << ",gamma_" << h;
  out << "\n";
  for (const auto& row : trace.rows) {
    out << format9(row.delta);
    for (double v : row.q_hat) out << "," << format9(snap(v));
    out << "," << format9(snap(row.neg_dual_value));
    for (int g : row.gamma) out << "," << g;
    out << "\n";
  }
  return out.str();
}

PPOptions pp_options_for(const RunOptions& options) {
  PPOptions pp;
  pp.tol = options.tol;
  return pp;
}

CommandResult run_classify(const ParsedModel& parsed, const RunOptions& options) {
  CommandResult result;
  auto cls = classify(parsed.model, parsed.nu);
  result.document["command"] = "classify";
  result.document["model"] = options.model_path;
  result.document["classification"] = classification_json(parsed.model, cls);
  return result;
}

CommandResult run_solve(const ParsedModel& parsed, const RunOptions& options) {
  CommandResult result;
  auto cls = classify(parsed.model, parsed.nu);

  result.document["command"] = "solve";
  result.document["model"] = options.model_path;
  result.document["method"] = options.method;
  result.document["classification"] = classification_json(parsed.model, cls);

  ordered_json solution;
  if (options.method == "ap") {
    auto ap = active_passive_solve(parsed.model, parsed.nu);
    solution["q"] = jvec(ap.q.q);
    solution["value"] = jnum(ap.value);
    solution["converged"] = true;
    ordered_json extra;
    extra["kappa"] = jnum(ap.kappa);
    extra["q_passive"] = jvec(ap.q_passive);
    extra["alpha"] = jvec(ap.alpha);
    result.document["ap"] = extra;
  } else if (options.method == "pp") {
    auto pp = pp_solve(parsed.model, parsed.nu, pp_options_for(options));
    solution["q"] = jvec(pp.q.q);
    solution["value"] = jnum(pp.value);
    solution["converged"] = pp.converged;
    if (!pp.converged) result.exit_code = kExitDivergent;
  } else {
    throw ValidationError("unknown solve method '" + options.method + "'");
  }
  result.document["solution"] = solution;

  auto dual = smith_solve(parsed.model, parsed.nu);
  result.document["dual"] = dual_json(dual);
  if (dual.status == DualStatus::Converged)
    result.document["gap"] = gap_json(diagnose_gap(parsed.model, parsed.nu, dual));
  return result;
}

CommandResult run_dual(const ParsedModel& parsed, const RunOptions& options) {
  CommandResult result;
  auto cls = classify(parsed.model, parsed.nu);
  result.document["command"] = "dual";
  result.document["model"] = options.model_path;
  result.document["classification"] = classification_json(parsed.model, cls);

  auto dual = smith_solve(parsed.model, parsed.nu);
  result.document["dual"] = dual_json(dual);
  if (dual.status == DualStatus::Converged) {
    result.document["gap"] = gap_json(diagnose_gap(parsed.model, parsed.nu, dual));
  } else {
    ordered_json failure;
    failure["reason"] = verdict_string(cls.verdict);
    failure["message"] =
        "the simplified dual has no finite infimum; solve the primal with the "
        "perturbed-primal method instead";
    result.document["failure"] = failure;
    result.exit_code = kExitDivergent;
  }
  return result;
}

CommandResult run_conjugate(const ParsedModel& parsed, const RunOptions& options) {
  if (!options.z) throw ValidationError("conjugate needs --z");
  if (options.z->size() != parsed.model.letters())
    throw ValidationError("--z length must match the alphabet");
  CommandResult result;
  auto conj = conjugate(parsed.nu, *options.z);
  auto split = active_passive_split(parsed.nu);

  result.document["command"] = "conjugate";
  result.document["model"] = options.model_path;
  result.document["z"] = jvec(*options.z);
  result.document["mu_bar"] = jnum(conj.mu_bar);
  result.document["mu_hat"] = jnum(conj.mu_hat);
  result.document["value"] = jnum(conj.value);

  ordered_json sol;
  ordered_json letters = ordered_json::array();
  for (std::size_t i : split.active) letters.push_back(parsed.model.alphabet.labels[i]);
  sol["active_letters"] = letters;
  sol["q_active"] = jvec(conj.q_active);
  sol["passive_mass"] = jnum(conj.passive_mass);
  ordered_json support = ordered_json::array();
  for (std::size_t i : conj.passive_support) support.push_back(parsed.model.alphabet.labels[i]);
  sol["passive_support"] = support;
  result.document["solution_set"] = sol;
  return result;
}

CommandResult run_el(const ParsedModel& parsed, const RunOptions& options) {
  CommandResult result;
  auto el = el_solve(parsed.model, parsed.nu);
  result.document["command"] = "el";
  result.document["model"] = options.model_path;
  result.document["el"] = el_json(parsed.model, parsed.nu, el);
  return result;
}

CommandResult run_compare(const ParsedModel& parsed, const RunOptions& options) {
  if (!options.other_path) throw ValidationError("compare needs --other");
  auto other = load_model(*options.other_path);
  long long n = 0;
  if (options.n)
    n = *options.n;
  else if (parsed.nu.n)
    n = *parsed.nu.n;
  else
    throw ValidationError("compare needs --n (or counts in the model)");

  auto report = compare(parsed.model, other.model, parsed.nu, n);

  CommandResult result;
  result.document["command"] = "compare";
  result.document["model"] = options.model_path;
  result.document["other"] = *options.other_path;
  result.document["n"] = n;

  auto primal_json = [&](const PPResult& pp) {
    ordered_json out;
    out["q"] = jvec(pp.q.q);
    out["value"] = jnum(pp.value);
    return out;
  };
  result.document["primal"] = {primal_json(report.primal_1), primal_json(report.primal_2)};
  result.document["el"] = {el_json(parsed.model, parsed.nu, report.el_1),
                           el_json(other.model, parsed.nu, report.el_2)};

  auto ratio_json = [&](const LikelihoodRatio& r) {
    ordered_json out;
    out["ratio"] = r.overflow ? ordered_json(nullptr) : ordered_json(jnum(r.ratio));
    out["log_ratio"] = jnum(r.log_ratio);
    out["overflow"] = r.overflow;
    return out;
  };
  result.document["lr"] = ratio_json(report.lr);
  result.document["elr"] = report.elr ? ratio_json(*report.elr) : ordered_json(nullptr);
  result.document["discordant"] = report.discordant;
  return result;
}

CommandResult run_profile(const ParsedModel& parsed, const RunOptions& options) {
  if (!parsed.has_profile_section())
    throw ValidationError("profile needs a builtin with theta_grid or a theta_table");

  ConstraintGenerator generator;
  std::vector<double> grid;
  if (parsed.builtin) {
    generator = *parsed.builtin == "qin-lawless"
                    ? qin_lawless_generator(parsed.model.alphabet)
                    : second_moment_generator(parsed.model.alphabet);
    grid = parsed.theta_grid;
  } else {
    auto table = parsed.theta_table;
    for (const auto& [theta, rows] : table) grid.push_back(theta);
    generator = [table](double theta) {
      for (const auto& [t, rows] : table)
        if (t == theta) return rows;
      throw ValidationError("profile: theta not present in the table");
    };
  }

  auto profile = profile_estimating_equations(parsed.model.alphabet, generator, grid, parsed.nu,
                                              pp_options_for(options));

  CommandResult result;
  result.document["command"] = "profile";
  result.document["model"] = options.model_path;
  ordered_json rows = ordered_json::array();
  for (const auto& row : profile.rows) {
    ordered_json r;
    r["theta"] = jnum(row.theta);
    r["feasible"] = row.feasible;
    if (row.primal_value) r["primal_value"] = jnum(*row.primal_value);
    if (row.primal_q) r["primal_q"] = jvec(row.primal_q->q);
    if (row.el_value) r["el_value"] = jnum(*row.el_value);
    if (row.el_failure)
      r["el_failure"] =
          row.el_failure == ELFailure::ConvexHull ? "convex-hull" : "zero-likelihood";
    if (row.gap_present) r["gap_present"] = *row.gap_present;
    rows.push_back(r);
  }
  result.document["rows"] = rows;
  result.document["argmin_primal"] =
      profile.argmin_primal ? ordered_json(jnum(*profile.argmin_primal)) : ordered_json(nullptr);
  result.document["argmin_el"] =
      profile.argmin_el ? ordered_json(jnum(*profile.argmin_el)) : ordered_json(nullptr);
  return result;
}

CommandResult run_trace(const ParsedModel& parsed, const RunOptions& options) {
  if (!options.out_path) throw ValidationError("trace needs --out <csv>");
  CommandResult result;
  auto pp = pp_solve(parsed.model, parsed.nu, pp_options_for(options));
  result.csv = trace_csv(parsed.model, pp.trace);
  result.document["command"] = "trace";
  result.document["model"] = options.model_path;
  result.document["trace_reference"] = *options.out_path;
  ordered_json solution;
  solution["q"] = jvec(pp.q.q);
  solution["value"] = jnum(pp.value);
  solution["converged"] = pp.converged;
  result.document["solution"] = solution;
  if (!pp.converged) result.exit_code = kExitDivergent;
  return result;
}

}  // namespace

double snap(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format9(v).c_str(), nullptr);
}

double default_tolerance() {
  if (const char* env = std::getenv("SIMPLEX_MLE_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
  }
  return 1e-7;
}

CommandResult run(const RunOptions& options) {
  try {
    ParsedModel parsed = load_model(options.model_path);
    // model validity includes the support invariant: an empty feasible set
    // or structural zeros reject the model for every command
    if (!support_check(parsed.model).full_support())
      throw ValidationError(
          "the feasible set forces some letter to zero on all its points; "
          "drop those structural zeros from the alphabet");
    if (options.command == "classify") return run_classify(parsed, options);
    if (options.command == "solve") return run_solve(parsed, options);
    if (options.command == "dual") return run_dual(parsed, options);
    if (options.command == "conjugate") return run_conjugate(parsed, options);
    if (options.command == "el") return run_el(parsed, options);
    if (options.command == "compare") return run_compare(parsed, options);
    if (options.command == "profile") return run_profile(parsed, options);
    if (options.command == "trace") return run_trace(parsed, options);
    throw ValidationError("unknown command '" + options.command + "'");
  } catch (const ValidationError& e) {
    CommandResult result;
    result.document["error"] = {{"type", "validation"}, {"message", e.what()}};
    result.exit_code = kExitValidation;
    return result;
  } catch (const SolverError& e) {
    CommandResult result;
    result.document["error"] = {{"type", "internal"}, {"message", e.what()}};
    result.exit_code = kExitInternal;
    return result;
  } catch (const std::exception& e) {
    CommandResult result;
    result.document["error"] = {{"type", "internal"}, {"message", e.what()}};
    result.exit_code = kExitInternal;
    return result;
  }
}

bool validate_result_document(const nlohmann::ordered_json& doc, std::string* error) {
  auto fail = [&](const std::string& message) {
    if (error) *error = message;
    return false;
  };
  if (!doc.is_object()) return fail("document is not an object");
  if (doc.contains("error")) {
    const auto& e = doc["error"];
    if (!e.is_object() || !e.contains("type") || !e.contains("message"))
      return fail("error section needs type and message");
    return true;
  }
  if (!doc.contains("command") || !doc["command"].is_string())
    return fail("missing command echo");
  std::string command = doc["command"].get<std::string>();
  auto require = [&](const char* key) { return doc.contains(key); };

  if (command == "classify" || command == "solve" || command == "dual") {
    if (!require("classification") || !doc["classification"].contains("verdict"))
      return fail("missing classification.verdict");
    std::string v = doc["classification"]["verdict"].get<std::string>();
    if (v != "h-set" && v != "z-set" && v != "regular") return fail("bad verdict " + v);
  }
  if (command == "solve" || command == "trace") {
    if (!require("solution") || !doc["solution"].contains("q") ||
        !doc["solution"]["q"].is_array() || !doc["solution"].contains("value"))
      return fail("missing solution.q / solution.value");
  }
  if (command == "solve" || command == "dual") {
    if (!require("dual") || !doc["dual"].contains("status")) return fail("missing dual.status");
    std::string s = doc["dual"]["status"].get<std::string>();
    if (s != "converged" && s != "divergent") return fail("bad dual.status " + s);
    if (s == "converged" && !doc.contains("gap")) return fail("missing gap section");
  }
  if (command == "conjugate") {
    if (!require("mu_bar") || !require("mu_hat") || !require("value"))
      return fail("missing conjugate numbers");
  }
  if (command == "el") {
    if (!require("el") || !doc["el"].contains("solved")) return fail("missing el.solved");
  }
  if (command == "compare") {
    if (!require("lr") || !require("discordant")) return fail("missing lr / discordant");
  }
  if (command == "profile") {
    if (!require("rows") || !doc["rows"].is_array()) return fail("missing rows");
  }
  if (command == "trace") {
    if (!require("trace_reference")) return fail("missing trace_reference");
  }
  return true;
}

}  // namespace simplex_mle::cli
