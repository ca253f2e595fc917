#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using simplex_mle::cli::CommandResult;
using simplex_mle::cli::RunOptions;

int emit(const CommandResult& result, const RunOptions& options, bool stamp) {
  if (result.csv && options.out_path) {
    std::ofstream out(*options.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << *options.out_path << "\n";
      return simplex_mle::cli::kExitValidation;
    }
    out << *result.csv;
  }
  std::cout << result.document.dump(2) << "\n";
  if (stamp) {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    std::cerr << "stamp: " << buf << " simplex-mle 0.1.0\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constrained multinomial maximum likelihood on the simplex"};
  app.require_subcommand(1);

  RunOptions options;
  options.tol = simplex_mle::cli::default_tolerance();
  bool stamp = false;
  std::string z_text;
  app.add_flag("--stamp", stamp, "write a timestamp line to stderr");

  auto add_common = [&](CLI::App* sub) {
    sub->fallthrough();  // let --stamp land on the parent from either side
    sub->add_option("model", options.model_path, "model JSON file")->required();
    sub->add_option("--tol", options.tol, "solver tolerance (env SIMPLEX_MLE_TOL)");
  };

  auto* cmd_classify = app.add_subcommand("classify", "H-set / Z-set / regular verdict");
  add_common(cmd_classify);

  auto* cmd_solve = app.add_subcommand("solve", "solve the primal problem");
  add_common(cmd_solve);
  cmd_solve->add_option("--method", options.method, "pp (default) or ap");

  auto* cmd_dual = app.add_subcommand("dual", "simplified dual solve and gap diagnosis");
  add_common(cmd_dual);

  auto* cmd_conjugate = app.add_subcommand("conjugate", "convex conjugate at a point");
  add_common(cmd_conjugate);
  cmd_conjugate->add_option("--z", z_text, "evaluation point, comma separated or JSON array")
      ->required();

  auto* cmd_el = app.add_subcommand("el", "empirical likelihood inner problem");
  add_common(cmd_el);

  auto* cmd_compare = app.add_subcommand("compare", "multinomial vs empirical likelihood ratios");
  add_common(cmd_compare);
  std::string other;
  cmd_compare->add_option("--other", other, "second model JSON file")->required();
  long long n = 0;
  auto* n_opt = cmd_compare->add_option("--n", n, "sample size for the ratios");

  auto* cmd_profile = app.add_subcommand("profile", "estimating-equations profile over theta");
  add_common(cmd_profile);

  auto* cmd_trace = app.add_subcommand("trace", "perturbed-primal trace as CSV");
  add_common(cmd_trace);
  std::string out_path;
  cmd_trace->add_option("--out", out_path, "CSV output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (cmd_classify->parsed()) options.command = "classify";
  if (cmd_solve->parsed()) options.command = "solve";
  if (cmd_dual->parsed()) options.command = "dual";
  if (cmd_conjugate->parsed()) {
    options.command = "conjugate";
    try {
      options.z = simplex_mle::cli::parse_vector_flag(z_text);
    } catch (const simplex_mle::ValidationError& e) {
      std::cerr << e.what() << "\n";
      return simplex_mle::cli::kExitValidation;
    }
  }
  if (cmd_el->parsed()) options.command = "el";
  if (cmd_compare->parsed()) {
    options.command = "compare";
    options.other_path = other;
    if (n_opt->count() > 0) options.n = n;
  }
  if (cmd_profile->parsed()) options.command = "profile";
  if (cmd_trace->parsed()) {
    options.command = "trace";
    options.out_path = out_path;
  }

  return emit(simplex_mle::cli::run(options), options, stamp);
}
