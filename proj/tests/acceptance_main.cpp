// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "commands.hpp"
#include "model_io.hpp"
#include "simplex_mle/simplex_mle.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace simplex_mle;

namespace {

struct Harness {
  int failures = 0;
  int index = 0;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      ++local_failures;
      if (detail.empty()) detail = what;
    }
  }
  void near(double actual, double expected, double tolerance, const std::string& what) {
    check(std::abs(actual - expected) <= tolerance,
          what + " = " + std::to_string(actual) + ", want " + std::to_string(expected));
  }
  void run(const std::string& name, const std::function<void(Harness&)>& body) {
    local_failures = 0;
    detail.clear();
    try {
      body(*this);
    } catch (const std::exception& e) {
      ++local_failures;
      detail = std::string("exception: ") + e.what();
    }
    ++index;
    if (local_failures == 0) {
      std::printf("PASS criterion %d: %s\n", index, name.c_str());
    } else {
      ++failures;
      std::printf("FAIL criterion %d: %s (%s)\n", index, name.c_str(), detail.c_str());
    }
  }

 private:
  int local_failures = 0;
};

PPOptions full_schedule() {
  PPOptions options;
  options.tol = 0.0;
  return options;
}

void criterion_gap_example(Harness& h) {
  auto model_path =
      (std::filesystem::temp_directory_path() / "acceptance_gap.json").string();
  std::ofstream(model_path) << R"({
    "alphabet": [-1, 1, 10],
    "type": {"counts": [3, 2, 0]},
    "constraints": [{"kind": "eq", "u": [-1, 1, 10], "rhs": 0}]
  })";
  cli::RunOptions solve_options;
  solve_options.command = "solve";
  solve_options.model_path = model_path;
  auto solve_result = cli::run(solve_options);
  h.check(solve_result.exit_code == 0, "solve exit code");
  const auto& q = solve_result.document["solution"]["q"];
  h.near(q[0].get<double>(), 54.0 / 99, 1e-6, "q[-1]");
  h.near(q[1].get<double>(), 44.0 / 99, 1e-6, "q[1]");
  h.near(q[2].get<double>(), 1.0 / 99, 1e-6, "q[10]");
  h.near(solve_result.document["solution"]["value"].get<double>(), 0.6881, 5e-4, "value");

  cli::RunOptions dual_options = solve_options;
  dual_options.command = "dual";
  auto dual_result = cli::run(dual_options);
  h.check(dual_result.exit_code == 0, "dual exit code");
  h.near(dual_result.document["dual"]["alpha"][0].get<double>(), -0.2, 1e-8, "alpha");
  h.near(dual_result.document["dual"]["value"].get<double>(), -0.6931, 5e-4, "dual value");
  h.check(dual_result.document["gap"]["gap_present"].get<bool>(), "gap_present");
}

void check_vector(Harness& h, const std::vector<double>& actual,
                  const std::vector<double>& expected, double tolerance,
                  const std::string& what) {
  h.check(actual.size() == expected.size(), what + " size");
  for (std::size_t i = 0; i < expected.size() && i < actual.size(); ++i)
    h.near(actual[i], expected[i], tolerance, what + "[" + std::to_string(i) + "]");
}

void criterion_pathology_fixtures(Harness& h) {
  struct Case {
    ConstraintModel model;
    TypeVector nu;
    std::vector<double> q;
    Verdict verdict;
  };
  std::vector<Case> cases;
  cases.push_back({fixtures::mean_zero_model(), fixtures::nu_no_gap(),
                   {0.5, 0.0, 0.5}, Verdict::Regular});
  cases.push_back({fixtures::mean_zero_model(), fixtures::nu_h_set(),
                   {0.5, 0.0, 0.5}, Verdict::HSet});
  cases.push_back({fixtures::mean_zero_model(), fixtures::nu_z_set(),
                   {0.25, 0.5, 0.25}, Verdict::ZSet});
  cases.push_back({fixtures::monotone_model(), fixtures::nu_monotone(),
                   {0.0, 0.5, 0.5}, Verdict::HSet});
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& test = cases[c];
    auto pp = pp_solve(test.model, test.nu);
    check_vector(h, pp.q.q, test.q, 1e-6, "case " + std::to_string(c) + " q");
    auto cls = classify(test.model, test.nu);
    h.check(cls.verdict == test.verdict, "case " + std::to_string(c) + " verdict");
    auto dual = smith_solve(test.model, test.nu);
    bool should_diverge = test.verdict != Verdict::Regular;
    h.check((dual.status == DualStatus::Divergent) == should_diverge,
            "case " + std::to_string(c) + " dual status");
  }
}

void criterion_klotz(Harness& h) {
  auto result = fenchel_single_inequality(fixtures::single_inequality_model(),
                                          fixtures::nu_single_inequality());
  h.check(result.which == SingleInequalityCase::B, "case B");
  check_vector(h, result.q.q, {1.0 / 20, 12.0 / 20, 0.0, 0.0, 7.0 / 20}, 1e-9, "q");
  h.near(result.value, 0.888123, 1e-5, "value");
  auto klotz = klotz_solution(fixtures::single_inequality_model(),
                              fixtures::nu_single_inequality());
  h.check(klotz.has_value(), "klotz recipe applies");
  if (klotz) {
    h.near(klotz->value, 0.890668, 1e-5, "klotz value");
    h.check(klotz->value > result.value, "corrected value is smaller");
  }
}

void criterion_table_reproduction(Harness& h) {
  auto traced = pp_solve(fixtures::qin_lawless_model(0.0), fixtures::nu_qin_lawless(),
                         full_schedule());
  struct Row {
    double delta;
    std::vector<double> q;
    double value;
  };
  const std::vector<Row> table = {
      {1e-3, {0.161439, 0.001013, 0.528326, 0.294553, 0.014669}, 0.823788},
      {1e-5, {0.162488, 0.000010, 0.525041, 0.299936, 0.012525}, 0.812404},
      {1e-7, {0.162501, 1e-7, 0.525000, 0.299999, 0.012500}, 0.812242},
  };
  for (const auto& expected : table) {
    const PPTraceRow* found = nullptr;
    for (const auto& row : traced.trace.rows)
      if (std::abs(row.delta - expected.delta) < 1e-18) found = &row;
    h.check(found != nullptr, "row present");
    if (!found) continue;
    check_vector(h, found->q_hat, expected.q, 1e-4,
                 "q(" + std::to_string(expected.delta) + ")");
    h.near(found->neg_dual_value, expected.value, 1e-5, "value");
  }
  auto converged = pp_solve(fixtures::qin_lawless_model(0.0), fixtures::nu_qin_lawless());
  h.check(converged.converged, "converged");
  h.near(converged.value, 0.812242, 1e-5, "limit value");
  check_vector(h, converged.q.q, {0.1625, 0.0, 0.525, 0.3, 0.0125}, 1e-4, "limit q");
  h.check(converged.q[1] <= 1e-6, "passive coordinate");
}

void criterion_closed_form_paths(Harness& h) {
  auto check_path = [&](const ConstraintModel& model, const TypeVector& nu,
                        const std::function<double(double)>& formula, const std::string& name) {
    auto result = pp_solve(model, nu, full_schedule());
    for (const auto& row : result.trace.rows)
      h.check(std::abs(row.alpha[0] - formula(row.delta)) <= 1e-9,
              name + " at delta " + std::to_string(row.delta));
  };
  check_path(fixtures::mean_zero_model(), fixtures::nu_h_set(),
             [](double d) { return (d - 1.0) / (d + 1.0); }, "h-set path");
  check_path(fixtures::mean_zero_model(), fixtures::nu_z_set(),
             [](double d) { return (2.0 * d - 1.0) / (2.0 * d + 1.0); }, "z-set path");
  check_path(fixtures::gap_model(), fixtures::nu_gap(),
             [](double d) {
               return -(3.0 - std::sqrt(1.0 + 392.0 * d + 400.0 * d * d)) / (20.0 * (1.0 + d));
             },
             "gap path");
}

void criterion_threshold(Harness& h) {
  auto model = fixtures::threshold_model();
  auto gap_at = [&](double nu_1) {
    auto dual = smith_solve(model, fixtures::nu_threshold(nu_1));
    return diagnose_gap(model, fixtures::nu_threshold(nu_1), dual).gap_present;
  };
  h.check(!gap_at(0.45), "no gap at 0.45");
  auto above = pp_solve(model, fixtures::nu_threshold(0.45));
  check_vector(h, above.q.q, {0.5, 0.5, 0.0, 0.0}, 1e-6, "q at 0.45");

  h.check(gap_at(0.3), "gap at 0.3");
  auto below = pp_solve(model, fixtures::nu_threshold(0.3));
  check_vector(h, below.q.q, {14.0 / 24, 9.0 / 24, 0.0, 1.0 / 24}, 1e-6, "q at 0.3");

  double lo = 0.3, hi = 0.45;  // gap at lo, none at hi
  while (hi - lo > 1e-8) {
    double mid = 0.5 * (lo + hi);
    (gap_at(mid) ? lo : hi) = mid;
  }
  h.near(0.5 * (lo + hi), 0.4, 1e-6, "gap boundary");
}

void criterion_lr_vs_elr(Harness& h) {
  auto report = compare(fixtures::second_moment_model(1.01), fixtures::second_moment_model(1.05),
                        fixtures::nu_lr_elr(), 10);
  h.check(std::abs(report.lr.ratio - 1.4746) <= 1.4746 * 1e-3, "lr");
  h.check(report.elr.has_value(), "elr exists");
  if (report.elr)
    h.check(std::abs(report.elr->ratio - 75031.31) <= 75031.31 * 1e-2, "elr");
  auto el_1 = el_solve(fixtures::second_moment_model(1.01), fixtures::nu_lr_elr());
  auto el_2 = el_solve(fixtures::second_moment_model(1.05), fixtures::nu_lr_elr());
  h.check(el_1.solved() && el_2.solved(), "el solves");
  if (el_1.solved()) check_vector(h, *el_1.p_active, {0.00286, 0.996667, 0.00048}, 5e-4, "el 1");
  if (el_2.solved()) check_vector(h, *el_2.p_active, {0.01429, 0.983333, 0.00238}, 5e-4, "el 2");
}

void criterion_mdi_table(Harness& h) {
  auto diagnosis = mdi_diagnose(fixtures::contingency_model(), fixtures::nu_contingency());
  h.check(diagnosis.classification.verdict == Verdict::HSet, "h-set");
  h.check(!diagnosis.mdi_exists, "mdi nonexistent");
  check_vector(h, diagnosis.pp.q.q, fixtures::contingency_expected_q(), 1e-3, "table");
}

void criterion_active_passive(Harness& h) {
  auto ap = active_passive_solve(fixtures::mean_zero_model(), fixtures::nu_z_set());
  h.near(ap.q_passive[0], 0.25, 1e-6, "q_passive");
  check_vector(h, ap.q.q, {0.25, 0.5, 0.25}, 1e-6, "q");
  auto pp = pp_solve(fixtures::mean_zero_model(), fixtures::nu_z_set());
  for (int i = 0; i < 3; ++i) h.near(ap.q[i], pp.q[i], 1e-6, "ap vs pp");
}

void criterion_property_suites(Harness& h) {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> unif(-2.5, 2.5);

  // Fenchel-Young on 10^3 random triples
  for (int k = 0; k < 1000; ++k) {
    auto nu = oracles::random_type(rng, 3, k % 2 ? 1 : 0);
    std::vector<double> z = {unif(rng), unif(rng), unif(rng)};
    auto conj = conjugate(nu, z);
    auto q = oracles::random_simplex_point(rng, 3);
    auto ell = kerridge_inaccuracy(nu.nu, q);
    if (!ell.finite) continue;
    double fy = z[0] * q[0] + z[1] * q[1] + z[2] * q[2] - ell.get();
    h.check(conj.value >= fy - 1e-12, "fenchel-young");
  }

  // Lipschitz-1 and translation on 10^3 random pairs
  for (int k = 0; k < 1000; ++k) {
    auto nu = oracles::random_type(rng, 4, k % 3 ? 0 : 1);
    std::vector<double> z1 = {unif(rng), unif(rng), unif(rng), unif(rng)};
    std::vector<double> z2 = {unif(rng), unif(rng), unif(rng), unif(rng)};
    double v1 = conjugate(nu, z1).value;
    double v2 = conjugate(nu, z2).value;
    double dist = 0.0;
    for (int i = 0; i < 4; ++i) dist = std::max(dist, std::abs(z1[i] - z2[i]));
    h.check(std::abs(v1 - v2) <= dist + 1e-10, "lipschitz");
    double c = unif(rng);
    auto shifted = z1;
    for (double& v : shifted) v += c;
    h.check(std::abs(conjugate(nu, shifted).value - (v1 + c)) <= 1e-9, "translation");
  }

  // gradient against central differences on 10^2 admissible points
  int accepted = 0;
  while (accepted < 100) {
    auto nu = oracles::random_type(rng, 5, 2);
    std::vector<double> z(5);
    for (double& v : z) v = unif(rng) * 0.4;
    auto split = active_passive_split(nu);
    auto conj = conjugate(nu, z);
    double max_zp = -1e300;
    for (std::size_t i : split.passive) max_zp = std::max(max_zp, z[i]);
    if (conj.mu_bar <= max_zp + 0.05) continue;
    ++accepted;
    std::vector<double> grad(5, 0.0);
    for (std::size_t a = 0; a < split.active.size(); ++a)
      grad[split.active[a]] = conj.q_active[a];
    for (int i = 0; i < 5; ++i) {
      auto zp = z, zm = z;
      zp[i] += 1e-6;
      zm[i] -= 1e-6;
      double fd = (conjugate(nu, zp).value - conjugate(nu, zm).value) / 2e-6;
      h.check(std::abs(fd - grad[i]) <= 1e-5, "gradient");
    }
  }

  // grid-oracle equivalence and classification on 20 random models
  std::mt19937 rng2(424242);
  for (int k = 0; k < 20; ++k) {
    auto rm = oracles::random_single_constraint_model(rng2);
    auto pp = pp_solve(rm.model, rm.nu);
    auto oracle = oracles::grid_primal_minimum_3(rm.model, rm.nu);
    h.check(std::abs(pp.value - oracle.value) <= 1e-4, "grid oracle value");

    auto verdict = classify(rm.model, rm.nu).verdict;
    auto expected = oracles::grid_classify_3(rm.model, rm.nu);
    bool match = (expected == oracles::GridVerdict::HSet && verdict == Verdict::HSet) ||
                 (expected == oracles::GridVerdict::ZSet && verdict == Verdict::ZSet) ||
                 (expected == oracles::GridVerdict::Regular && verdict == Verdict::Regular);
    h.check(match, "classification vs enumeration");
  }
}

}  // namespace

int main() {
  Harness harness;
  harness.run("gap example solve and dual through the command layer", criterion_gap_example);
  harness.run("zero-count pathology fixtures", criterion_pathology_fixtures);
  harness.run("single-inequality closed form and the uncorrected contrast", criterion_klotz);
  harness.run("estimating-equations table reproduction", criterion_table_reproduction);
  harness.run("closed-form perturbation paths", criterion_closed_form_paths);
  harness.run("gap threshold location", criterion_threshold);
  harness.run("multinomial vs empirical likelihood ratios", criterion_lr_vs_elr);
  harness.run("contingency table with fixed marginals", criterion_mdi_table);
  harness.run("active-passive solver agreement", criterion_active_passive);
  harness.run("property suites", criterion_property_suites);
  if (harness.failures == 0)
    std::printf("all %d criteria passed\n", harness.index);
  else
    std::printf("%d of %d criteria failed\n", harness.failures, harness.index);
  return harness.failures == 0 ? 0 : 1;
}
