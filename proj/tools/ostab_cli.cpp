// Command-line front end.
//
// Exit codes: 0 = all checks passed; 1 = a bound, residual or axiom check
// failed (or the iteration did not converge); 2 = invalid parameters.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ostab/ostab.hpp"

namespace {

using namespace ostab;

int print_axiom_report(const AxiomReport& report) {
  std::cout << "subject: " << report.subject << "\n";
  bool failed = false;
  for (const auto& c : report.checks) {
    const char* tag = c.status == CheckStatus::passed       ? "[PASS]"
                      : c.status == CheckStatus::failed     ? "[FAIL]"
                                                            : "[SKIP]";
    std::cout << tag << " " << c.axiom << " (" << c.samples_checked << " samples, "
              << c.nonvacuous << " nonvacuous)";
    if (c.status == CheckStatus::failed) std::cout << "  counterexample: " << c.counterexample;
    if (c.status == CheckStatus::not_checkable && !c.counterexample.empty())
      std::cout << "  " << c.counterexample;
    std::cout << "\n";
    failed = failed || c.status == CheckStatus::failed;
  }
  return failed ? 1 : 0;
}

int run_check_space(const std::string& kind, double beta, int dim, long long samples,
                    std::uint64_t seed) {
  const FNormSpace space{beta, dim, norm_kind_from_string(kind)};
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  return print_axiom_report(check_fnorm_axioms(space, samples, seed));
}

int run_check_ortho(const std::string& relation, const std::string& axioms, int dim,
                    long long samples, std::uint64_t seed) {
  if (axioms == "ratz") return print_axiom_report(check_ratz_axioms(dim, samples, seed));
  const OrthoRelation rel = relation_from_string(relation);
  if (axioms == "fs") return print_axiom_report(check_fs_axioms(rel, dim, samples, seed));
  if (axioms == "gc") return print_axiom_report(check_gc_axioms(rel, dim, samples, seed));
  if (axioms == "sec3") return print_axiom_report(check_sec3_axioms(rel, dim, samples, seed));
  throw std::invalid_argument("unknown axiom set: '" + axioms + "'");
}

int run_coeffs(const std::string& alpha_s, const std::string& gamma_s, int n) {
  const Rational alpha = parse_rational(alpha_s);
  const Rational gamma = parse_rational(gamma_s);
  std::printf("%4s  %-18s %-18s %-18s %-18s %s\n", "n", "A (recurrence)", "B (recurrence)",
              "A (closed)", "B (closed)", "match");
  bool all_match = true;
  for (int k = 0; k <= n; ++k) {
    const CoeffPair rec = coeffs_recurrence(alpha, gamma, k);
    const CoeffPair cls = coeffs_closed(alpha, gamma, k);
    const bool match = rec.A == cls.A && rec.B == cls.B;
    all_match = all_match && match;
    std::printf("%4d  %-18s %-18s %-18s %-18s %s\n", k, to_fraction_string(rec.A).c_str(),
                to_fraction_string(rec.B).c_str(), to_fraction_string(cls.A).c_str(),
                to_fraction_string(cls.B).c_str(), match ? "yes" : "NO");
  }
  return all_match ? 0 : 1;
}

int run_bound(const std::string& mode, const std::string& M_s, long long lambda, double beta,
              double epsilon) {
  IterationParams params;
  double paper_side = 0.0;
  if (mode == "additive") {
    if (M_s.empty()) throw std::invalid_argument("additive mode needs --M");
    const Rational M = parse_rational(M_s);
    params = reduce_additive(M, beta, epsilon);
    paper_side = detail::additive_paper_condition(M, beta);
  } else if (mode == "quadratic") {
    params = reduce_quadratic(lambda, beta, epsilon);
    paper_side = check_lambda_condition(lambda, beta).sum();
  } else {
    throw std::invalid_argument("mode must be additive or quadratic");
  }
  const ConvergenceCheck cc = check_convergence(params.alpha, params.gamma, beta);
  const SeriesSum S = series_sum(params.alpha, params.gamma, beta, 1e-12);
  std::printf("alpha  = %s\n", to_fraction_string(params.alpha).c_str());
  std::printf("gamma  = %s\n", to_fraction_string(params.gamma).c_str());
  std::printf("omega  = %lld\n", params.omega);
  std::printf("u, v   = %.17g, %.17g\n", cc.u, cc.v);
  std::printf("paper-side condition value = %.17g\n", paper_side);
  std::printf("lemma-side condition value = %.17g (< 1)\n", cc.sum());
  std::printf("C      = %.17g\n", params.defect_bound);
  std::printf("S      = %.17g (+ tail %.3g, %lld terms)\n", S.value, S.tail_bound, S.terms);
  std::printf("bound  = %.17g\n", stability_bound(params.defect_bound, S.value));
  return 0;
}

int run_solve(const std::string& config_path, const std::string& out_path,
              const std::string& trace_csv) {
  const ExperimentConfig cfg = load_config(config_path);
  const StabilityReport report = run_experiment(cfg);
  write_report(report, out_path, ReportFormat::json);
  if (!trace_csv.empty()) write_report(report, trace_csv, ReportFormat::csv);

  if (!report.pass.failure_code.empty()) {
    std::cout << "FAILED (" << report.pass.failure_code << "): " << report.pass.failure_message
              << "\n";
    const std::string& code = report.pass.failure_code;
    const bool invalid = code == kInvalidArgument || code == kInvalidM ||
                         code == kInvalidLambda || code == kConditionViolation ||
                         code == kIoError;
    return invalid ? 2 : 1;
  }

  const auto flag = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  std::printf("problem          : %s\n", report.config.problem.c_str());
  std::printf("epsilon          : %.17g  (%lld pairs%s)\n", report.defect.epsilon,
              report.defect.pairs_evaluated,
              report.defect.diagonal_vacuous ? ", derivation vacuous at diagonal" : "");
  std::printf("conditions       : paper-side %.6g (%s), lemma-side %.6g (%s)\n",
              report.conditions.paper_side, report.conditions.paper_ok ? "ok" : "violated",
              report.conditions.lemma_side, report.conditions.lemma_ok ? "ok" : "violated");
  std::printf("series S         : %.17g (+ tail %.3g)\n", report.series.value,
              report.series.tail_bound);
  std::printf("C                : %.17g\n", report.defect_constant);
  std::printf("bound            : %.17g\n", report.bound);
  std::printf("max ||f-g|| (2X) : %.17g  [%s]\n", report.distances.max_fg_distance_on_image_set,
              flag(report.pass.bound_ok));
  std::printf("max residual     : %.17g  [%s]\n", report.residuals.max_equation_residual,
              flag(report.pass.residual_ok));
  std::printf("step bounds      : [%s]\n", flag(report.pass.step_bounds_ok));
  std::printf("residual decay   : [%s] (depth %d)\n", flag(report.pass.residual_decay_ok),
              report.residuals.decay_depth);
  std::printf("report           : %s\n", out_path.c_str());
  std::printf("=> %s\n", report.pass.ok() ? "PASS" : "FAIL");
  return report.pass.ok() ? 0 : 1;
}

int run_report(const std::string& in_path, const std::string& format,
               const std::string& out_path) {
  const StabilityReport report = read_report(in_path);
  const ReportFormat fmt = report_format_from_string(format);
  if (out_path.empty()) {
    if (fmt == ReportFormat::json)
      std::cout << report_to_json(report).dump(2) << "\n";
    else
      std::cout << trace_to_csv(report.trace);
  } else {
    write_report(report, out_path, fmt);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stability verification toolkit for orthogonally constrained "
               "functional equations in beta-homogeneous F-normed spaces"};
  app.require_subcommand(1);

  auto* space_cmd = app.add_subcommand("check-space", "check the F-norm laws of a codomain");
  std::string space_kind = "power-euclidean";
  double space_beta = 1.0;
  int space_dim = 2;
  long long space_samples = 1000;
  std::uint64_t space_seed = 1;
  space_cmd->add_option("--kind", space_kind, "power-euclidean | discrete-ellp");
  space_cmd->add_option("--beta", space_beta, "homogeneity exponent");
  space_cmd->add_option("--dim", space_dim, "codomain dimension");
  space_cmd->add_option("--samples", space_samples, "sample count");
  space_cmd->add_option("--seed", space_seed, "sampler seed");

  auto* ortho_cmd = app.add_subcommand("check-ortho", "check orthogonality-relation laws");
  std::string ortho_relation = "inner-product";
  std::string ortho_axioms = "fs";
  int ortho_dim = 2;
  long long ortho_samples = 1000;
  std::uint64_t ortho_seed = 1;
  ortho_cmd->add_option("--relation", ortho_relation,
                        "inner-product | trivial | diagonal-augmented");
  ortho_cmd->add_option("--axioms", ortho_axioms, "fs | gc | sec3 | ratz");
  ortho_cmd->add_option("--dim", ortho_dim, "group dimension");
  ortho_cmd->add_option("--samples", ortho_samples, "sample count");
  ortho_cmd->add_option("--seed", ortho_seed, "sampler seed");

  auto* coeffs_cmd = app.add_subcommand("coeffs", "coefficient recurrence vs closed form");
  std::string alpha_s = "3/8", gamma_s = "1/8";
  int coeff_n = 8;
  coeffs_cmd->add_option("--alpha", alpha_s, "rational, e.g. 3/8");
  coeffs_cmd->add_option("--gamma", gamma_s, "rational, e.g. 1/8");
  coeffs_cmd->add_option("--n", coeff_n, "last index to print");

  auto* bound_cmd = app.add_subcommand("bound", "reduction constants and stability bound");
  std::string bound_mode = "additive", bound_M;
  long long bound_lambda = 1;
  double bound_beta = 1.0, bound_eps = 1.0;
  bound_cmd->add_option("--mode", bound_mode, "additive | quadratic");
  bound_cmd->add_option("--M", bound_M, "rational parameter of the additive equation");
  bound_cmd->add_option("--lambda", bound_lambda, "integer parameter of the quadratic equation");
  bound_cmd->add_option("--beta", bound_beta, "homogeneity exponent");
  bound_cmd->add_option("--epsilon", bound_eps, "measured defect");

  auto* solve_cmd = app.add_subcommand("solve", "run a stability experiment from a JSON config");
  std::string solve_config, solve_out = "report.json", solve_trace_csv;
  solve_cmd->add_option("--config", solve_config, "experiment config path")->required();
  solve_cmd->add_option("--out", solve_out, "report output path");
  solve_cmd->add_option("--trace-csv", solve_trace_csv, "also write the trace as CSV");

  auto* report_cmd = app.add_subcommand("report", "re-emit a stored report");
  std::string report_in, report_format = "json", report_out;
  report_cmd->add_option("--in", report_in, "report JSON path")->required();
  report_cmd->add_option("--format", report_format, "json | csv");
  report_cmd->add_option("--out", report_out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (space_cmd->parsed())
      return run_check_space(space_kind, space_beta, space_dim, space_samples, space_seed);
    if (ortho_cmd->parsed())
      return run_check_ortho(ortho_relation, ortho_axioms, ortho_dim, ortho_samples, ortho_seed);
    if (coeffs_cmd->parsed()) return run_coeffs(alpha_s, gamma_s, coeff_n);
    if (bound_cmd->parsed())
      return run_bound(bound_mode, bound_M, bound_lambda, bound_beta, bound_eps);
    if (solve_cmd->parsed()) return run_solve(solve_config, solve_out, solve_trace_csv);
    if (report_cmd->parsed()) return run_report(report_in, report_format, report_out);
  } catch (const ostab::Error& e) {
    std::cerr << "error (" << e.code() << "): " << e.what() << "\n";
    const std::string code = e.code();
    const bool invalid = code == ostab::kInvalidArgument || code == ostab::kInvalidM ||
                         code == ostab::kInvalidLambda || code == ostab::kConditionViolation ||
                         code == ostab::kIoError;
    return invalid ? 2 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (invalid-argument): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
