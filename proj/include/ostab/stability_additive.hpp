#pragma once

// Stability pipeline for the M-parameterized Jensen additive equation
//
//     f(x+y) = M [f(x) + f(y)]    on orthogonal pairs, M != 0, 1/2.
//
// The derivation consumes the pairs (0,0), (x,x) and (2x,-2x) to bound
// f(0), the doubling defect and the even difference, and lands on the
// one-step reduction
//
//     || f(x) - (4-M)/(8M) f(2x) + 1/8 f(-2x) ||
//         <= [ 1/|8M|^b + 1/|-16M^2+8M|^b + 1 ] epsilon
//
// which feeds the direct-method engine with alpha = (4-M)/(8M), gamma = 1/8,
// omega = 2, hence u = 1/(2M) and v = (2-M)/(4M). The theorem's own
// statement carries the inequivalent condition |alpha|^b + |gamma|^b < 1;
// both values are reported, solving requires the engine-side one.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ostab/direct_method.hpp"
#include "ostab/errors.hpp"
#include "ostab/eval_map.hpp"
#include "ostab/fspace.hpp"
#include "ostab/ortho.hpp"
#include "ostab/stability_common.hpp"
#include "ostab/stability_report.hpp"

namespace ostab {

struct AdditiveProblem {
  Rational M{1};
  double beta = 1.0;
  OrthoRelation relation = OrthoRelation::diagonal_augmented();
  EvalMap f;
  FNormSpace space;
  int dim = 2;
};

namespace detail {

inline void require_valid_M(const Rational& M) {
  if (M == 0) throw Error(kInvalidM, "M must be nonzero");
  if (M == Rational(1, 2)) throw Error(kInvalidM, "M = 1/2 is excluded (f(0) bound divides by 1-2M)");
}

inline double additive_paper_condition(const Rational& M, double beta) {
  // |(M-4)/(8M)|^b + (1/8)^b as stated with the theorem
  const Rational alpha_abs = abs((M - 4) / (8 * M));
  return std::pow(to_double(alpha_abs), beta) + std::pow(0.125, beta);
}

inline detail::ComboFn additive_combo(const Rational& M) {
  return [M](const GroupPoint& x, const GroupPoint& y) {
    return std::vector<std::pair<Rational, GroupPoint>>{
        {Rational(1), x + y}, {-M, x}, {-M, y}};
  };
}

inline detail::DiagonalFn additive_diagonal() {
  return [](const GroupPoint& x) {
    return std::vector<std::pair<GroupPoint, GroupPoint>>{{x, x}, {x, -x}};
  };
}

}  // namespace detail

// ||f(0)|| <= epsilon / |1-2M|^beta, from the (0,0) pair.
inline double f0_bound(double epsilon, const Rational& M, double beta) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  if (M == Rational(1, 2)) throw Error(kInvalidM, "f(0) bound undefined at M = 1/2");
  const Rational denom = abs(1 - 2 * M);
  return epsilon / std::pow(to_double(denom), beta);
}

// (|1/(1-2M)|^beta + 1) / |M|^beta * epsilon, the even-difference constant.
inline double even_diff_bound(double epsilon, const Rational& M, double beta) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  detail::require_valid_M(M);
  const double inv = std::pow(to_double(Rational(1) / abs(1 - 2 * M)), beta);
  return (inv + 1.0) / std::pow(to_double(abs(M)), beta) * epsilon;
}

// Reduction to the direct-method engine. Throws ConditionViolation (with
// both condition values) when |u|^beta + |v|^beta >= 1.
inline IterationParams reduce_additive(const Rational& M, double beta, double epsilon) {
  detail::require_valid_M(M);
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");

  IterationParams p;
  p.alpha = (4 - M) / (8 * M);
  p.gamma = Rational(1, 8);
  p.omega = 2;
  p.beta = beta;

  const ConvergenceCheck cc = check_convergence(p.alpha, p.gamma, beta);
  const double paper_side = detail::additive_paper_condition(M, beta);
  if (!cc.converges)
    throw ConditionViolation("additive reduction does not contract at M = " +
                                 to_fraction_string(M) + ": |u|^b + |v|^b = " +
                                 std::to_string(cc.sum()),
                             paper_side, cc.sum());

  const double t1 = std::pow(to_double(Rational(1) / abs(8 * M)), beta);
  const double t2 = std::pow(to_double(Rational(1) / abs(-16 * M * M + 8 * M)), beta);
  p.defect_bound = (t1 + t2 + 1.0) * epsilon;
  return p;
}

// Maximum equation defect over the enumerated related pairs, with the
// diagonal derivation pairs (x,x), (x,-x) and (0,0) injected when related.
inline double measure_defect_additive(const AdditiveProblem& problem, int box_radius,
                                      long long pair_limit) {
  if (!problem.f) throw std::invalid_argument("problem has no map");
  detail::PairPool pool = detail::derivation_pairs(problem.relation, problem.dim, box_radius,
                                                   pair_limit, detail::additive_diagonal());
  const auto combo = detail::additive_combo(problem.M);
  double epsilon = 0.0;
  for (const auto& [x, y] : pool.pairs)
    epsilon = std::max(epsilon, detail::pair_defect(problem.f, problem.space, combo, x, y));
  return epsilon;
}

// Full verification run: measures epsilon, reduces, constructs g over the
// sample box, and checks the bound on 2X, the equation residual of g, the
// per-step norm bounds and the per-step residual decay. The run's epsilon
// also covers the scale ladder of the pairs used by the decay check, so the
// reported value dominates every defect the verification consumes.
inline StabilityReport solve_additive(const AdditiveProblem& problem, int box_radius,
                                      long long pair_limit, StopRule stop,
                                      double residual_tol = 1e-8) {
  if (!problem.f) throw std::invalid_argument("problem has no map");
  if (std::abs(problem.space.beta - problem.beta) > 1e-15)
    throw std::invalid_argument("space and problem disagree on beta");

  const IterationParams unit = reduce_additive(problem.M, problem.beta, 1.0);
  const ConvergenceCheck cc = check_convergence(unit.alpha, unit.gamma, problem.beta);

  StabilityReport report;
  report.config.problem = "additive";
  report.config.M_value = to_fraction_string(problem.M);
  report.config.beta = problem.beta;
  report.config.relation = problem.relation.name;
  report.config.space_kind = to_string(problem.space.kind);
  report.config.space_dim = problem.space.dim;
  report.config.dim = problem.dim;
  report.config.box_radius = box_radius;
  report.config.pair_limit = pair_limit;
  report.config.stop_tol = stop.tol;
  report.config.stop_n_max = stop.n_max;
  report.config.residual_tol = residual_tol;

  report.conditions.paper_side = detail::additive_paper_condition(problem.M, problem.beta);
  report.conditions.paper_ok = report.conditions.paper_side < 1.0;
  report.conditions.lemma_side = cc.sum();
  report.conditions.lemma_ok = cc.converges;
  report.conditions.u = cc.u;
  report.conditions.v = cc.v;
  report.conditions.alpha = to_fraction_string(unit.alpha);
  report.conditions.gamma = to_fraction_string(unit.gamma);
  report.conditions.omega = unit.omega;

  // The coefficients displayed alongside the theorem are the M = 1
  // specialization (2^n+1)/(2*4^n); flag whether they apply to this M.
  report.paper_coefficients_match = true;
  for (int n = 1; n <= 4; ++n) {
    CoeffComparisonRow row;
    row.n = n;
    const CoeffPair c = coeffs_closed(unit.alpha, unit.gamma, n);
    row.engine_A = c.A;
    row.engine_B = c.B;
    const Rational pow4 = rational_pow(Rational(4), static_cast<unsigned>(n));
    const Rational pow2 = rational_pow(Rational(2), static_cast<unsigned>(n));
    row.paper_A = (pow2 + 1) / (2 * pow4);
    row.paper_B = (pow2 - 1) / (2 * pow4);
    if (row.engine_A != row.paper_A || row.engine_B != row.paper_B)
      report.paper_coefficients_match = false;
    report.coeff_comparison.push_back(std::move(row));
  }

  detail::PipelineInputs in;
  in.f = problem.f;
  in.space = problem.space;
  in.relation = problem.relation;
  in.dim = problem.dim;
  in.params = unit;  // defect_bound normalized to epsilon = 1
  in.box_radius = box_radius;
  in.pair_limit = pair_limit;
  in.stop = stop;
  in.residual_tol = residual_tol;

  detail::PipelineShape shape;
  shape.combo = detail::additive_combo(problem.M);
  shape.diagonal = detail::additive_diagonal();
  shape.image_scale = 2;

  return detail::run_pipeline(in, shape, std::move(report));
}

}  // namespace ostab
