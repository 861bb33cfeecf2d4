#pragma once

// The full record of one stability experiment: measured defect, convergence
// conditions, certified series sum, the ||f - g|| bound with its
// verification on the image set, equation residuals of the constructed g,
// and pass/fail flags.

#include <string>
#include <vector>

#include "ostab/direct_method.hpp"
#include "ostab/rational.hpp"

namespace ostab {

struct ReportConfig {
  std::string problem;  // "additive" | "quadratic"
  std::string M_value;  // fraction string; empty for quadratic runs
  long long lambda = 0;  // 0 for additive runs
  double beta = 1.0;
  std::string relation;
  std::string space_kind;
  int space_dim = 1;
  int dim = 2;  // group dimension
  std::string map_base;  // filled by the experiment harness
  long long noise_seed = 0;
  double noise_amplitude = 0.0;
  int box_radius = 3;
  long long pair_limit = 500;
  double stop_tol = 1e-10;
  int stop_n_max = 64;
  double residual_tol = 1e-8;

  bool operator==(const ReportConfig&) const = default;
};

struct DefectReport {
  double epsilon = 0.0;
  long long pairs_evaluated = 0;
  // True when the relation relates none of the diagonal derivation pairs of
  // any nonzero sample point, i.e. the derivation held only vacuously.
  bool diagonal_vacuous = false;
};

struct ConditionReport {
  double paper_side = 0.0;  // condition value as stated with the theorem
  bool paper_ok = false;
  double lemma_side = 0.0;  // |u|^beta + |v|^beta, the value the iteration needs
  bool lemma_ok = false;
  double u = 0.0;
  double v = 0.0;
  std::string alpha;  // reduction weights as fraction strings
  std::string gamma;
  long long omega = 2;
};

struct CoeffComparisonRow {
  int n = 0;
  Rational engine_A{0}, engine_B{0};  // closed form used by the iteration
  Rational paper_A{0}, paper_B{0};    // coefficients as displayed in print
};

struct DistanceReport {
  double max_fg_distance_on_image_set = 0.0;
  long long points_evaluated = 0;
  std::string argmax_point;
};

struct ResidualReport {
  double max_equation_residual = 0.0;
  long long pairs_evaluated = 0;
  double residual_tol = 1e-8;
  int decay_depth = 0;  // per-step residual bound verified for n up to this depth
};

struct PassReport {
  bool bound_ok = false;
  bool residual_ok = false;
  bool step_bounds_ok = false;
  bool residual_decay_ok = false;
  std::string failure_code;  // empty when the run completed
  std::string failure_message;

  bool ok() const {
    return failure_code.empty() && bound_ok && residual_ok && step_bounds_ok &&
           residual_decay_ok;
  }
};

struct StabilityReport {
  ReportConfig config;
  DefectReport defect;
  ConditionReport conditions;
  SeriesSum series;
  double defect_constant = 0.0;  // C handed to the iteration
  double bound = 0.0;            // C * (S + 1), with S taken at its certified upper value
  bool paper_coefficients_match = false;
  std::vector<CoeffComparisonRow> coeff_comparison;
  DistanceReport distances;
  ResidualReport residuals;
  PassReport pass;
  IterationTrace trace;  // trace at the max-distance image point
  std::string trace_point;
  double wall_ms = 0.0;
};

}  // namespace ostab
