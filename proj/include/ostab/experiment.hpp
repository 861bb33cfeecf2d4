#pragma once

// Experiment configuration and the runner that dispatches to the additive
// or quadratic pipeline. Configs load from JSON with this layout:
//
//   {
//     "problem": "additive" | "quadratic",
//     "M": "1" | "3/2" | number,          // additive
//     "lambda": integer,                  // quadratic
//     "beta": number in (0, 1],
//     "relation": "inner-product" | "trivial" | "diagonal-augmented",
//     "space": {"kind": "power-euclidean" | "discrete-ellp"},
//     "map": {"base": "zero" | "constant" | "linear" | "quadratic",
//             "dim": integer,             // zero base only
//             "c": [numbers],             // constant base
//             "a": [integers],            // linear base
//             "Q": [[integers]],          // quadratic base
//             "noise": {"seed": integer, "amplitude": number}},
//     "dim": integer,                     // group dimension, default 2
//     "box_radius": integer,              // default 3
//     "pair_limit": integer,              // default 500
//     "stop": {"tol": number, "n_max": integer},  // default 1e-10 / 64
//     "residual_tol": number              // default 1e-8
//   }
//
// Parameter violations surface in the report under pass.failure_code with
// the designated machine-readable codes (invalid-M, invalid-lambda,
// condition-violation, ...), never as a half-written report.

#include <fstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "ostab/errors.hpp"
#include "ostab/map_model.hpp"
#include "ostab/report_io.hpp"
#include "ostab/stability_additive.hpp"
#include "ostab/stability_quadratic.hpp"

namespace ostab {

enum class ProblemKind { additive, quadratic };

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::additive;
  Rational M{1};
  long long lambda = 1;
  double beta = 1.0;
  std::string relation = "diagonal-augmented";
  NormKind space_kind = NormKind::power_euclidean;
  MapModel map;
  int dim = 2;
  int box_radius = 3;
  long long pair_limit = 500;
  StopRule stop;
  double residual_tol = 1e-8;
};

inline ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  const std::string kind = j.at("problem").get<std::string>();
  if (kind == "additive")
    cfg.problem = ProblemKind::additive;
  else if (kind == "quadratic")
    cfg.problem = ProblemKind::quadratic;
  else
    throw std::invalid_argument("unknown problem kind: '" + kind + "'");

  if (cfg.problem == ProblemKind::additive) {
    const auto& m = j.at("M");
    cfg.M = m.is_string() ? parse_rational(m.get<std::string>()) : Rational(m.get<double>());
  } else {
    cfg.lambda = j.at("lambda").get<long long>();
  }
  cfg.beta = j.at("beta").get<double>();
  if (j.contains("relation")) cfg.relation = j.at("relation").get<std::string>();
  if (j.contains("space")) cfg.space_kind = norm_kind_from_string(j.at("space").at("kind").get<std::string>());
  if (j.contains("dim")) cfg.dim = j.at("dim").get<int>();
  if (j.contains("box_radius")) cfg.box_radius = j.at("box_radius").get<int>();
  if (j.contains("pair_limit")) cfg.pair_limit = j.at("pair_limit").get<long long>();
  if (j.contains("stop")) {
    cfg.stop.tol = j.at("stop").at("tol").get<double>();
    cfg.stop.n_max = j.at("stop").at("n_max").get<int>();
  }
  if (j.contains("residual_tol")) cfg.residual_tol = j.at("residual_tol").get<double>();

  const auto& m = j.at("map");
  const MapBase base = map_base_from_string(m.at("base").get<std::string>());
  switch (base) {
    case MapBase::zero:
      cfg.map = MapModel::zero(m.contains("dim") ? m.at("dim").get<int>() : 1);
      break;
    case MapBase::constant:
      cfg.map = MapModel::constant(m.at("c").get<CodomainVec>());
      break;
    case MapBase::linear:
      cfg.map = MapModel::linear(m.at("a").get<std::vector<long long>>());
      break;
    case MapBase::quadratic:
      cfg.map = MapModel::quadratic(m.at("Q").get<std::vector<std::vector<long long>>>());
      break;
  }
  if (m.contains("noise"))
    cfg.map.with_noise(m.at("noise").at("seed").get<std::uint64_t>(),
                       m.at("noise").at("amplitude").get<double>());
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(kIoError, "cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(kIoError, "cannot parse config '" + path + "': " + e.what());
  }
  try {
    return config_from_json(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config is missing a field: ") + e.what());
  }
}

namespace detail {

inline void echo_config(StabilityReport& report, const ExperimentConfig& cfg) {
  report.config.problem = cfg.problem == ProblemKind::additive ? "additive" : "quadratic";
  report.config.M_value =
      cfg.problem == ProblemKind::additive ? to_fraction_string(cfg.M) : std::string{};
  report.config.lambda = cfg.problem == ProblemKind::quadratic ? cfg.lambda : 0;
  report.config.beta = cfg.beta;
  report.config.relation = cfg.relation;
  report.config.space_kind = to_string(cfg.space_kind);
  report.config.space_dim = cfg.map.codomain_dim();
  report.config.dim = cfg.dim;
  report.config.map_base = to_string(cfg.map.base());
  report.config.noise_seed = static_cast<long long>(cfg.map.noise().seed);
  report.config.noise_amplitude = cfg.map.noise().amplitude;
  report.config.box_radius = cfg.box_radius;
  report.config.pair_limit = cfg.pair_limit;
  report.config.stop_tol = cfg.stop.tol;
  report.config.stop_n_max = cfg.stop.n_max;
  report.config.residual_tol = cfg.residual_tol;
}

}  // namespace detail

// Deterministic given the config: fixed seeds, fixed enumeration order.
// Parameter and convergence failures come back as failure entries in the
// report rather than exceptions; see the exit-code contract in the CLI.
inline StabilityReport run_experiment(const ExperimentConfig& cfg) {
  StabilityReport report;
  detail::echo_config(report, cfg);
  try {
    if (!(cfg.beta > 0.0) || cfg.beta > 1.0)
      throw std::invalid_argument("beta must lie in (0, 1]");
    const FNormSpace space = make_space(cfg.space_kind, cfg.beta, cfg.map.codomain_dim());
    const OrthoRelation relation = relation_from_string(cfg.relation);
    if (cfg.problem == ProblemKind::additive) {
      AdditiveProblem p;
      p.M = cfg.M;
      p.beta = cfg.beta;
      p.relation = relation;
      p.f = cfg.map;
      p.space = space;
      p.dim = cfg.dim;
      StabilityReport solved =
          solve_additive(p, cfg.box_radius, cfg.pair_limit, cfg.stop, cfg.residual_tol);
      detail::echo_config(solved, cfg);
      return solved;
    }
    QuadraticProblem p;
    p.lambda = cfg.lambda;
    p.beta = cfg.beta;
    p.relation = relation;
    p.f = cfg.map;
    p.space = space;
    p.dim = cfg.dim;
    StabilityReport solved =
        solve_quadratic(p, cfg.box_radius, cfg.pair_limit, cfg.stop, cfg.residual_tol);
    detail::echo_config(solved, cfg);
    return solved;
  } catch (const Error& e) {
    report.pass.failure_code = e.code();
    report.pass.failure_message = e.what();
  } catch (const std::invalid_argument& e) {
    report.pass.failure_code = kInvalidArgument;
    report.pass.failure_message = e.what();
  }
  return report;
}

}  // namespace ostab
