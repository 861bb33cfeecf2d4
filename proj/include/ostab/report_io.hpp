#pragma once

// Report serialization. JSON layout (top-level keys, exactly):
//
//   config, defect, conditions, series, bound, distances, residuals,
//   pass, timing
//
// The representative iteration trace lives under "distances". Identical
// configs produce byte-identical JSON except for the timing block. The CSV
// format is the trace alone, columns
//
//   n,A_num,A_den,B_num,B_den,step_norm,h_value
//
// with the coefficients as exact integer numerator/denominator pairs.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ostab/errors.hpp"
#include "ostab/stability_report.hpp"

namespace ostab {

using json = nlohmann::ordered_json;

inline json trace_to_json(const IterationTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) {
    steps.push_back(json{{"n", s.n},
                         {"A", to_fraction_string(s.A)},
                         {"B", to_fraction_string(s.B)},
                         {"g", s.g_value},
                         {"step_norm", s.step_norm},
                         {"h_value", s.h_value}});
  }
  return steps;
}

inline IterationTrace trace_from_json(const json& j) {
  IterationTrace trace;
  for (const auto& s : j) {
    TraceStep step;
    step.n = s.at("n").get<int>();
    step.A = parse_rational(s.at("A").get<std::string>());
    step.B = parse_rational(s.at("B").get<std::string>());
    step.g_value = s.at("g").get<CodomainVec>();
    step.step_norm = s.at("step_norm").get<double>();
    step.h_value = s.at("h_value").get<double>();
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

inline json report_to_json(const StabilityReport& r) {
  json j;
  j["config"] = {{"problem", r.config.problem},
                 {"M", r.config.M_value},
                 {"lambda", r.config.lambda},
                 {"beta", r.config.beta},
                 {"relation", r.config.relation},
                 {"space", {{"kind", r.config.space_kind}, {"dim", r.config.space_dim}}},
                 {"dim", r.config.dim},
                 {"map",
                  {{"base", r.config.map_base},
                   {"noise", {{"seed", r.config.noise_seed}, {"amplitude", r.config.noise_amplitude}}}}},
                 {"box_radius", r.config.box_radius},
                 {"pair_limit", r.config.pair_limit},
                 {"stop", {{"tol", r.config.stop_tol}, {"n_max", r.config.stop_n_max}}},
                 {"residual_tol", r.config.residual_tol}};
  j["defect"] = {{"epsilon", r.defect.epsilon},
                 {"pairs_evaluated", r.defect.pairs_evaluated},
                 {"diagonal_vacuous", r.defect.diagonal_vacuous}};
  j["conditions"] = {{"paper_side", r.conditions.paper_side},
                     {"paper_ok", r.conditions.paper_ok},
                     {"lemma_side", r.conditions.lemma_side},
                     {"lemma_ok", r.conditions.lemma_ok},
                     {"u", r.conditions.u},
                     {"v", r.conditions.v},
                     {"alpha", r.conditions.alpha},
                     {"gamma", r.conditions.gamma},
                     {"omega", r.conditions.omega}};
  j["series"] = {{"value", r.series.value},
                 {"tail_bound", r.series.tail_bound},
                 {"terms", r.series.terms}};
  json rows = json::array();
  for (const auto& row : r.coeff_comparison) {
    rows.push_back(json{{"n", row.n},
                        {"A", to_fraction_string(row.engine_A)},
                        {"B", to_fraction_string(row.engine_B)},
                        {"paper_A", to_fraction_string(row.paper_A)},
                        {"paper_B", to_fraction_string(row.paper_B)}});
  }
  j["bound"] = {{"C", r.defect_constant},
                {"value", r.bound},
                {"paper_coefficients_match", r.paper_coefficients_match},
                {"coefficient_comparison", rows}};
  j["distances"] = {{"max_fg_distance_on_image_set", r.distances.max_fg_distance_on_image_set},
                    {"points_evaluated", r.distances.points_evaluated},
                    {"argmax_point", r.distances.argmax_point},
                    {"trace_point", r.trace_point},
                    {"trace", trace_to_json(r.trace)}};
  j["residuals"] = {{"max_equation_residual", r.residuals.max_equation_residual},
                    {"pairs_evaluated", r.residuals.pairs_evaluated},
                    {"residual_tol", r.residuals.residual_tol},
                    {"decay_depth", r.residuals.decay_depth}};
  j["pass"] = {{"bound_ok", r.pass.bound_ok},
               {"residual_ok", r.pass.residual_ok},
               {"step_bounds_ok", r.pass.step_bounds_ok},
               {"residual_decay_ok", r.pass.residual_decay_ok},
               {"ok", r.pass.ok()},
               {"failure_code", r.pass.failure_code},
               {"failure_message", r.pass.failure_message}};
  j["timing"] = {{"wall_ms", r.wall_ms}};
  return j;
}

inline StabilityReport report_from_json(const json& j) {
  StabilityReport r;
  const auto& c = j.at("config");
  r.config.problem = c.at("problem").get<std::string>();
  r.config.M_value = c.at("M").get<std::string>();
  r.config.lambda = c.at("lambda").get<long long>();
  r.config.beta = c.at("beta").get<double>();
  r.config.relation = c.at("relation").get<std::string>();
  r.config.space_kind = c.at("space").at("kind").get<std::string>();
  r.config.space_dim = c.at("space").at("dim").get<int>();
  r.config.dim = c.at("dim").get<int>();
  r.config.map_base = c.at("map").at("base").get<std::string>();
  r.config.noise_seed = c.at("map").at("noise").at("seed").get<long long>();
  r.config.noise_amplitude = c.at("map").at("noise").at("amplitude").get<double>();
  r.config.box_radius = c.at("box_radius").get<int>();
  r.config.pair_limit = c.at("pair_limit").get<long long>();
  r.config.stop_tol = c.at("stop").at("tol").get<double>();
  r.config.stop_n_max = c.at("stop").at("n_max").get<int>();
  r.config.residual_tol = c.at("residual_tol").get<double>();

  const auto& d = j.at("defect");
  r.defect.epsilon = d.at("epsilon").get<double>();
  r.defect.pairs_evaluated = d.at("pairs_evaluated").get<long long>();
  r.defect.diagonal_vacuous = d.at("diagonal_vacuous").get<bool>();

  const auto& k = j.at("conditions");
  r.conditions.paper_side = k.at("paper_side").get<double>();
  r.conditions.paper_ok = k.at("paper_ok").get<bool>();
  r.conditions.lemma_side = k.at("lemma_side").get<double>();
  r.conditions.lemma_ok = k.at("lemma_ok").get<bool>();
  r.conditions.u = k.at("u").get<double>();
  r.conditions.v = k.at("v").get<double>();
  r.conditions.alpha = k.at("alpha").get<std::string>();
  r.conditions.gamma = k.at("gamma").get<std::string>();
  r.conditions.omega = k.at("omega").get<long long>();

  const auto& s = j.at("series");
  r.series.value = s.at("value").get<double>();
  r.series.tail_bound = s.at("tail_bound").get<double>();
  r.series.terms = s.at("terms").get<long long>();

  const auto& b = j.at("bound");
  r.defect_constant = b.at("C").get<double>();
  r.bound = b.at("value").get<double>();
  r.paper_coefficients_match = b.at("paper_coefficients_match").get<bool>();
  for (const auto& row : b.at("coefficient_comparison")) {
    CoeffComparisonRow cr;
    cr.n = row.at("n").get<int>();
    cr.engine_A = parse_rational(row.at("A").get<std::string>());
    cr.engine_B = parse_rational(row.at("B").get<std::string>());
    cr.paper_A = parse_rational(row.at("paper_A").get<std::string>());
    cr.paper_B = parse_rational(row.at("paper_B").get<std::string>());
    r.coeff_comparison.push_back(std::move(cr));
  }

  const auto& di = j.at("distances");
  r.distances.max_fg_distance_on_image_set = di.at("max_fg_distance_on_image_set").get<double>();
  r.distances.points_evaluated = di.at("points_evaluated").get<long long>();
  r.distances.argmax_point = di.at("argmax_point").get<std::string>();
  r.trace_point = di.at("trace_point").get<std::string>();
  r.trace = trace_from_json(di.at("trace"));

  const auto& re = j.at("residuals");
  r.residuals.max_equation_residual = re.at("max_equation_residual").get<double>();
  r.residuals.pairs_evaluated = re.at("pairs_evaluated").get<long long>();
  r.residuals.residual_tol = re.at("residual_tol").get<double>();
  r.residuals.decay_depth = re.at("decay_depth").get<int>();

  const auto& p = j.at("pass");
  r.pass.bound_ok = p.at("bound_ok").get<bool>();
  r.pass.residual_ok = p.at("residual_ok").get<bool>();
  r.pass.step_bounds_ok = p.at("step_bounds_ok").get<bool>();
  r.pass.residual_decay_ok = p.at("residual_decay_ok").get<bool>();
  r.pass.failure_code = p.at("failure_code").get<std::string>();
  r.pass.failure_message = p.at("failure_message").get<std::string>();

  r.wall_ms = j.at("timing").at("wall_ms").get<double>();
  return r;
}

inline std::string trace_to_csv(const IterationTrace& trace) {
  std::ostringstream os;
  os << "n,A_num,A_den,B_num,B_den,step_norm,h_value\n";
  os.precision(17);
  for (const auto& s : trace.steps) {
    os << s.n << ',' << numerator(s.A).str() << ',' << denominator(s.A).str() << ','
       << numerator(s.B).str() << ',' << denominator(s.B).str() << ',' << s.step_norm << ','
       << s.h_value << '\n';
  }
  return os.str();
}

enum class ReportFormat { json, csv };

inline ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw std::invalid_argument("unknown report format: '" + s + "'");
}

inline void write_report(const StabilityReport& report, const std::string& path,
                         ReportFormat format) {
  std::ofstream out(path);
  if (!out) throw Error(kIoError, "cannot open '" + path + "' for writing");
  if (format == ReportFormat::json)
    out << report_to_json(report).dump(2) << '\n';
  else
    out << trace_to_csv(report.trace);
  if (!out) throw Error(kIoError, "failed writing '" + path + "'");
}

inline StabilityReport read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(kIoError, "cannot open '" + path + "' for reading");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(kIoError, "cannot parse '" + path + "': " + e.what());
  }
  return report_from_json(j);
}

}  // namespace ostab
