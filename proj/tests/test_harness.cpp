#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ostab/experiment.hpp"
#include "ostab/map_model.hpp"
#include "ostab/report_io.hpp"

using namespace ostab;
using Catch::Approx;

TEST_CASE("map model evaluation", "[harness]") {
  CHECK(eval_map(MapModel::zero(1), make_point({5, -7})) == CodomainVec{0.0});
  CHECK(eval_map(MapModel::linear({2, 3}), make_point({1, 1})) == CodomainVec{5.0});
  CHECK(eval_map(MapModel::quadratic({{1, 0}, {0, 1}}), make_point({3, 4})) ==
        CodomainVec{25.0});
  CHECK(eval_map(MapModel::constant({1.5, -2.0}), make_point({9, 9})) ==
        CodomainVec{1.5, -2.0});
}

TEST_CASE("map model validation", "[harness]") {
  CHECK_THROWS_AS(MapModel::quadratic({{1, 2}, {3, 4}}), std::invalid_argument);  // asymmetric
  CHECK_THROWS_AS(MapModel::quadratic({{1, 2, 3}, {2, 1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(MapModel::linear({}), std::invalid_argument);
  CHECK_THROWS_AS(MapModel::zero(0), std::invalid_argument);
  CHECK_THROWS_AS(MapModel::constant({}), std::invalid_argument);
  CHECK_THROWS_AS(MapModel::zero(1).with_noise(1, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(eval_map(MapModel::linear({1, 2}), make_point({1, 2, 3})),
                  std::invalid_argument);
}

TEST_CASE("map values overflow loudly", "[harness]") {
  const GroupPoint huge(std::vector<BigInt>{
      boost::multiprecision::pow(BigInt(10), 200), BigInt(0)});
  const MapModel f = MapModel::quadratic({{1, 0}, {0, 1}});
  try {
    eval_map(f, huge);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == kOverflow);
  }
  // the split evaluation keeps the value exact instead
  CHECK(f.eval_split(huge).exact[0] ==
        Rational(boost::multiprecision::pow(BigInt(10), 400)));
}

TEST_CASE("hash noise is bounded, pure and seed-sensitive", "[harness][property]") {
  const NoiseSpec ns{123, 0.01};
  const NoiseSpec other{124, 0.01};
  int distinct = 0;
  for (long long i = -40; i <= 40; ++i) {
    for (long long j = -40; j <= 40; ++j) {
      const GroupPoint p = make_point({i, j});
      const double v = hash_noise(ns, p, 0);
      CHECK(std::abs(v) <= 0.01);
      CHECK(hash_noise(ns, p, 0) == v);  // pure
      if (v != hash_noise(other, p, 0)) ++distinct;
      CHECK(hash_noise(ns, p, 0) != hash_noise(ns, p, 1));  // coordinate index matters
    }
  }
  CHECK(distinct > 6000);  // different seeds give different streams
  CHECK(hash_noise(NoiseSpec{1, 0.0}, make_point({3, 3}), 0) == 0.0);
}

TEST_CASE("noise survives coordinates beyond 64-bit range", "[harness]") {
  const NoiseSpec ns{9, 0.5};
  const BigInt big = boost::multiprecision::pow(BigInt(6), 64);
  const GroupPoint p(std::vector<BigInt>{big, -big});
  const GroupPoint q(std::vector<BigInt>{big, -big + 1});
  CHECK(std::abs(hash_noise(ns, p, 0)) <= 0.5);
  CHECK(hash_noise(ns, p, 0) != hash_noise(ns, q, 0));
}

TEST_CASE("experiment config parses with exact field names", "[harness]") {
  const json j = json::parse(R"({
    "problem": "additive",
    "M": "3/2",
    "beta": 0.5,
    "relation": "diagonal-augmented",
    "space": {"kind": "discrete-ellp"},
    "map": {"base": "linear", "a": [2, 3], "noise": {"seed": 7, "amplitude": 0.01}},
    "dim": 2,
    "box_radius": 2,
    "pair_limit": 100,
    "stop": {"tol": 1e-9, "n_max": 80},
    "residual_tol": 1e-7
  })");
  const ExperimentConfig cfg = config_from_json(j);
  CHECK(cfg.problem == ProblemKind::additive);
  CHECK(cfg.M == Rational(3, 2));
  CHECK(cfg.beta == 0.5);
  CHECK(cfg.relation == "diagonal-augmented");
  CHECK(cfg.space_kind == NormKind::discrete_ellp);
  CHECK(cfg.map.base() == MapBase::linear);
  CHECK(cfg.map.noise().seed == 7);
  CHECK(cfg.map.noise().amplitude == 0.01);
  CHECK(cfg.box_radius == 2);
  CHECK(cfg.pair_limit == 100);
  CHECK(cfg.stop.tol == 1e-9);
  CHECK(cfg.stop.n_max == 80);
  CHECK(cfg.residual_tol == 1e-7);
}

TEST_CASE("experiment config applies defaults and rejects junk", "[harness]") {
  const json minimal = json::parse(
      R"({"problem": "quadratic", "lambda": 2, "beta": 1.0,
          "map": {"base": "quadratic", "Q": [[1, 0], [0, 1]]}})");
  const ExperimentConfig cfg = config_from_json(minimal);
  CHECK(cfg.lambda == 2);
  CHECK(cfg.box_radius == 3);
  CHECK(cfg.pair_limit == 500);
  CHECK(cfg.stop.tol == 1e-10);
  CHECK(cfg.stop.n_max == 64);
  CHECK(cfg.residual_tol == 1e-8);
  CHECK(cfg.relation == "diagonal-augmented");

  CHECK_THROWS(config_from_json(json::parse(R"({"problem": "cubic"})")));
  CHECK_THROWS(config_from_json(json::parse(R"({"problem": "additive", "beta": 1.0})")));
}

TEST_CASE("run_experiment end to end", "[harness]") {
  SECTION("exact additive config passes with zero bound") {
    ExperimentConfig cfg;
    cfg.problem = ProblemKind::additive;
    cfg.M = Rational(1);
    cfg.beta = 1.0;
    cfg.map = MapModel::linear({2, 3});
    const StabilityReport r = run_experiment(cfg);
    CHECK(r.pass.ok());
    CHECK(r.defect.epsilon == 0.0);
    CHECK(r.bound == 0.0);
    CHECK(r.config.problem == "additive");
    CHECK(r.config.map_base == "linear");
  }
  SECTION("exact quadratic config passes") {
    ExperimentConfig cfg;
    cfg.problem = ProblemKind::quadratic;
    cfg.lambda = 2;
    cfg.beta = 1.0;
    cfg.map = MapModel::quadratic({{1, 0}, {0, 1}});
    const StabilityReport r = run_experiment(cfg);
    CHECK(r.pass.ok());
    CHECK(r.defect.epsilon == 0.0);
  }
  SECTION("invalid parameters become failure entries") {
    ExperimentConfig cfg;
    cfg.problem = ProblemKind::additive;
    cfg.beta = 1.0;
    cfg.map = MapModel::zero(1);

    cfg.M = Rational(1, 2);
    CHECK(run_experiment(cfg).pass.failure_code == kInvalidM);
    cfg.M = Rational(0);
    CHECK(run_experiment(cfg).pass.failure_code == kInvalidM);
    cfg.M = Rational(1, 4);
    CHECK(run_experiment(cfg).pass.failure_code == kConditionViolation);
    cfg.M = Rational(1);
    cfg.beta = 1.5;
    CHECK(run_experiment(cfg).pass.failure_code == kInvalidArgument);

    ExperimentConfig q;
    q.problem = ProblemKind::quadratic;
    q.lambda = 0;
    q.beta = 1.0;
    q.map = MapModel::zero(1);
    CHECK(run_experiment(q).pass.failure_code == kInvalidLambda);
    q.lambda = 1;
    q.beta = 0.5;  // stated condition fails at lambda = 1, beta = 1/2
    CHECK(run_experiment(q).pass.failure_code == kConditionViolation);
  }
}

TEST_CASE("reports are deterministic modulo timing", "[harness]") {
  ExperimentConfig cfg;
  cfg.problem = ProblemKind::additive;
  cfg.M = Rational(1);
  cfg.beta = 1.0;
  cfg.map = MapModel::linear({2, 3}).with_noise(5, 0.01);
  cfg.box_radius = 2;
  cfg.pair_limit = 150;

  json j1 = report_to_json(run_experiment(cfg));
  json j2 = report_to_json(run_experiment(cfg));
  j1.erase("timing");
  j2.erase("timing");
  CHECK(j1.dump() == j2.dump());
}

TEST_CASE("report JSON round-trips to an equal report", "[harness]") {
  ExperimentConfig cfg;
  cfg.problem = ProblemKind::quadratic;
  cfg.lambda = 2;
  cfg.beta = 1.0;
  cfg.map = MapModel::quadratic({{2, 1}, {1, 3}}).with_noise(3, 0.001);
  cfg.box_radius = 2;
  cfg.pair_limit = 100;

  const StabilityReport r = run_experiment(cfg);
  const json j = report_to_json(r);
  const json back = report_to_json(report_from_json(j));
  CHECK(j == back);

  const std::vector<std::string> expected_keys = {"config",    "defect",    "conditions",
                                                  "series",    "bound",     "distances",
                                                  "residuals", "pass",      "timing"};
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == expected_keys);
}

TEST_CASE("trace CSV format", "[harness]") {
  SECTION("n = 0 row carries A = 1/1, B = 0/1") {
    IterationTrace trace;
    TraceStep s;
    s.n = 0;
    s.g_value = {5.0};
    s.step_norm = 0.0;
    s.h_value = 0.0;
    trace.steps.push_back(s);
    const std::string csv = trace_to_csv(trace);
    CHECK(csv == "n,A_num,A_den,B_num,B_den,step_norm,h_value\n0,1,1,0,1,0,0\n");
  }
  SECTION("empty trace is header-only") {
    CHECK(trace_to_csv(IterationTrace{}) == "n,A_num,A_den,B_num,B_den,step_norm,h_value\n");
  }
}

TEST_CASE("report files round-trip on disk", "[harness]") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ostab_harness_test";
  fs::create_directories(dir);

  ExperimentConfig cfg;
  cfg.problem = ProblemKind::additive;
  cfg.M = Rational(2);
  cfg.beta = 1.0;
  cfg.map = MapModel::zero(1).with_noise(1, 0.1);
  cfg.box_radius = 2;
  cfg.pair_limit = 100;
  const StabilityReport r = run_experiment(cfg);

  const std::string jpath = (dir / "report.json").string();
  write_report(r, jpath, ReportFormat::json);
  const StabilityReport back = read_report(jpath);
  CHECK(report_to_json(back) == report_to_json(r));

  const std::string cpath = (dir / "trace.csv").string();
  write_report(r, cpath, ReportFormat::csv);
  std::ifstream in(cpath);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,A_num,A_den,B_num,B_den,step_norm,h_value");

  CHECK_THROWS_AS(write_report(r, (dir / "missing" / "x.json").string(), ReportFormat::json),
                  Error);
  CHECK_THROWS_AS(read_report((dir / "nope.json").string()), Error);
  fs::remove_all(dir);
}
