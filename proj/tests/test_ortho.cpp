#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ostab/ortho.hpp"

using namespace ostab;

TEST_CASE("related evaluates the shipped kinds exactly", "[ortho]") {
  const auto ip = OrthoRelation::inner_product();
  CHECK(related(ip, make_point({1, 0}), make_point({0, 5})));
  CHECK_FALSE(related(ip, make_point({1, 1}), make_point({1, 1})));
  CHECK(related(OrthoRelation::trivial(), make_point({7, -3}), make_point({2, 2})));

  const auto da = OrthoRelation::diagonal_augmented();
  CHECK(related(da, make_point({2, 1}), make_point({2, 1})));
  CHECK(related(da, make_point({2, 1}), make_point({-2, -1})));
  CHECK(related(da, make_point({1, 0}), make_point({0, 5})));
  CHECK_FALSE(related(da, make_point({1, 0}), make_point({1, 1})));

  CHECK_THROWS_AS(related(ip, make_point({1, 0}), make_point({1, 0, 0})),
                  std::invalid_argument);
}

TEST_CASE("diagonal-augmented relates every diagonal form", "[ortho][property]") {
  const auto da = OrthoRelation::diagonal_augmented();
  detail::SampleStream rng(3);
  for (int i = 0; i < 200; ++i) {
    const GroupPoint x = make_point({rng.integer(-50, 50), rng.integer(-50, 50)});
    CHECK(related(da, x, x));
    CHECK(related(da, x, -x));
    CHECK(related(da, -x, -x));
  }
}

TEST_CASE("inner-product respects negation and doubling on related pairs", "[ortho][property]") {
  const auto ip = OrthoRelation::inner_product();
  for (const auto& [x, y] : orthogonal_pairs(ip, 2, 3, 300)) {
    CHECK(related(ip, x, -y));
    CHECK(related(ip, -x, y));
    CHECK(related(ip, x + x, y + y));
  }
}

TEST_CASE("fs axioms hold for the shipped relations", "[ortho]") {
  for (const auto& rel : {OrthoRelation::inner_product(), OrthoRelation::trivial(),
                          OrthoRelation::diagonal_augmented()}) {
    const AxiomReport report = check_fs_axioms(rel, 2, 10000, 5);
    INFO(report.subject);
    CHECK(report.all_passed());
    CHECK(report.find("fs-2-witness-existence")->status == CheckStatus::passed);
  }
}

TEST_CASE("fs witness is unavailable for inner-product beyond dimension 2", "[ortho]") {
  const AxiomReport report = check_fs_axioms(OrthoRelation::inner_product(), 3, 500, 5);
  CHECK(report.find("fs-2-witness-existence")->status == CheckStatus::not_checkable);
  // never a silent pass, but not a failure either
  CHECK(report.all_passed());
}

TEST_CASE("diagonal-only relation fails fs law 1 with a counterexample", "[ortho]") {
  const auto diag = OrthoRelation::custom(
      "diagonal-only", [](const GroupPoint& a, const GroupPoint& b) { return a == b; });
  const AxiomReport report = check_fs_axioms(diag, 2, 1000, 5);
  const AxiomCheck* law1 = report.find("fs-1-negation-and-doubling");
  REQUIRE(law1 != nullptr);
  CHECK(law1->status == CheckStatus::failed);
  CHECK(law1->counterexample.find("x ~ -y") != std::string::npos);
}

TEST_CASE("gc axioms", "[ortho]") {
  SECTION("inner-product passes; law (b) applies only at zero") {
    const AxiomReport report = check_gc_axioms(OrthoRelation::inner_product(), 2, 1000, 5);
    CHECK(report.all_passed());
    CHECK(report.find("gc-b-diagonal-implies-negation")->nonvacuous == 1);
  }
  SECTION("diagonal-augmented passes non-vacuously") {
    const AxiomReport report = check_gc_axioms(OrthoRelation::diagonal_augmented(), 2, 1000, 5);
    CHECK(report.all_passed());
    CHECK(report.find("gc-b-diagonal-implies-negation")->nonvacuous > 1);
  }
  SECTION("empty relation fails the zero-pair law") {
    const auto empty = OrthoRelation::custom(
        "empty", [](const GroupPoint&, const GroupPoint&) { return false; });
    const AxiomReport report = check_gc_axioms(empty, 2, 100, 5);
    const AxiomCheck* lawA = report.find("gc-a-zero-pairs");
    CHECK(lawA->status == CheckStatus::failed);
    CHECK_FALSE(lawA->counterexample.empty());
  }
}

TEST_CASE("sec3 axioms", "[ortho]") {
  CHECK(check_sec3_axioms(OrthoRelation::diagonal_augmented(), 2, 1000, 5).all_passed());
  CHECK(check_sec3_axioms(OrthoRelation::trivial(), 2, 1000, 5).all_passed());
  const AxiomReport ip = check_sec3_axioms(OrthoRelation::inner_product(), 2, 1000, 5);
  CHECK(ip.all_passed());
  // only the origin sits on the inner-product diagonal
  CHECK(ip.find("sec3-b-diagonal-closure")->nonvacuous == 1);
}

TEST_CASE("ratz witness reproduces hand-computed cases", "[ortho]") {
  const auto y1 = ratz_witness({1.0, 0.0}, 4.0);
  CHECK(std::abs(y1[0] - 0.0) < 1e-12);
  CHECK(std::abs(y1[1] - 2.0) < 1e-12);

  const auto y2 = ratz_witness({3.0, 4.0}, 1.0);
  CHECK(std::abs(y2[0] - (-4.0)) < 1e-12);
  CHECK(std::abs(y2[1] - 3.0) < 1e-12);

  // x = 0 gets the zero witness
  const auto y3 = ratz_witness({0.0, 0.0}, 2.0);
  CHECK(y3 == std::vector<double>{0.0, 0.0});
}

TEST_CASE("ratz axioms pass in dimensions 2 and 3", "[ortho]") {
  CHECK(check_ratz_axioms(2, 1000, 11).all_passed());
  CHECK(check_ratz_axioms(3, 500, 11).all_passed());
  CHECK_THROWS_AS(check_ratz_axioms(1, 100, 11), std::invalid_argument);
}

TEST_CASE("orthogonal_pairs enumerates deterministically", "[ortho]") {
  const auto ip = OrthoRelation::inner_product();
  const auto pairs = orthogonal_pairs(ip, 2, 1, 1000);
  const auto has = [&pairs](const GroupPoint& a, const GroupPoint& b) {
    for (const auto& [x, y] : pairs)
      if (x == a && y == b) return true;
    return false;
  };
  CHECK(has(make_point({1, 0}), make_point({0, 1})));
  CHECK(has(make_point({0, 0}), make_point({1, 1})));
  for (const auto& [x, y] : pairs) CHECK(related(ip, x, y));

  CHECK(orthogonal_pairs(ip, 2, 1, 1).size() == 1);
  CHECK(orthogonal_pairs(OrthoRelation::trivial(), 2, 1, 81).size() == 81);
  CHECK(orthogonal_pairs(ip, 2, 2, 5000) == orthogonal_pairs(ip, 2, 2, 5000));
  CHECK_THROWS_AS(orthogonal_pairs(ip, 2, 1, 0), std::invalid_argument);
}
