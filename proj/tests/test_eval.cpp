#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"
#include "imprec/eval.hpp"

using namespace imprec;

namespace {

constexpr double kTight = 1e-12;

ProblemOutcome outcome(bool hit, int returned, int n_hyps) {
  ProblemOutcome o;
  o.hit = hit;
  o.returned = returned;
  o.n_hyps = n_hyps;
  return o;
}

}  // namespace

TEST_CASE("aggregation on the single-problem cases") {
  EvalRow r = aggregate({outcome(true, 1, 3)});
  CHECK(r.accuracy == doctest::Approx(1.0).epsilon(kTight));
  CHECK(r.spread == doctest::Approx(1.0).epsilon(kTight));
  CHECK(r.precision == doctest::Approx(1.0).epsilon(kTight));
  CHECK(r.recall == doctest::Approx(1.0).epsilon(kTight));
  CHECK(r.f1 == doctest::Approx(1.0).epsilon(kTight));

  r = aggregate({outcome(true, 2, 3)});  // hidden goal plus one extra
  CHECK(r.precision == doctest::Approx(0.5).epsilon(kTight));
  CHECK(r.recall == doctest::Approx(1.0).epsilon(kTight));
  CHECK(r.f1 == doctest::Approx(2.0 / 3).epsilon(kTight));
  CHECK(r.spread == doctest::Approx(2.0).epsilon(kTight));
}

TEST_CASE("aggregation over mixed problems") {
  EvalRow r = aggregate({outcome(true, 1, 3), outcome(false, 1, 3)});
  CHECK(r.accuracy == doctest::Approx(0.5).epsilon(kTight));
  CHECK(r.precision == doctest::Approx(0.5).epsilon(kTight));
  CHECK(r.recall == doctest::Approx(0.5).epsilon(kTight));
  CHECK(r.f1 == doctest::Approx(0.5).epsilon(kTight));
  // single-hidden-goal construction: accuracy equals recall
  CHECK(r.accuracy == r.recall);

  EvalRow empty = aggregate({});
  CHECK(empty.n_problems == 0);
  CHECK(empty.f1 == 0.0);
}

TEST_CASE("pearson correlation") {
  CHECK(pearson({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0).epsilon(kTight));
  CHECK(pearson({1, 2, 3}, {3, 2, 1}) == -1.0);  // exact
  CHECK(pearson({1, 2, 3, 4}, {2, 1, 4, 3}) ==
        doctest::Approx(0.6).epsilon(kTight));
  CHECK(pearson({1, 1, 1}, {1, 2, 3}) == 0.0);  // zero variance convention
  CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), LengthMismatch);
  CHECK_THROWS_AS(pearson({1}, {1}), LengthMismatch);
}

TEST_CASE("roc points") {
  auto pts = roc_points({outcome(true, 1, 5), outcome(true, 5, 5),
                         outcome(false, 1, 5), outcome(true, 1, 1)});
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].tpr == 1.0);
  CHECK(pts[0].fpr == 0.0);
  CHECK(pts[1].tpr == 1.0);
  CHECK(pts[1].fpr == doctest::Approx(1.0).epsilon(kTight));
  CHECK(pts[2].tpr == 0.0);
  CHECK(pts[2].fpr == doctest::Approx(0.25).epsilon(kTight));
  CHECK(pts[3].fpr == 0.0);  // single hypothesis: no wrong goals to return
}

TEST_CASE("evaluate runs configs over problems and aggregates rows") {
  EvalProblem p1;
  p1.gp = ground_problem(testutil::load_bundle("abstract"));
  p1.domain_name = "abstract";
  p1.incompleteness = 20;
  p1.observability = 100;
  std::vector<EvalProblem> problems;
  problems.push_back(p1);
  problems.push_back(p1);

  NamedConfig gc{"gc_dpo", {}};
  NamedConfig uq{"uniq_dpo", {}};
  uq.cfg.heuristic = Heuristic::UniqEnhanced;

  auto rows = evaluate(problems, {gc, uq}, 30.0, 2);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.n_problems == 2);
    CHECK(row.timed_out == 0);
    CHECK(row.accuracy == doctest::Approx(1.0).epsilon(kTight));
    CHECK(row.f1 == doctest::Approx(1.0).epsilon(kTight));
    CHECK(row.mean_d == doctest::Approx(3.0).epsilon(kTight));
    CHECK(row.domain_name == "abstract");
    CHECK(row.incompleteness == 20);
  }

  // a zero-length budget times every problem out
  auto timed = evaluate(problems, {gc}, 1e-9, 1);
  REQUIRE(timed.size() == 1);
  CHECK(timed[0].n_problems == 0);
  CHECK(timed[0].timed_out == 2);
}
