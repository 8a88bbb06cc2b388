#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "imprec/pddl.hpp"

using namespace imprec;

TEST_CASE("abstract domain parses with possible annotations") {
  LiftedDomain d = parse_domain(read_file(testutil::fixture("abstract/domain.pddl")));
  CHECK(d.name == "abstract");
  CHECK_FALSE(d.typing);
  REQUIRE(d.operators.size() == 3);
  const auto& a = d.operators[0];
  CHECK(a.name == "a");
  CHECK(a.pre.size() == 2);
  CHECK(a.add.empty());
  CHECK(a.poss_pre.size() == 1);
  CHECK(a.poss_add.size() == 1);
  CHECK(a.poss_del.size() == 1);
  CHECK(a.poss_count() == 3);
  const auto& b = d.operators[1];
  CHECK(b.add.size() == 1);
  CHECK(b.del.size() == 1);
  CHECK(b.poss_del.size() == 1);
  CHECK(d.operators[2].poss_pre.size() == 1);
}

TEST_CASE("serialization round-trips structurally") {
  for (const char* name : {"abstract/domain.pddl", "blocks/domain.pddl",
                           "synthetic/domain.pddl"}) {
    LiftedDomain d = parse_domain(read_file(testutil::fixture(name)));
    LiftedDomain d2 = parse_domain(serialize_domain(d));
    CHECK(structurally_equal(d, d2));
  }
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_domain("(define (domain x)"), ParseError);
  CHECK_THROWS_AS(parse_domain("(define (domain x) (:junk))"), ParseError);
  CHECK_THROWS_AS(
      parse_domain("(define (domain x) (:predicates (p)) "
                   "(:action a :parameters () :precondition (q) :effect (p)))"),
      UndeclaredPredicate);
  CHECK_THROWS_AS(
      parse_domain("(define (domain x) (:predicates (p ?a - object)) "
                   "(:action a :parameters () :precondition (p) :effect (and)))"),
      ArityMismatch);
  CHECK_THROWS_AS(read_file(testutil::fixture("no-such-file")), MissingFile);
}

TEST_CASE("problem files and comments") {
  ProblemFile pf = parse_problem(
      "; a comment\n(define (problem t) (:domain blocks)\n"
      "  (:objects A b - block C)\n  (:init (ON a B) (clear c)))");
  CHECK(pf.name == "t");
  REQUIRE(pf.objects.size() == 3);
  CHECK(pf.objects[0].name == "a");
  CHECK(pf.objects[0].type == "block");
  CHECK(pf.objects[2].type == "object");  // untyped tail defaults
  REQUIRE(pf.init.size() == 2);
  CHECK(pf.init[0] == "(on a b)");  // lowercased canonical atoms
}

TEST_CASE("blocks grounding instantiates typed operators") {
  RecognitionProblem rp = testutil::load_bundle("blocks");
  GroundedProblem gp = ground_problem(rp);
  // 6 pickup + 6 putdown + 36 stack + 36 unstack
  CHECK(gp.task.actions.size() == 84);
  CHECK(gp.task.action_ids.count("(stack r e)") == 1);
  CHECK(gp.task.action_ids.count("(pickup d)") == 1);
  CHECK(gp.hidden == 0);
  REQUIRE(gp.hyp_goals.size() == 3);
  CHECK(gp.hyp_goals[0].size() == 4);
  CHECK(gp.obs.size() == 6);
  CHECK(gp.task.actions[static_cast<std::size_t>(gp.obs[0])].name ==
        "(unstack d b)");
  // hidden hypothesis becomes the task goal
  std::set<int> goal(gp.task.goal.begin(), gp.task.goal.end());
  CHECK(goal.count(gp.task.facts.find("(on r e)")) == 1);
  CHECK(completion_count(gp.task).count == "1");
}

TEST_CASE("abstract bundle resolves hypotheses and observations") {
  RecognitionProblem rp = testutil::load_bundle("abstract");
  CHECK(rp.hypotheses.size() == 1);
  CHECK(rp.hidden_goal == 0);
  CHECK(rp.observations == std::vector<std::string>{"(a)", "(b)", "(c)"});
  GroundedProblem gp = ground_problem(rp);
  CHECK(gp.task.actions.size() == 3);
  CHECK(completion_count(gp.task).count == "32");
}

TEST_CASE("bundle error paths") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "imprec-bundle-test";
  fs::create_directories(dir);
  auto put = [&](const char* name, const std::string& text) {
    std::ofstream(dir / name) << text;
  };
  put("domain.pddl", read_file(testutil::fixture("abstract/domain.pddl")));
  put("template.pddl", read_file(testutil::fixture("abstract/template.pddl")));
  put("hyps.dat", "(g)\n");
  put("real_hyp.dat", "(p)\n");
  put("obs.dat", "(a)\n");
  CHECK_THROWS_AS(parse_recognition_bundle(dir.string()),
                  HiddenGoalNotInHypotheses);
  put("real_hyp.dat", "(g)\n");
  put("obs.dat", "(warp)\n");
  RecognitionProblem rp = parse_recognition_bundle(dir.string());
  CHECK_THROWS_AS(ground_problem(rp), UnresolvableObservation);
  fs::remove_all(dir);
}

TEST_CASE("known projection strips every possible list") {
  RecognitionProblem rp = testutil::load_bundle("abstract");
  LiftedDomain kd = known_projection(rp.domain);
  for (const auto& op : kd.operators) CHECK(op.poss_count() == 0);

  GroundedProblem gp = ground_problem(rp);
  GroundedTask kt = known_projection(gp.task);
  for (const auto& a : kt.actions) CHECK(a.complete());
  CHECK(completion_count(kt).count == "1");
  // known lists and names untouched
  CHECK(kt.actions.size() == gp.task.actions.size());
  CHECK(kt.actions[1].add == gp.task.actions[1].add);
}

TEST_CASE("typed list with inheritance grounds subtypes") {
  LiftedDomain d = parse_domain(
      "(define (domain h) (:requirements :typing)"
      " (:types truck car - vehicle)"
      " (:predicates (moved ?v - vehicle))"
      " (:action go :parameters (?v - vehicle)"
      "  :precondition (and) :effect (and (moved ?v))))");
  CHECK(d.is_subtype("truck", "vehicle"));
  CHECK(d.is_subtype("truck", "object"));
  CHECK_FALSE(d.is_subtype("vehicle", "truck"));
  GroundedTask t = ground(d, {{"t1", "truck"}, {"c1", "car"}, {"x", "object"}},
                          {}, {});
  CHECK(t.actions.size() == 2);  // x is not a vehicle
  CHECK(t.action_ids.count("(go t1)") == 1);
}
