#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "imprec/recognizer.hpp"

using namespace imprec;

namespace {

constexpr double kEps = 1e-9;

// Two-goal abstract scenario: Goal 1 landmarks {a,b,c,d}, Goal 2 {a,b,c};
// c definite, a/d possible, b overlooked; achieved {b,c,d} and {b,c}.
struct TwoGoalSets {
  LandmarkSet s1, s2;
  AchievedSet a1, a2;
};

TwoGoalSets two_goal_scenario() {
  // fact ids: a=0 b=1 c=2 d=3
  TwoGoalSets tg;
  tg.s1.definite = {2};
  tg.s1.possible = {0, 3};
  tg.s1.overlooked = {1};
  tg.s2.definite = {2};
  tg.s2.possible = {0};
  tg.s2.overlooked = {1};
  tg.a1.definite = {2};
  tg.a1.possible = {3};
  tg.a1.overlooked = {1};
  tg.a2.definite = {2};
  tg.a2.overlooked = {1};
  return tg;
}

GroundedProblem blocks_with_obs(std::size_t n_obs) {
  GroundedProblem gp = ground_problem(testutil::load_bundle("blocks"));
  // the worked two-step observation is the [2,3] slice of the full plan
  if (n_obs == 2)
    gp.obs = {gp.task.action_ids.at("(unstack e a)"),
              gp.task.action_ids.at("(stack e d)")};
  else
    gp.obs.resize(n_obs);
  return gp;
}

}  // namespace

TEST_CASE("heuristic and kind-mask parsing") {
  Heuristic h;
  CHECK(parse_heuristic("gc_enhanced", h));
  CHECK(h == Heuristic::GcEnhanced);
  CHECK(parse_heuristic("uniq_baseline", h));
  CHECK_FALSE(parse_heuristic("bogus", h));
  CHECK(heuristic_name(Heuristic::GcBaseline) == "gc_baseline");

  HeuristicConfig cfg;
  parse_kinds("do", cfg);
  CHECK(cfg.use_definite);
  CHECK_FALSE(cfg.use_possible);
  CHECK(cfg.use_overlooked);
  CHECK_THROWS_AS(parse_kinds("DX", cfg), std::invalid_argument);
  CHECK_THROWS_AS(parse_kinds("", cfg), std::invalid_argument);
}

TEST_CASE("enhanced goal-completion arithmetic on the two-goal scenario") {
  TwoGoalSets tg = two_goal_scenario();
  HeuristicConfig cfg;
  CHECK(score_gc_enhanced(tg.s1, tg.a1, cfg) ==
        doctest::Approx(0.75).epsilon(kEps));
  CHECK(score_gc_enhanced(tg.s2, tg.a2, cfg) ==
        doctest::Approx(2.0 / 3).epsilon(kEps));
  // all landmarks achieved -> 1
  CHECK(score_gc_enhanced(tg.s2, AchievedSet{{2}, {0}, {1}}, cfg) == 1.0);
  // empty sets -> 0, not NaN
  CHECK(score_gc_enhanced(LandmarkSet{}, AchievedSet{}, cfg) == 0.0);
}

TEST_CASE("enhanced uniqueness arithmetic on the two-goal scenario") {
  TwoGoalSets tg = two_goal_scenario();
  auto ud = uniqueness({&tg.s1.definite, &tg.s2.definite});
  auto up = uniqueness({&tg.s1.possible, &tg.s2.possible});
  auto uo = uniqueness({&tg.s1.overlooked, &tg.s2.overlooked});
  HeuristicConfig cfg;
  double s1 = score_uniq_enhanced(tg.s1, tg.a1, ud, up, uo, cfg);
  double s2 = score_uniq_enhanced(tg.s2, tg.a2, ud, up, uo, cfg);
  CHECK(s1 == doctest::Approx(0.80).epsilon(kEps));
  CHECK(s2 == doctest::Approx(2.0 / 3).epsilon(kEps));
  CHECK(s1 > s2);  // Goal 1 wins

  // argmax is invariant to scaling every weight by a positive constant
  auto scale = [](std::unordered_map<int, double> m) {
    for (auto& [k, v] : m) v *= 7.5;
    return m;
  };
  double t1 = score_uniq_enhanced(tg.s1, tg.a1, scale(ud), scale(up),
                                  scale(uo), cfg);
  double t2 = score_uniq_enhanced(tg.s2, tg.a2, scale(ud), scale(up),
                                  scale(uo), cfg);
  CHECK((t1 > t2) == (s1 > s2));
}

TEST_CASE("baseline goal completion on the blocks worked example") {
  GroundedProblem gp = blocks_with_obs(2);
  HeuristicConfig cfg;
  cfg.heuristic = Heuristic::GcBaseline;
  RecognitionResult r = recognize_grounded(gp, cfg);
  REQUIRE(r.scores.size() == 3);
  CHECK(r.scores[0] == doctest::Approx(2.0 / 3).epsilon(kEps));     // 0.66
  CHECK(r.scores[1] == doctest::Approx(13.0 / 24).epsilon(kEps));   // 0.54
  CHECK(r.scores[2] == doctest::Approx(7.0 / 12).epsilon(kEps));    // 0.58
  CHECK(r.returned == std::vector<int>{0});
  CHECK(r.hit);
  CHECK(r.spread == 1);
}

TEST_CASE("baseline uniqueness on the blocks worked example") {
  GroundedProblem gp = blocks_with_obs(2);
  HeuristicConfig cfg;
  cfg.heuristic = Heuristic::UniqBaseline;
  RecognitionResult r = recognize_grounded(gp, cfg);
  CHECK(r.scores[0] == doctest::Approx(11.0 / 19).epsilon(kEps));  // 3.66/6.33
  CHECK(r.scores[1] == doctest::Approx(8.0 / 19).epsilon(kEps));   // 2.66/6.33
  CHECK(r.scores[2] == doctest::Approx(11.0 / 25).epsilon(kEps));  // 3.66/8.33
  CHECK(r.returned == std::vector<int>{0});
  CHECK(r.hit);
}

TEST_CASE("full observation drives the hidden blocks goal to score 1") {
  GroundedProblem gp = blocks_with_obs(6);
  HeuristicConfig cfg;
  cfg.heuristic = Heuristic::GcBaseline;
  RecognitionResult r = recognize_grounded(gp, cfg);
  CHECK(r.scores[0] == doctest::Approx(1.0).epsilon(kEps));
  CHECK(r.returned == std::vector<int>{0});

  // saturated threshold returns every hypothesis
  cfg.theta = 1.0;
  r = recognize_grounded(gp, cfg);
  CHECK(r.returned == std::vector<int>{0, 1, 2});
  CHECK(r.spread == 3);
}

TEST_CASE("enhanced recognition on the abstract bundle") {
  GroundedProblem gp = ground_problem(testutil::load_bundle("abstract"));
  HeuristicConfig cfg;
  RecognitionResult r = recognize_grounded(gp, cfg);
  REQUIRE(r.scores.size() == 1);
  CHECK(r.scores[0] == doctest::Approx(1.0).epsilon(kEps));
  CHECK(r.hit);
  CHECK(r.counts[0][0] == 3);  // p, r, g definite
  CHECK(r.counts[0][1] == 1);  // q possible

  // definite-only ablation still scores 1 with the full observation
  parse_kinds("D", cfg);
  r = recognize_grounded(gp, cfg);
  CHECK(r.scores[0] == doctest::Approx(1.0).epsilon(kEps));
}

TEST_CASE("unreachable hypotheses score zero and are excluded") {
  GroundedProblem gp = ground_problem(testutil::load_bundle("abstract"));
  int dead = gp.task.facts.intern("(dead)");
  // re-size init to the grown fact table
  Bits init(gp.task.facts.size());
  for (int f : gp.task.init.to_ids()) init.set(static_cast<std::size_t>(f));
  gp.task.init = init;
  gp.hyp_goals.push_back({dead});
  for (auto h :
       {Heuristic::GcEnhanced, Heuristic::UniqEnhanced, Heuristic::GcBaseline,
        Heuristic::UniqBaseline}) {
    HeuristicConfig cfg;
    cfg.heuristic = h;
    RecognitionResult r = recognize_grounded(gp, cfg);
    CHECK(r.scores[1] == 0.0);
    CHECK(r.returned == std::vector<int>{0});
  }
  // all hypotheses unreachable: everything returned, flagged
  gp.hyp_goals = {{dead}};
  gp.hidden = 0;
  HeuristicConfig cfg;
  RecognitionResult r = recognize_grounded(gp, cfg);
  CHECK(r.all_unreachable);
  CHECK(r.returned == std::vector<int>{0});
  CHECK(r.hit);
}

TEST_CASE("soundness: full observations rank the hidden goal on top") {
  std::mt19937_64 gen(101);
  int rounds = 0;
  while (rounds < 60) {
    auto prob = testutil::gen_random_problem(gen);
    if (!prob) continue;
    ++rounds;
    GroundedProblem gp;
    gp.task = prob->task;
    gp.hyp_goals = prob->hyps;
    gp.hidden = prob->hidden;
    gp.obs = prob->plan_ids;
    gp.task.goal = gp.hyp_goals[static_cast<std::size_t>(gp.hidden)];
    HeuristicConfig cfg;
    cfg.heuristic = Heuristic::GcBaseline;
    RecognitionResult r = recognize_grounded(gp, cfg);
    double best = *std::max_element(r.scores.begin(), r.scores.end());
    CHECK(r.scores[static_cast<std::size_t>(gp.hidden)] ==
          doctest::Approx(best).epsilon(kEps));
    CHECK(r.hit);
  }
}

TEST_CASE("monotonicity: scores never drop as observations grow") {
  std::mt19937_64 gen(202);
  int rounds = 0;
  while (rounds < 40) {
    auto prob = testutil::gen_random_problem(gen);
    if (!prob) continue;
    ++rounds;
    GroundedProblem gp;
    gp.task = prob->task;
    gp.hyp_goals = prob->hyps;
    gp.hidden = prob->hidden;
    gp.task.goal = gp.hyp_goals[static_cast<std::size_t>(gp.hidden)];
    for (auto h : {Heuristic::GcBaseline, Heuristic::GcEnhanced}) {
      std::vector<double> last(gp.hyp_goals.size(), -1.0);
      for (std::size_t k = 0; k <= prob->plan_ids.size(); ++k) {
        gp.obs.assign(prob->plan_ids.begin(),
                      prob->plan_ids.begin() + static_cast<std::ptrdiff_t>(k));
        HeuristicConfig cfg;
        cfg.heuristic = h;
        RecognitionResult r = recognize_grounded(gp, cfg);
        for (std::size_t i = 0; i < r.scores.size(); ++i) {
          CHECK(r.scores[i] >= last[i] - kEps);
          last[i] = r.scores[i];
        }
      }
    }
  }
}

TEST_CASE("cooperative deadline raises a timeout") {
  GroundedProblem gp = blocks_with_obs(6);
  HeuristicConfig cfg;
  cfg.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  CHECK_THROWS_AS(recognize_grounded(gp, cfg), TimeoutError);
}
