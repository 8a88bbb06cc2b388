#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "imprec/dataset.hpp"
#include "imprec/pddl.hpp"
#include "imprec/strips.hpp"

namespace testutil {

inline std::string fixture(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

inline imprec::RecognitionProblem load_bundle(const std::string& name) {
  return imprec::parse_recognition_bundle(fixture(name));
}

// Random complete task with a few reachable, pairwise non-subset hypotheses
// and a BFS plan for the hidden goal. Used by the soundness / monotonicity
// property suites.
struct RandomProblem {
  imprec::GroundedTask task;
  std::vector<std::vector<int>> hyps;
  int hidden = 0;
  std::vector<std::string> plan;
  std::vector<int> plan_ids;
};

inline std::optional<RandomProblem> gen_random_problem(std::mt19937_64& gen) {
  auto draw = [&](std::size_t n) {
    return static_cast<std::size_t>(gen() % n);
  };
  imprec::GroundedTask task;
  std::size_t nf = 4 + draw(7);  // 4..10 facts
  for (std::size_t i = 0; i < nf; ++i)
    task.facts.intern("(f" + std::to_string(i) + ")");
  std::size_t na = 3 + draw(6);  // 3..8 actions
  for (std::size_t i = 0; i < na; ++i) {
    imprec::IncompleteAction a;
    a.name = "(act" + std::to_string(i) + ")";
    auto pick_set = [&](std::size_t max_n) {
      std::vector<int> out;
      std::size_t k = draw(max_n + 1);
      while (out.size() < k) {
        int f = static_cast<int>(draw(nf));
        bool dup = false;
        for (int x : out) dup |= x == f;
        if (!dup) out.push_back(f);
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    a.pre = pick_set(2);
    a.add = pick_set(2);
    if (a.add.empty()) a.add.push_back(static_cast<int>(draw(nf)));
    a.del = pick_set(2);
    // within an action a fact is added or deleted, not both
    std::vector<int> del;
    for (int f : a.del) {
      bool in_add = false;
      for (int x : a.add) in_add |= x == f;
      if (!in_add) del.push_back(f);
    }
    a.del = del;
    task.action_ids.emplace(a.name, static_cast<int>(task.actions.size()));
    task.actions.push_back(std::move(a));
  }
  std::vector<int> init;
  for (std::size_t f = 0; f < nf; ++f)
    if (draw(3) == 0) init.push_back(static_cast<int>(f));
  task.init = task.make_state(init);

  std::size_t nh = 2 + draw(3);  // 2..4 hypotheses
  std::vector<std::vector<int>> hyps;
  for (int tries = 0; tries < 60 && hyps.size() < nh; ++tries) {
    std::vector<int> g;
    std::size_t k = 1 + draw(2);
    while (g.size() < k) {
      int f = static_cast<int>(draw(nf));
      bool dup = false;
      for (int x : g) dup |= x == f;
      if (!dup) g.push_back(f);
    }
    std::sort(g.begin(), g.end());
    bool ok = true;
    for (const auto& h : hyps) {
      bool sub_ab = std::includes(h.begin(), h.end(), g.begin(), g.end());
      bool sub_ba = std::includes(g.begin(), g.end(), h.begin(), h.end());
      if (sub_ab || sub_ba) ok = false;
    }
    if (!ok) continue;
    try {
      imprec::bfs_plan(task, g);
    } catch (const std::exception&) {
      continue;
    }
    hyps.push_back(std::move(g));
  }
  if (hyps.size() < 2) return std::nullopt;

  RandomProblem rp;
  rp.task = std::move(task);
  rp.hyps = std::move(hyps);
  rp.hidden = static_cast<int>(draw(rp.hyps.size()));
  rp.plan = imprec::bfs_plan(rp.task, rp.hyps[static_cast<std::size_t>(rp.hidden)]);
  for (const auto& s : rp.plan) rp.plan_ids.push_back(rp.task.action_ids.at(s));
  return rp;
}

}  // namespace testutil
