#include "imprec/graphs.hpp"

#include <algorithm>

namespace imprec {

namespace {

bool achieves(const IncompleteAction& a, int f, GraphMode mode) {
  if (std::find(a.add.begin(), a.add.end(), f) != a.add.end()) return true;
  if (mode == GraphMode::Optimistic &&
      std::find(a.poss_add.begin(), a.poss_add.end(), f) != a.poss_add.end())
    return true;
  return false;
}

}  // namespace

std::vector<int> achievers_of(const GroundedTask& task, int f, GraphMode mode) {
  std::vector<int> out;
  for (std::size_t i = 0; i < task.actions.size(); ++i)
    if (achieves(task.actions[i], f, mode)) out.push_back(static_cast<int>(i));
  return out;
}

LeveledGraph build_graph(const GroundedTask& task, const std::vector<int>& goal,
                         GraphMode mode, int excluded_achievers_of,
                         bool strict_exclude) {
  LeveledGraph g;
  g.mode = mode;
  g.first_level.assign(task.facts.size(), -1);

  std::vector<char> excluded(task.actions.size(), 0);
  if (excluded_achievers_of >= 0)
    for (std::size_t i = 0; i < task.actions.size(); ++i)
      if (achieves(task.actions[i], excluded_achievers_of, mode))
        excluded[i] = 1;

  Bits cur = task.init;
  if (strict_exclude && excluded_achievers_of >= 0)
    cur.reset(static_cast<std::size_t>(excluded_achievers_of));
  for (int f : cur.to_ids()) g.first_level[static_cast<std::size_t>(f)] = 0;
  g.fact_levels.push_back(cur);

  auto goal_in = [&](const Bits& s) {
    for (int f : goal)
      if (!s.test(static_cast<std::size_t>(f))) return false;
    return true;
  };

  std::vector<char> applied(task.actions.size(), 0);
  while (true) {
    const Bits& f = g.fact_levels.back();
    if (goal_in(f)) {
      g.goal_reached = true;
      // Still record the final action level for introspection.
    }
    std::vector<int> level_actions;
    Bits next = f;
    for (std::size_t i = 0; i < task.actions.size(); ++i) {
      if (excluded[i]) continue;
      if (applied[i] || applicable(f, task.actions[i])) {
        applied[i] = 1;
        level_actions.push_back(static_cast<int>(i));
        for (int a : task.actions[i].add) next.set(static_cast<std::size_t>(a));
        if (mode == GraphMode::Optimistic)
          for (int a : task.actions[i].poss_add)
            next.set(static_cast<std::size_t>(a));
      }
    }
    g.action_levels.push_back(std::move(level_actions));
    if (g.goal_reached) break;
    if (next == f) break;  // fixpoint
    int lvl = static_cast<int>(g.fact_levels.size());
    for (int id : next.to_ids())
      if (g.first_level[static_cast<std::size_t>(id)] < 0)
        g.first_level[static_cast<std::size_t>(id)] = lvl;
    g.fact_levels.push_back(std::move(next));
  }
  return g;
}

LeveledGraph build_rpg(const GroundedTask& task, const std::vector<int>& goal) {
  LeveledGraph g = build_graph(task, goal, GraphMode::Classical);
  if (!g.goal_reached) throw BuildFailure("goal unreachable in relaxed graph");
  return g;
}

LeveledGraph build_orpg(const GroundedTask& task, const std::vector<int>& goal,
                        int excluded_achievers_of, bool strict_exclude) {
  LeveledGraph g = build_graph(task, goal, GraphMode::Optimistic,
                               excluded_achievers_of, strict_exclude);
  if (!g.goal_reached)
    throw BuildFailure("goal unreachable in optimistic relaxed graph");
  return g;
}

bool is_landmark(int f, const GroundedTask& task, const std::vector<int>& goal,
                 GraphMode mode, bool strict) {
  LeveledGraph g = build_graph(task, goal, mode, f, strict);
  return !g.goal_reached;
}

}  // namespace imprec
