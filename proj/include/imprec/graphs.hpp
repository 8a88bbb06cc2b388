#pragma once

#include <vector>

#include "imprec/strips.hpp"

namespace imprec {

struct BuildFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GraphMode { Classical, Optimistic };

// Leveled relaxed planning graph. Levels are cumulative: fact_levels[i] is
// F_i with F_i ⊆ F_{i+1}; action_levels[i] holds every action applicable at
// level i (also cumulative). Deletes are ignored in both modes; the
// optimistic mode additionally grows facts through possible add effects.
struct LeveledGraph {
  GraphMode mode = GraphMode::Classical;
  std::vector<Bits> fact_levels;
  std::vector<std::vector<int>> action_levels;
  std::vector<int> first_level;  // per fact id; -1 = never appears
  bool goal_reached = false;

  int first_level_of(int f) const {
    return first_level[static_cast<std::size_t>(f)];
  }
  const Bits& last() const { return fact_levels.back(); }
};

// Achievers of f under the graph's mode: actions with f in the known add
// list (classical) or known ∪ possible add (optimistic).
std::vector<int> achievers_of(const GroundedTask& task, int f, GraphMode mode);

// Non-throwing core builder; inspect goal_reached. excluded_achievers_of
// removes, before building, every action achieving that fact (per mode);
// with strict_exclude the fact is also dropped from the initial level.
LeveledGraph build_graph(const GroundedTask& task, const std::vector<int>& goal,
                         GraphMode mode, int excluded_achievers_of = -1,
                         bool strict_exclude = false);

// Throwing wrappers: BuildFailure when a fixpoint precedes the goal.
LeveledGraph build_rpg(const GroundedTask& task, const std::vector<int>& goal);
LeveledGraph build_orpg(const GroundedTask& task, const std::vector<int>& goal,
                        int excluded_achievers_of = -1,
                        bool strict_exclude = false);

// Deletion test: true iff the goal is unreachable once every achiever of f
// is removed. Pure test — membership of f in the initial state is handled by
// callers (back-chained candidates already true in I are accepted directly).
bool is_landmark(int f, const GroundedTask& task, const std::vector<int>& goal,
                 GraphMode mode = GraphMode::Optimistic, bool strict = false);

}  // namespace imprec
