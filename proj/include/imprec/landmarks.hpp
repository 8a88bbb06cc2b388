#pragma once

#include <unordered_map>
#include <vector>

#include "imprec/graphs.hpp"
#include "imprec/strips.hpp"

namespace imprec {

struct GoalUnreachable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Landmarks of one goal over an incomplete task. definite: witnessed through
// a known add edge (or goal fact / initial-state candidate); possible: only
// through possible add edges; overlooked: harvested during observation
// replay. The three sets are pairwise disjoint.
struct LandmarkSet {
  std::vector<int> definite, possible, overlooked;  // sorted fact ids
  std::vector<std::vector<int>> together;  // conjunctive groups, debug only

  bool contains(int f) const;
};

LandmarkSet extract_incomplete(const GroundedTask& task,
                               const std::vector<int>& goal,
                               bool strict_islandmark = false);

// Conjunctive landmark tree for a complete (or known-projected) task. Each
// atomic subgoal roots its own chain; groups are deduplicated globally by
// content, and preds[i] lists groups that must hold before group i.
struct OrderedLandmarks {
  std::vector<int> goal;  // atomic subgoals, caller order
  std::vector<std::vector<int>> groups;
  std::vector<std::vector<int>> preds;
  std::vector<std::vector<int>> subgoal_groups;  // per subgoal: group indices
};

OrderedLandmarks extract_ordered_complete(const GroundedTask& task,
                                          const std::vector<int>& goal);

// Candidates are the known preconditions, known adds, and possible adds of
// the observed action that are not yet landmarks of any kind; each candidate
// passing the deletion test is returned (fact-id order).
std::vector<int> extract_overlooked(const GroundedTask& task,
                                    const std::vector<int>& goal,
                                    const IncompleteAction& obs,
                                    const LandmarkSet& known,
                                    bool strict_islandmark = false);

struct AchievedSet {
  std::vector<int> definite, possible, overlooked;  // sorted fact ids
};

// Per-fact achieved landmarks: seeded with landmarks true in I, then each
// observed action marks landmarks in its known pre, known add, and possible
// add lists. No order inference on this path.
AchievedSet compute_achieved(const GroundedTask& task, const LandmarkSet& lms,
                             const std::vector<int>& obs_action_ids);

// Facts witnessed by the observation replay: I plus pre/add/poss_add of every
// observed action. Feeds the group-achievement rule below.
Bits marked_facts(const GroundedTask& task,
                  const std::vector<int>& obs_action_ids);

// A group counts as achieved when a strict majority of its facts is marked;
// achievement then propagates to all (transitive) predecessor groups.
std::vector<char> achieved_groups(const OrderedLandmarks& lms,
                                  const Bits& marked);

// Per-kind inverse frequency: 1 / number of goals whose set contains the
// fact. One call per kind (definite, possible, overlooked).
std::unordered_map<int, double> uniqueness(
    const std::vector<const std::vector<int>*>& kind_sets_per_goal);

// Pooled inverse frequency over group contents across all goals' trees.
struct GroupUniqueness {
  // per goal, per group index of that goal's OrderedLandmarks: weight
  std::vector<std::vector<double>> weights;
};
GroupUniqueness group_uniqueness(const std::vector<OrderedLandmarks>& per_goal);

}  // namespace imprec
