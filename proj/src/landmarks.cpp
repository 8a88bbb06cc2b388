#include "imprec/landmarks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace imprec {

namespace {

bool has(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::vector<int> sorted_vec(const std::set<int>& s) {
  return std::vector<int>(s.begin(), s.end());
}

}  // namespace

bool LandmarkSet::contains(int f) const {
  return has(definite, f) || has(possible, f) || has(overlooked, f);
}

LandmarkSet extract_incomplete(const GroundedTask& task,
                               const std::vector<int>& goal,
                               bool strict_islandmark) {
  LeveledGraph g = build_graph(task, goal, GraphMode::Optimistic);
  if (!g.goal_reached)
    throw GoalUnreachable("failure to extract landmarks: goal unreachable");

  auto accept = [&](int f) {
    // Back-chained candidates already true in I are landmarks by convention;
    // the deletion test cannot flag them (they need no achiever).
    if (task.init.test(static_cast<std::size_t>(f))) return true;
    return is_landmark(f, task, goal, GraphMode::Optimistic, strict_islandmark);
  };

  std::set<int> queue(goal.begin(), goal.end());
  std::set<int> seen(goal.begin(), goal.end());
  std::set<int> definite(goal.begin(), goal.end());
  std::set<int> possible;
  std::set<std::vector<int>> groups;

  while (!queue.empty()) {
    int l = *queue.begin();
    queue.erase(queue.begin());
    int lvl = g.first_level_of(l);
    if (lvl <= 0) continue;  // true in I, nothing to back-chain through
    for (int ai : g.action_levels[static_cast<std::size_t>(lvl - 1)]) {
      const auto& a = task.actions[static_cast<std::size_t>(ai)];
      bool known_edge = has(a.add, l);
      bool poss_edge = has(a.poss_add, l);
      if (!known_edge && !poss_edge) continue;
      std::vector<int> grp;
      for (int f : a.pre)
        if (accept(f)) grp.push_back(f);
      for (int f : grp) {
        if (known_edge) {
          definite.insert(f);
          possible.erase(f);
        } else if (!definite.count(f)) {
          possible.insert(f);
        }
        if (seen.insert(f).second) queue.insert(f);
      }
      if (!grp.empty()) {
        std::sort(grp.begin(), grp.end());
        groups.insert(std::move(grp));
      }
    }
  }

  LandmarkSet out;
  out.definite = sorted_vec(definite);
  out.possible = sorted_vec(possible);
  out.together.assign(groups.begin(), groups.end());
  return out;
}

OrderedLandmarks extract_ordered_complete(const GroundedTask& task,
                                          const std::vector<int>& goal) {
  LeveledGraph g = build_graph(task, goal, GraphMode::Classical);
  if (!g.goal_reached)
    throw GoalUnreachable("failure to extract landmarks: goal unreachable");

  OrderedLandmarks out;
  out.goal = goal;
  std::map<std::vector<int>, int> group_ids;
  auto get_group = [&](std::vector<int> content) {
    auto it = group_ids.find(content);
    if (it != group_ids.end()) return it->second;
    int id = static_cast<int>(out.groups.size());
    out.groups.push_back(content);
    out.preds.emplace_back();
    group_ids.emplace(std::move(content), id);
    return id;
  };
  std::set<int> goal_atoms(goal.begin(), goal.end());
  auto accept = [&](int f) {
    if (task.init.test(static_cast<std::size_t>(f))) return true;
    return is_landmark(f, task, goal, GraphMode::Classical);
  };

  for (int gfact : goal) {
    std::set<int> visited{gfact};
    std::set<int> sg_groups;
    int root = get_group({gfact});
    sg_groups.insert(root);

    // Chain each landmark to the shared preconditions of its first-level
    // achievers. Goal atoms are expanded only as their own subgoal's root.
    std::function<void(int, int)> expand = [&](int l, int child) {
      if (task.init.test(static_cast<std::size_t>(l))) return;
      int lvl = g.first_level_of(l);
      if (lvl <= 0) return;
      std::vector<int> inter;
      bool first = true;
      for (int ai : g.action_levels[static_cast<std::size_t>(lvl - 1)]) {
        const auto& a = task.actions[static_cast<std::size_t>(ai)];
        if (!has(a.add, l)) continue;
        std::vector<int> pre = a.pre;  // already sorted by the grounder
        if (first) {
          inter = std::move(pre);
          first = false;
        } else {
          std::vector<int> tmp;
          std::set_intersection(inter.begin(), inter.end(), pre.begin(),
                                pre.end(), std::back_inserter(tmp));
          inter = std::move(tmp);
        }
      }
      std::vector<int> grp;
      for (int f : inter)
        if (accept(f)) grp.push_back(f);
      if (grp.empty()) return;
      int gid = get_group(grp);
      auto& p = out.preds[static_cast<std::size_t>(child)];
      if (!has(p, gid)) p.push_back(gid);
      sg_groups.insert(gid);
      for (int f : grp) {
        if (goal_atoms.count(f)) continue;
        if (!visited.insert(f).second) continue;
        expand(f, gid);
      }
    };
    expand(gfact, root);
    out.subgoal_groups.push_back(sorted_vec(sg_groups));
  }
  return out;
}

std::vector<int> extract_overlooked(const GroundedTask& task,
                                    const std::vector<int>& goal,
                                    const IncompleteAction& obs,
                                    const LandmarkSet& known,
                                    bool strict_islandmark) {
  std::set<int> cands;
  for (const auto* lst : {&obs.pre, &obs.add, &obs.poss_add})
    for (int f : *lst)
      if (!known.contains(f)) cands.insert(f);
  std::vector<int> out;
  for (int f : cands)
    if (is_landmark(f, task, goal, GraphMode::Optimistic, strict_islandmark))
      out.push_back(f);
  return out;
}

Bits marked_facts(const GroundedTask& task,
                  const std::vector<int>& obs_action_ids) {
  Bits m = task.init;
  for (int ai : obs_action_ids) {
    const auto& a = task.actions[static_cast<std::size_t>(ai)];
    for (const auto* lst : {&a.pre, &a.add, &a.poss_add})
      for (int f : *lst) m.set(static_cast<std::size_t>(f));
  }
  return m;
}

AchievedSet compute_achieved(const GroundedTask& task, const LandmarkSet& lms,
                             const std::vector<int>& obs_action_ids) {
  Bits m = marked_facts(task, obs_action_ids);
  AchievedSet out;
  auto filter = [&](const std::vector<int>& src, std::vector<int>& dst) {
    for (int f : src)
      if (m.test(static_cast<std::size_t>(f))) dst.push_back(f);
  };
  filter(lms.definite, out.definite);
  filter(lms.possible, out.possible);
  filter(lms.overlooked, out.overlooked);
  return out;
}

std::vector<char> achieved_groups(const OrderedLandmarks& lms,
                                  const Bits& marked) {
  std::size_t n = lms.groups.size();
  std::vector<char> done(n, 0);
  std::vector<int> stack;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t hit = 0;
    for (int f : lms.groups[i])
      if (marked.test(static_cast<std::size_t>(f))) ++hit;
    if (2 * hit > lms.groups[i].size()) {  // strict majority
      done[i] = 1;
      stack.push_back(static_cast<int>(i));
    }
  }
  // An achieved group implies its prerequisites were achieved earlier.
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int p : lms.preds[static_cast<std::size_t>(i)])
      if (!done[static_cast<std::size_t>(p)]) {
        done[static_cast<std::size_t>(p)] = 1;
        stack.push_back(p);
      }
  }
  return done;
}

std::unordered_map<int, double> uniqueness(
    const std::vector<const std::vector<int>*>& kind_sets_per_goal) {
  std::unordered_map<int, int> freq;
  for (const auto* s : kind_sets_per_goal)
    for (int f : *s) ++freq[f];
  std::unordered_map<int, double> out;
  for (auto [f, c] : freq) out[f] = 1.0 / c;
  return out;
}

GroupUniqueness group_uniqueness(
    const std::vector<OrderedLandmarks>& per_goal) {
  std::map<std::vector<int>, int> freq;
  for (const auto& lm : per_goal)
    for (const auto& grp : lm.groups) ++freq[grp];
  GroupUniqueness out;
  for (const auto& lm : per_goal) {
    std::vector<double> w;
    for (const auto& grp : lm.groups) w.push_back(1.0 / freq.at(grp));
    out.weights.push_back(std::move(w));
  }
  return out;
}

}  // namespace imprec
