#include "imprec/recognizer.hpp"

#include <algorithm>
#include <cmath>

namespace imprec {

namespace {

void check_deadline(const HeuristicConfig& cfg) {
  if (cfg.deadline && std::chrono::steady_clock::now() > *cfg.deadline)
    throw TimeoutError("recognition exceeded its deadline");
}

double safe_ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

}  // namespace

bool parse_heuristic(const std::string& name, Heuristic& out) {
  if (name == "gc_baseline") out = Heuristic::GcBaseline;
  else if (name == "uniq_baseline") out = Heuristic::UniqBaseline;
  else if (name == "gc_enhanced") out = Heuristic::GcEnhanced;
  else if (name == "uniq_enhanced") out = Heuristic::UniqEnhanced;
  else return false;
  return true;
}

std::string heuristic_name(Heuristic h) {
  switch (h) {
    case Heuristic::GcBaseline: return "gc_baseline";
    case Heuristic::UniqBaseline: return "uniq_baseline";
    case Heuristic::GcEnhanced: return "gc_enhanced";
    case Heuristic::UniqEnhanced: return "uniq_enhanced";
  }
  return "?";
}

void parse_kinds(const std::string& mask, HeuristicConfig& cfg) {
  if (mask.empty()) throw std::invalid_argument("empty landmark-kind mask");
  cfg.use_definite = cfg.use_possible = cfg.use_overlooked = false;
  for (char c : mask) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'D': cfg.use_definite = true; break;
      case 'P': cfg.use_possible = true; break;
      case 'O': cfg.use_overlooked = true; break;
      default:
        throw std::invalid_argument(std::string("unknown landmark kind '") +
                                    c + "' (use letters from DPO)");
    }
  }
}

namespace {

struct EnhancedState {
  std::vector<LandmarkSet> sets;       // per hypothesis
  std::vector<AchievedSet> achieved;   // per hypothesis
  std::vector<char> reachable;
};

EnhancedState run_enhanced(const GroundedTask& task, const GroundedProblem& gp,
                           const HeuristicConfig& cfg) {
  EnhancedState st;
  for (const auto& goal : gp.hyp_goals) {
    check_deadline(cfg);
    LandmarkSet lms;
    bool ok = true;
    try {
      lms = extract_incomplete(task, goal, cfg.strict_islandmark);
    } catch (const GoalUnreachable&) {
      ok = false;
    }
    if (ok && cfg.use_overlooked) {
      // Harvest overlooked landmarks while replaying the observations; a
      // harvested fact is achieved on the spot (it came from the action's
      // own known pre / known add / possible add lists).
      for (int ai : gp.obs) {
        check_deadline(cfg);
        auto extra = extract_overlooked(
            task, goal, task.actions[static_cast<std::size_t>(ai)], lms,
            cfg.strict_islandmark);
        for (int f : extra) lms.overlooked.push_back(f);
        std::sort(lms.overlooked.begin(), lms.overlooked.end());
      }
    }
    st.achieved.push_back(ok ? compute_achieved(task, lms, gp.obs)
                             : AchievedSet{});
    st.sets.push_back(std::move(lms));
    st.reachable.push_back(ok ? 1 : 0);
  }
  return st;
}

}  // namespace

double score_gc_enhanced(const LandmarkSet& s, const AchievedSet& a,
                         const HeuristicConfig& cfg) {
  double num = 0, den = 0;
  if (cfg.use_definite) {
    num += static_cast<double>(a.definite.size());
    den += static_cast<double>(s.definite.size());
  }
  if (cfg.use_possible) {
    num += static_cast<double>(a.possible.size());
    den += static_cast<double>(s.possible.size());
  }
  if (cfg.use_overlooked) {
    num += static_cast<double>(a.overlooked.size());
    den += static_cast<double>(s.overlooked.size());
  }
  return safe_ratio(num, den);
}

double score_uniq_enhanced(const LandmarkSet& s, const AchievedSet& a,
                           const std::unordered_map<int, double>& u_definite,
                           const std::unordered_map<int, double>& u_possible,
                           const std::unordered_map<int, double>& u_overlooked,
                           const HeuristicConfig& cfg) {
  double num = 0, den = 0;
  auto acc = [&](const std::vector<int>& all, const std::vector<int>& ach,
                 const std::unordered_map<int, double>& u) {
    for (int f : all) den += u.at(f);
    for (int f : ach) num += u.at(f);
  };
  if (cfg.use_definite) acc(s.definite, a.definite, u_definite);
  if (cfg.use_possible) acc(s.possible, a.possible, u_possible);
  if (cfg.use_overlooked) acc(s.overlooked, a.overlooked, u_overlooked);
  return safe_ratio(num, den);
}

RecognitionResult recognize_grounded(const GroundedProblem& gp,
                                     const HeuristicConfig& cfg) {
  RecognitionResult res;
  std::size_t n = gp.hyp_goals.size();
  res.scores.assign(n, 0.0);
  res.counts.assign(n, {0, 0, 0});
  std::vector<char> reachable(n, 1);

  bool enhanced = cfg.heuristic == Heuristic::GcEnhanced ||
                  cfg.heuristic == Heuristic::UniqEnhanced;
  if (enhanced) {
    EnhancedState st = run_enhanced(gp.task, gp, cfg);
    reachable = st.reachable;
    for (std::size_t h = 0; h < n; ++h)
      res.counts[h] = {static_cast<int>(st.sets[h].definite.size()),
                       static_cast<int>(st.sets[h].possible.size()),
                       static_cast<int>(st.sets[h].overlooked.size())};
    if (cfg.heuristic == Heuristic::GcEnhanced) {
      for (std::size_t h = 0; h < n; ++h)
        if (reachable[h])
          res.scores[h] = score_gc_enhanced(st.sets[h], st.achieved[h], cfg);
    } else {
      // Per-kind inverse-frequency weights over all hypotheses.
      auto make_map = [&](auto proj) {
        std::vector<const std::vector<int>*> views;
        for (const auto& s : st.sets) views.push_back(proj(s));
        return uniqueness(views);
      };
      auto ud = make_map([](const LandmarkSet& s) { return &s.definite; });
      auto up = make_map([](const LandmarkSet& s) { return &s.possible; });
      auto uo = make_map([](const LandmarkSet& s) { return &s.overlooked; });
      for (std::size_t h = 0; h < n; ++h)
        if (reachable[h])
          res.scores[h] = score_uniq_enhanced(st.sets[h], st.achieved[h], ud,
                                              up, uo, cfg);
    }
  } else {
    // Baselines: known-only projection, conjunctive-group landmark trees.
    GroundedTask proj = known_projection(gp.task);
    std::vector<OrderedLandmarks> trees(n);
    for (std::size_t h = 0; h < n; ++h) {
      check_deadline(cfg);
      try {
        trees[h] = extract_ordered_complete(proj, gp.hyp_goals[h]);
      } catch (const GoalUnreachable&) {
        reachable[h] = 0;
      }
      res.counts[h] = {static_cast<int>(trees[h].groups.size()), 0, 0};
    }
    Bits marked = marked_facts(proj, gp.obs);
    if (cfg.heuristic == Heuristic::GcBaseline) {
      for (std::size_t h = 0; h < n; ++h) {
        if (!reachable[h]) continue;
        auto done = achieved_groups(trees[h], marked);
        double sum = 0;
        for (const auto& sg : trees[h].subgoal_groups) {
          std::size_t hit = 0;
          for (int gi : sg)
            if (done[static_cast<std::size_t>(gi)]) ++hit;
          sum += sg.empty() ? 0.0
                            : static_cast<double>(hit) /
                                  static_cast<double>(sg.size());
        }
        res.scores[h] = trees[h].subgoal_groups.empty()
                            ? 0.0
                            : sum / static_cast<double>(
                                        trees[h].subgoal_groups.size());
      }
    } else {
      GroupUniqueness gu = group_uniqueness(trees);
      for (std::size_t h = 0; h < n; ++h) {
        if (!reachable[h]) continue;
        auto done = achieved_groups(trees[h], marked);
        double num = 0, den = 0;
        for (std::size_t i = 0; i < trees[h].groups.size(); ++i) {
          den += gu.weights[h][i];
          if (done[i]) num += gu.weights[h][i];
        }
        res.scores[h] = safe_ratio(num, den);
      }
    }
  }

  bool any_reachable =
      std::any_of(reachable.begin(), reachable.end(), [](char c) { return c; });
  if (!any_reachable) {
    res.all_unreachable = true;
    for (std::size_t h = 0; h < n; ++h)
      res.returned.push_back(static_cast<int>(h));
  } else {
    double best = 0;
    for (std::size_t h = 0; h < n; ++h)
      if (reachable[h]) best = std::max(best, res.scores[h]);
    for (std::size_t h = 0; h < n; ++h)
      if (reachable[h] && res.scores[h] >= best - cfg.theta - 1e-12)
        res.returned.push_back(static_cast<int>(h));
  }
  res.spread = static_cast<int>(res.returned.size());
  res.hit = std::find(res.returned.begin(), res.returned.end(), gp.hidden) !=
            res.returned.end();
  return res;
}

RecognitionResult recognize(const RecognitionProblem& rp,
                            const HeuristicConfig& cfg) {
  return recognize_grounded(ground_problem(rp), cfg);
}

}  // namespace imprec
