#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "imprec/landmarks.hpp"
#include "imprec/pddl.hpp"

namespace imprec {

struct TimeoutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Heuristic { GcBaseline, UniqBaseline, GcEnhanced, UniqEnhanced };

// Kinds is an ablation mask over {definite, possible, overlooked}. The
// baseline heuristics ignore it: they run on the known-only projection and
// score definite (group) landmarks only.
struct HeuristicConfig {
  Heuristic heuristic = Heuristic::GcEnhanced;
  bool use_definite = true;
  bool use_possible = true;
  bool use_overlooked = true;
  double theta = 0.0;
  bool strict_islandmark = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

bool parse_heuristic(const std::string& name, Heuristic& out);
std::string heuristic_name(Heuristic h);
// Mask string over letters D/P/O, e.g. "DPO", "D". Throws on other letters.
void parse_kinds(const std::string& mask, HeuristicConfig& cfg);

struct RecognitionResult {
  std::vector<double> scores;  // per hypothesis, in [0,1]
  std::vector<int> returned;   // hypothesis indices within theta of the max
  int spread = 0;
  bool hit = false;            // hidden goal among returned
  bool all_unreachable = false;
  std::vector<std::array<int, 3>> counts;  // per hypothesis: |D|,|P|,|O|
};

RecognitionResult recognize_grounded(const GroundedProblem& gp,
                                     const HeuristicConfig& cfg);
RecognitionResult recognize(const RecognitionProblem& rp,
                            const HeuristicConfig& cfg);

// Scoring primitives, exposed for direct use on hand-built landmark sets.
double score_gc_enhanced(const LandmarkSet& s, const AchievedSet& a,
                         const HeuristicConfig& cfg);
double score_uniq_enhanced(const LandmarkSet& s, const AchievedSet& a,
                           const std::unordered_map<int, double>& u_definite,
                           const std::unordered_map<int, double>& u_possible,
                           const std::unordered_map<int, double>& u_overlooked,
                           const HeuristicConfig& cfg);

}  // namespace imprec
