#pragma once

#include <string>
#include <vector>

#include "imprec/recognizer.hpp"

namespace imprec {

struct LengthMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One recognizer run on one problem, reduced to what the metrics need.
struct ProblemOutcome {
  bool hit = false;
  int returned = 0;  // |returned set|
  int n_hyps = 0;
  double d = 0, p = 0, o = 0;  // mean landmark counts across hypotheses
  double seconds = 0;
  std::string label;
};

struct EvalRow {
  std::string domain_name;
  std::string config;
  int incompleteness = 0;
  int observability = 0;
  int n_problems = 0;
  int timed_out = 0;
  int failed = 0;
  double accuracy = 0, spread = 0, precision = 0, recall = 0, f1 = 0;
  double mean_d = 0, mean_p = 0, mean_o = 0;
  double wallclock_per_problem = 0;
};

// Metric reduction: per problem TP = hit, FP = returned - TP, FN = 1 - TP;
// precision/recall pooled over problems, F1 their harmonic mean.
EvalRow aggregate(const std::vector<ProblemOutcome>& outcomes);

struct EvalProblem {
  GroundedProblem gp;
  std::string domain_name;
  int incompleteness = 0;
  int observability = 0;
};

struct NamedConfig {
  std::string name;
  HeuristicConfig cfg;
};

// Runs every config over every problem; one row per
// (config, incompleteness, observability) cell. Timed-out problems are
// excluded from the metrics and counted in the row. jobs > 1 distributes
// problems over a thread pool.
std::vector<EvalRow> evaluate(const std::vector<EvalProblem>& problems,
                              const std::vector<NamedConfig>& configs,
                              double timeout_secs, int jobs = 1);

double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

struct RocPoint {
  double tpr = 0, fpr = 0;
  std::string label;
};

// Per problem: tpr = hit, fpr = wrong returns over wrong hypotheses.
std::vector<RocPoint> roc_points(const std::vector<ProblemOutcome>& outcomes);

}  // namespace imprec
