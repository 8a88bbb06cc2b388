#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "imprec/strips.hpp"

namespace imprec {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": " + msg),
        line(l), col(c) {}
};
struct UndeclaredPredicate : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ArityMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingFile : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HiddenGoalNotInHypotheses : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnresolvableObservation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TypedName {
  std::string name;
  std::string type;  // "object" when untyped
  bool operator==(const TypedName&) const = default;
};

struct Literal {
  bool neg = false;  // only meaningful inside effect formulas
  std::string pred;
  std::vector<std::string> args;  // variables (?x) or constants
  bool operator==(const Literal&) const = default;
  bool operator<(const Literal& o) const {
    if (neg != o.neg) return neg < o.neg;
    if (pred != o.pred) return pred < o.pred;
    return args < o.args;
  }
};

struct LiftedOperator {
  std::string name;
  std::vector<TypedName> params;
  std::vector<Literal> pre, poss_pre, add, del, poss_add, poss_del;
  int poss_count() const {
    return static_cast<int>(poss_pre.size() + poss_add.size() + poss_del.size());
  }
};

struct LiftedDomain {
  std::string name;
  bool typing = false;
  std::vector<std::string> requirements;
  // type -> parent; every mentioned type has an entry (parent "object" or "").
  std::unordered_map<std::string, std::string> type_parent;
  std::vector<std::string> type_order;  // declaration order, for serialization
  std::vector<std::pair<std::string, std::vector<TypedName>>> predicates;
  std::vector<LiftedOperator> operators;

  const std::vector<TypedName>* find_predicate(const std::string& p) const {
    for (const auto& [n, params] : predicates)
      if (n == p) return &params;
    return nullptr;
  }
  bool is_subtype(const std::string& t, const std::string& target) const;
};

// Structural equality up to literal ordering inside each list.
bool structurally_equal(const LiftedDomain& a, const LiftedDomain& b);

LiftedDomain parse_domain(const std::string& text);
std::string serialize_domain(const LiftedDomain& d);

struct ProblemFile {
  std::string name;
  std::vector<TypedName> objects;
  std::vector<std::string> init;  // canonical ground atoms "(p a b)"
};
ProblemFile parse_problem(const std::string& text);

struct RecognitionProblem {
  LiftedDomain domain;
  std::vector<TypedName> objects;
  std::vector<std::string> init;
  std::vector<std::vector<std::string>> hypotheses;  // ground atoms per goal
  int hidden_goal = -1;
  std::vector<std::string> observations;  // ground action signatures
};

// Expects domain.pddl, template.pddl, hyps.dat, real_hyp.dat, obs.dat.
RecognitionProblem parse_recognition_bundle(const std::string& dir);

// Grounds a lifted domain against objects; init/goal given as ground atoms.
GroundedTask ground(const LiftedDomain& domain,
                    const std::vector<TypedName>& objects,
                    const std::vector<std::string>& init_atoms,
                    const std::vector<std::string>& goal_atoms);

struct GroundedProblem {
  GroundedTask task;  // task.goal set to the hidden hypothesis
  std::vector<std::vector<int>> hyp_goals;
  int hidden = -1;
  std::vector<int> obs;  // action ids
};
GroundedProblem ground_problem(const RecognitionProblem& rp);

// Strips all possible lists (the known-only projection used by baselines).
LiftedDomain known_projection(const LiftedDomain& d);
GroundedTask known_projection(const GroundedTask& t);

std::string read_file(const std::string& path);  // throws MissingFile

}  // namespace imprec
