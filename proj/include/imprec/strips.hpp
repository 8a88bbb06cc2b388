#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace imprec {

// Dense bitset over fact ids. States are small (a few hundred facts), so a
// flat word vector beats std::set by a wide margin in the graph builders.
class Bits {
public:
  Bits() = default;
  explicit Bits(std::size_t nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }

  bool contains_all(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if ((o.w_[i] & ~w_[i]) != 0) return false;
    return true;
  }

  void or_with(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  std::vector<int> to_ids() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(static_cast<int>(i));
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : b.words()) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Interned ground atoms; ids are dense 0..size()-1.
class FactTable {
public:
  int intern(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    return id;
  }
  int find(const std::string& name) const {
    auto it = ids_.find(name);
    return it == ids_.end() ? -1 : it->second;
  }
  const std::string& name(int id) const { return names_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return names_.size(); }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

// Ground action with known and possible lists. A complete action is the
// special case where the three possible lists are empty. Within a category a
// fact is either known or possible, never both.
struct IncompleteAction {
  std::string name;  // full signature, e.g. "(stack a b)"
  std::vector<int> pre, poss_pre, add, del, poss_add, poss_del;
  int op_index = -1;  // lifted operator this was instantiated from, -1 if none

  bool complete() const {
    return poss_pre.empty() && poss_add.empty() && poss_del.empty();
  }
};

struct GroundedTask {
  FactTable facts;
  std::vector<IncompleteAction> actions;
  std::unordered_map<std::string, int> action_ids;
  Bits init;
  std::vector<int> goal;
  // Per lifted operator: |poss_pre|+|poss_add|+|poss_del| before grounding.
  // Empty when the task was built without operator provenance.
  std::vector<int> lifted_poss_counts;

  Bits make_state(const std::vector<int>& ids) const {
    Bits b(facts.size());
    for (int f : ids) b.set(static_cast<std::size_t>(f));
    return b;
  }
};

struct NotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotComplete : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Known preconditions only; possible preconditions never gate.
bool applicable(const Bits& state, const IncompleteAction& a);

// (state \ del) ∪ add ∪ poss_add; possible deletes ignored.
Bits apply_optimistic(const Bits& state, const IncompleteAction& a);

// Classical successor (state ∪ add) \ del; requires a complete action.
Bits apply_complete(const Bits& state, const IncompleteAction& a);

struct PlanError {
  enum Kind { None, UnknownAction, StepNotApplicable, GoalNotSatisfied } kind = None;
  int step = -1;
  std::string detail;
};

struct StateTrace {
  std::vector<Bits> states;  // s0..sn; empty on error
  PlanError error;
  bool ok() const { return error.kind == PlanError::None; }
};

// Replays a named plan under the optimistic semantics and checks the goal.
StateTrace validate_optimistic_plan(const GroundedTask& task,
                                    const std::vector<std::string>& plan);

struct CompletionCount {
  unsigned k = 0;
  std::string count;        // decimal 2^k
  bool lifted_level = true; // false: fell back to grounded counting
};

CompletionCount completion_count(const GroundedTask& task);

// Decimal representation of 2^k (k can exceed 64-bit range of values).
std::string pow2_decimal(unsigned k);

}  // namespace imprec
