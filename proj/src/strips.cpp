#include "imprec/strips.hpp"

#include <algorithm>

namespace imprec {

bool applicable(const Bits& state, const IncompleteAction& a) {
  for (int f : a.pre)
    if (!state.test(static_cast<std::size_t>(f))) return false;
  return true;
}

Bits apply_optimistic(const Bits& state, const IncompleteAction& a) {
  if (!applicable(state, a)) throw NotApplicable(a.name);
  Bits next = state;
  for (int f : a.del) next.reset(static_cast<std::size_t>(f));
  for (int f : a.add) next.set(static_cast<std::size_t>(f));
  for (int f : a.poss_add) next.set(static_cast<std::size_t>(f));
  return next;
}

Bits apply_complete(const Bits& state, const IncompleteAction& a) {
  if (!a.complete()) throw NotComplete(a.name);
  if (!applicable(state, a)) throw NotApplicable(a.name);
  Bits next = state;
  for (int f : a.add) next.set(static_cast<std::size_t>(f));
  for (int f : a.del) next.reset(static_cast<std::size_t>(f));
  return next;
}

StateTrace validate_optimistic_plan(const GroundedTask& task,
                                    const std::vector<std::string>& plan) {
  StateTrace tr;
  tr.states.push_back(task.init);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    auto it = task.action_ids.find(plan[i]);
    if (it == task.action_ids.end()) {
      tr.error = {PlanError::UnknownAction, static_cast<int>(i), plan[i]};
      tr.states.clear();
      return tr;
    }
    const auto& a = task.actions[static_cast<std::size_t>(it->second)];
    if (!applicable(tr.states.back(), a)) {
      tr.error = {PlanError::StepNotApplicable, static_cast<int>(i), plan[i]};
      tr.states.clear();
      return tr;
    }
    tr.states.push_back(apply_optimistic(tr.states.back(), a));
  }
  for (int g : task.goal) {
    if (!tr.states.back().test(static_cast<std::size_t>(g))) {
      tr.error = {PlanError::GoalNotSatisfied, -1, task.facts.name(g)};
      tr.states.clear();
      return tr;
    }
  }
  return tr;
}

std::string pow2_decimal(unsigned k) {
  std::vector<int> digits{1};  // little-endian decimal
  for (unsigned i = 0; i < k; ++i) {
    int carry = 0;
    for (auto& d : digits) {
      int v = d * 2 + carry;
      d = v % 10;
      carry = v / 10;
    }
    if (carry) digits.push_back(carry);
  }
  std::string s(digits.size(), '0');
  for (std::size_t i = 0; i < digits.size(); ++i)
    s[s.size() - 1 - i] = static_cast<char>('0' + digits[i]);
  return s;
}

CompletionCount completion_count(const GroundedTask& task) {
  CompletionCount cc;
  if (!task.lifted_poss_counts.empty()) {
    for (int c : task.lifted_poss_counts) cc.k += static_cast<unsigned>(c);
    cc.lifted_level = true;
  } else {
    for (const auto& a : task.actions)
      cc.k += static_cast<unsigned>(a.poss_pre.size() + a.poss_add.size() +
                                    a.poss_del.size());
    cc.lifted_level = false;
  }
  cc.count = pow2_decimal(cc.k);
  return cc;
}

}  // namespace imprec
