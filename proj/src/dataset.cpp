#include "imprec/dataset.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <unordered_map>

namespace imprec {

namespace {

std::uint64_t draw(std::mt19937_64& gen, std::uint64_t n) {
  return gen() % n;  // slight modulo bias is irrelevant here; portability wins
}

template <class T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& gen) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[static_cast<std::size_t>(draw(gen, i))]);
}

std::size_t ceil_pct(std::size_t n, int percent) {
  return (n * static_cast<std::size_t>(percent) + 99) / 100;
}

using Slot = std::pair<std::size_t, std::size_t>;  // operator idx, literal idx

void move_category(LiftedDomain& d, std::mt19937_64& gen, int percent,
                   std::vector<Literal> LiftedOperator::* known,
                   const char* label,
                   std::vector<Literal> LiftedOperator::* possible) {
  std::vector<Slot> pool;
  for (std::size_t o = 0; o < d.operators.size(); ++o)
    for (std::size_t i = 0; i < (d.operators[o].*known).size(); ++i)
      pool.push_back({o, i});
  std::size_t target = ceil_pct(pool.size(), percent);
  if (target > pool.size())
    throw PoolTooSmall(std::string(label) + " pool has " +
                       std::to_string(pool.size()) + " literals, need " +
                       std::to_string(target) +
                       "; lower the percentage or enrich the domain");
  fisher_yates(pool, gen);
  pool.resize(target);
  // Erase by descending literal index so earlier slots stay valid.
  std::sort(pool.begin(), pool.end(), [](const Slot& a, const Slot& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  });
  for (const auto& [o, i] : pool) {
    auto& src = d.operators[o].*known;
    (d.operators[o].*possible).push_back(src[i]);
    src.erase(src.begin() + static_cast<std::ptrdiff_t>(i));
  }
}

bool mentions(const LiftedOperator& op, const Literal& l) {
  for (const auto* lst : {&op.pre, &op.poss_pre, &op.add, &op.del,
                          &op.poss_add, &op.poss_del})
    if (std::find(lst->begin(), lst->end(), l) != lst->end()) return true;
  return false;
}

// Extra incompleteness beyond moved literals: delete effects that are not
// preconditions become possible preconditions; one type-compatible fresh
// literal per operator lands in a random possible list.
void mix_in(LiftedDomain& d, std::mt19937_64& gen) {
  for (auto& op : d.operators) {
    for (const auto& l : op.del) {
      if (std::find(op.pre.begin(), op.pre.end(), l) != op.pre.end()) continue;
      if (std::find(op.poss_pre.begin(), op.poss_pre.end(), l) !=
          op.poss_pre.end())
        continue;
      if (draw(gen, 2) == 0) op.poss_pre.push_back(l);
    }
    std::vector<Literal> fresh;
    for (const auto& [pred, params] : d.predicates) {
      Literal cand;
      cand.pred = pred;
      bool fits = true;
      for (const auto& p : params) {
        // take the first parameter whose type matches; skip otherwise
        bool bound = false;
        for (const auto& v : op.params)
          if (!bound && d.is_subtype(v.type, p.type)) {
            cand.args.push_back("?" + v.name);
            bound = true;
          }
        if (!bound) fits = false;
      }
      if (fits && !mentions(op, cand)) fresh.push_back(cand);
    }
    if (!fresh.empty()) {
      const Literal& l = fresh[static_cast<std::size_t>(draw(gen, fresh.size()))];
      switch (draw(gen, 3)) {
        case 0: op.poss_pre.push_back(l); break;
        case 1: op.poss_add.push_back(l); break;
        default: op.poss_del.push_back(l); break;
      }
    }
  }
}

}  // namespace

std::vector<LiftedDomain> degrade(const LiftedDomain& domain,
                                  const DegradeSpec& spec) {
  std::vector<LiftedDomain> out;
  for (int v = 0; v < spec.variants; ++v) {
    LiftedDomain d = domain;
    std::mt19937_64 gen(spec.seed + static_cast<std::uint64_t>(v));
    move_category(d, gen, spec.percent, &LiftedOperator::pre, "precondition",
                  &LiftedOperator::poss_pre);
    move_category(d, gen, spec.percent, &LiftedOperator::add, "add-effect",
                  &LiftedOperator::poss_add);
    move_category(d, gen, spec.percent, &LiftedOperator::del, "delete-effect",
                  &LiftedOperator::poss_del);
    if (spec.mix) mix_in(d, gen);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<std::string> sample_observations(
    const std::vector<std::string>& plan, int percent, std::uint64_t seed) {
  std::size_t m = ceil_pct(plan.size(), percent);
  std::vector<std::size_t> idx(plan.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::mt19937_64 gen(seed);
  fisher_yates(idx, gen);
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(plan[i]);
  return out;
}

std::vector<std::string> bfs_plan(const GroundedTask& task,
                                  const std::vector<int>& goal,
                                  std::size_t fact_guard) {
  if (task.facts.size() > fact_guard)
    throw StateSpaceGuardExceeded(
        "task has " + std::to_string(task.facts.size()) +
        " facts; raise the guard to search it");
  bool optimistic = false;
  for (const auto& a : task.actions)
    if (!a.complete()) optimistic = true;

  std::vector<int> order(task.actions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return task.actions[static_cast<std::size_t>(a)].name <
           task.actions[static_cast<std::size_t>(b)].name;
  });

  auto goal_in = [&](const Bits& s) {
    for (int f : goal)
      if (!s.test(static_cast<std::size_t>(f))) return false;
    return true;
  };

  std::unordered_map<Bits, std::pair<Bits, int>, BitsHash> parent;
  std::queue<Bits> frontier;
  parent.emplace(task.init, std::make_pair(Bits{}, -1));
  frontier.push(task.init);
  while (!frontier.empty()) {
    Bits cur = frontier.front();
    frontier.pop();
    if (goal_in(cur)) {
      std::vector<std::string> plan;
      Bits s = cur;
      while (true) {
        auto& [prev, ai] = parent.at(s);
        if (ai < 0) break;
        plan.push_back(task.actions[static_cast<std::size_t>(ai)].name);
        s = prev;
      }
      std::reverse(plan.begin(), plan.end());
      return plan;
    }
    for (int ai : order) {
      const auto& a = task.actions[static_cast<std::size_t>(ai)];
      if (!applicable(cur, a)) continue;
      Bits next =
          optimistic ? apply_optimistic(cur, a) : apply_complete(cur, a);
      if (parent.emplace(next, std::make_pair(cur, ai)).second)
        frontier.push(next);
    }
  }
  throw NoPlan("goal unreachable by search");
}

}  // namespace imprec
