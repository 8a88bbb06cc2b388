#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imprec/pddl.hpp"
#include "imprec/strips.hpp"

namespace imprec {

struct PoolTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoPlan : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StateSpaceGuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegradeSpec {
  int percent = 20;         // 0..100
  std::uint64_t seed = 0;   // variant i uses seed + i
  int variants = 3;
  bool mix = false;  // also inject possible literals beyond the moved ones
};

// Moves ceil(percent%) of the domain-wide precondition, add, and delete
// literal pools (each independently) into the corresponding possible lists.
// Deterministic for a fixed seed across platforms: mt19937_64 with modulo
// draws and Fisher-Yates, no library distributions.
std::vector<LiftedDomain> degrade(const LiftedDomain& domain,
                                  const DegradeSpec& spec);

// Uniformly chosen order-preserving subsequence of ceil(percent*|plan|/100).
std::vector<std::string> sample_observations(
    const std::vector<std::string>& plan, int percent, std::uint64_t seed);

// Shortest plan by breadth-first search; optimistic successors when the task
// has possible lists, classical otherwise. Ties broken by lexicographic
// action signature. Test oracle — guarded against large fact sets.
std::vector<std::string> bfs_plan(const GroundedTask& task,
                                  const std::vector<int>& goal,
                                  std::size_t fact_guard = 24);

}  // namespace imprec
