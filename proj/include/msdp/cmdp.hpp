#pragma once

// Finite-horizon constrained MDP planning recast as a staged problem: the
// stage-i decision picks a deterministic decision rule (an action per state),
// the stage reward is the expected reward under the state distribution
// reached by the earlier rules, and stage i is discounted by gamma^i
// (stages counted from 0). The constraint bounds the expected discounted
// cost by d.

#include <cstdint>
#include <limits>
#include <vector>

#include "msdp/core.hpp"

namespace msdp {

struct FiniteCmdp {
  std::size_t states = 0;
  std::size_t actions = 0;
  // transition[x][a][x'] = p_{x,a}(x').
  std::vector<std::vector<std::vector<double>>> transition;
  std::vector<std::vector<double>> reward;  // [x][a]
  std::vector<std::vector<double>> cost;    // [x][a]
  std::vector<double> start;                // mu
  double gamma = 1.0;
  std::size_t horizon = 1;
  double budget = std::numeric_limits<double>::infinity();  // d

  // Throws InvalidInstanceError.
  void validate() const;

  bool operator==(const FiniteCmdp&) const = default;
};

// rule[x] is the action taken in state x.
using DecisionRule = std::vector<int>;

// Every deterministic rule, in base-|A| counting order with state 0 as the
// least significant digit. Throws SizeError above `cap` rules.
std::vector<DecisionRule> all_decision_rules(const FiniteCmdp& m,
                                             std::size_t cap = 4096);

// State distribution at each stage under a rule sequence (size+1 entries).
std::vector<std::vector<double>> propagate(const FiniteCmdp& m,
                                           const std::vector<DecisionRule>& rules,
                                           Prefix sequence);

// Expected discounted reward and cost of a (possibly partial) rule sequence.
double expected_reward(const FiniteCmdp& m,
                       const std::vector<DecisionRule>& rules, Prefix sequence);
double expected_cost(const FiniteCmdp& m,
                     const std::vector<DecisionRule>& rules, Prefix sequence);

// Alphabet = `rules` (all deterministic rules when empty). The partial check
// prunes prefixes whose cost already exceeds d when costs are non-negative
// and answers kUnknown otherwise, leaving exactness to completion search.
ProblemH cmdp_to_h(const FiniteCmdp& m, std::vector<DecisionRule> rules = {},
                   std::size_t rule_cap = 4096);

}  // namespace msdp
