#include "msdp/cmdp.hpp"

#include <cmath>
#include <memory>
#include <string>

namespace msdp {

void FiniteCmdp::validate() const {
  if (states == 0 || actions == 0)
    throw InvalidInstanceError("cmdp: need at least one state and action");
  if (horizon == 0) throw InvalidInstanceError("cmdp: horizon must be >= 1");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw InvalidInstanceError("cmdp: gamma must lie in [0, 1]");
  if (std::isnan(budget)) throw InvalidInstanceError("cmdp: budget is NaN");
  auto check_sa = [&](const std::vector<std::vector<double>>& t,
                      const char* what) {
    if (t.size() != states)
      throw InvalidInstanceError(std::string("cmdp: ") + what +
                                 " needs one row per state");
    for (const auto& row : t)
      if (row.size() != actions)
        throw InvalidInstanceError(std::string("cmdp: ") + what +
                                   " needs one entry per action");
  };
  check_sa(reward, "r");
  check_sa(cost, "c");
  if (transition.size() != states)
    throw InvalidInstanceError("cmdp: P needs one block per state");
  for (std::size_t x = 0; x < states; ++x) {
    if (transition[x].size() != actions)
      throw InvalidInstanceError("cmdp: P needs one row per action");
    for (std::size_t a = 0; a < actions; ++a) {
      const auto& row = transition[x][a];
      if (row.size() != states)
        throw InvalidInstanceError("cmdp: P row has wrong length");
      double sum = 0.0;
      for (double q : row) {
        if (q < 0.0) throw InvalidInstanceError("cmdp: negative probability");
        sum += q;
      }
      if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidInstanceError("cmdp: P[" + std::to_string(x) + "][" +
                                   std::to_string(a) + "] does not sum to 1");
    }
  }
  if (start.size() != states)
    throw InvalidInstanceError("cmdp: mu has wrong length");
  double sum = 0.0;
  for (double q : start) {
    if (q < 0.0) throw InvalidInstanceError("cmdp: negative start probability");
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidInstanceError("cmdp: mu does not sum to 1");
}

std::vector<DecisionRule> all_decision_rules(const FiniteCmdp& m,
                                             std::size_t cap) {
  std::size_t count = 1;
  for (std::size_t x = 0; x < m.states; ++x) {
    if (count > cap / m.actions)
      throw SizeError("cmdp: " + std::to_string(m.actions) + "^" +
                      std::to_string(m.states) +
                      " decision rules exceed the cap of " +
                      std::to_string(cap) + "; supply a candidate rule list");
    count *= m.actions;
  }
  std::vector<DecisionRule> rules;
  rules.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    DecisionRule r(m.states);
    std::size_t v = k;
    for (std::size_t x = 0; x < m.states; ++x) {
      r[x] = static_cast<int>(v % m.actions);
      v /= m.actions;
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

std::vector<std::vector<double>> propagate(const FiniteCmdp& m,
                                           const std::vector<DecisionRule>& rules,
                                           Prefix sequence) {
  std::vector<std::vector<double>> mu{m.start};
  for (Symbol k : sequence) {
    const DecisionRule& rule = rules.at(k);
    std::vector<double> next(m.states, 0.0);
    for (std::size_t x = 0; x < m.states; ++x)
      for (std::size_t y = 0; y < m.states; ++y)
        next[y] += mu.back()[x] * m.transition[x][rule[x]][y];
    mu.push_back(std::move(next));
  }
  return mu;
}

namespace {

double stage_expectation(const std::vector<std::vector<double>>& table,
                         const std::vector<double>& mu,
                         const DecisionRule& rule) {
  double e = 0.0;
  for (std::size_t x = 0; x < mu.size(); ++x) e += mu[x] * table[x][rule[x]];
  return e;
}

double discounted_sum(const FiniteCmdp& m,
                      const std::vector<std::vector<double>>& table,
                      const std::vector<DecisionRule>& rules, Prefix sequence) {
  const auto mu = propagate(m, rules, sequence);
  double total = 0.0;
  double w = 1.0;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    total += w * stage_expectation(table, mu[i], rules[sequence[i]]);
    w *= m.gamma;
  }
  return total;
}

}  // namespace

double expected_reward(const FiniteCmdp& m,
                       const std::vector<DecisionRule>& rules,
                       Prefix sequence) {
  return discounted_sum(m, m.reward, rules, sequence);
}

double expected_cost(const FiniteCmdp& m,
                     const std::vector<DecisionRule>& rules, Prefix sequence) {
  return discounted_sum(m, m.cost, rules, sequence);
}

ProblemH cmdp_to_h(const FiniteCmdp& m, std::vector<DecisionRule> rules,
                   std::size_t rule_cap) {
  m.validate();
  if (rules.empty()) rules = all_decision_rules(m, rule_cap);
  if (rules.size() > rule_cap)
    throw SizeError("cmdp: " + std::to_string(rules.size()) +
                    " candidate rules exceed the cap of " +
                    std::to_string(rule_cap));
  for (const auto& r : rules) {
    if (r.size() != m.states)
      throw InvalidInstanceError("cmdp: decision rule has wrong length");
    for (int a : r)
      if (a < 0 || static_cast<std::size_t>(a) >= m.actions)
        throw InvalidInstanceError("cmdp: decision rule action out of range");
  }

  struct Data {
    FiniteCmdp model;
    std::vector<DecisionRule> rules;
  };
  auto data = std::make_shared<const Data>(Data{m, std::move(rules)});
  const std::size_t count = data->rules.size();

  ProblemH p;
  p.name = "cmdp";
  p.stages = m.horizon;
  std::vector<std::int64_t> ids(count);
  for (std::size_t k = 0; k < count; ++k) ids[k] = static_cast<std::int64_t>(k);
  p.alphabet = Alphabet(std::move(ids));
  double w = 1.0;
  for (std::size_t i = 0; i < m.horizon; ++i) {
    p.weights.push_back(w);
    w *= m.gamma;
  }
  p.locality = RewardLocality::kPath;
  p.reward = [data](std::size_t, Prefix prefix, Symbol s) {
    const auto mu = propagate(data->model, data->rules, prefix);
    return stage_expectation(data->model.reward, mu.back(), data->rules[s]);
  };

  const double d = m.budget;
  p.csf.full = [data, d](Prefix x) {
    return expected_cost(data->model, data->rules, x) <= d;
  };
  bool nonnegative = true;
  for (const auto& row : m.cost)
    for (double c : row) nonnegative = nonnegative && c >= 0.0;
  const std::size_t n = m.horizon;
  p.csf.partial = [data, d, n, nonnegative](Prefix x) {
    if (x.size() == n)
      return expected_cost(data->model, data->rules, x) <= d
                 ? Feasibility::kFeasible
                 : Feasibility::kInfeasible;
    if (std::isinf(d) && d > 0) return Feasibility::kFeasible;
    if (nonnegative && expected_cost(data->model, data->rules, x) > d)
      return Feasibility::kInfeasible;
    return Feasibility::kUnknown;
  };
  return p;
}

}  // namespace msdp
