#include "msdp/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "msdp/baselines.hpp"
#include "msdp/rng.hpp"
#include "msdp/solver.hpp"

namespace msdp {

std::optional<ConstraintFamily> parse_family(const std::string& name) {
  if (name == "none") return ConstraintFamily::kNone;
  if (name == "budget") return ConstraintFamily::kBudget;
  if (name == "ordering") return ConstraintFamily::kOrdering;
  if (name == "permutation") return ConstraintFamily::kPermutation;
  if (name == "blackbox") return ConstraintFamily::kBlackbox;
  if (name == "mixed") return ConstraintFamily::kMixed;
  return std::nullopt;
}

const char* to_string(ConstraintFamily f) {
  switch (f) {
    case ConstraintFamily::kNone: return "none";
    case ConstraintFamily::kBudget: return "budget";
    case ConstraintFamily::kOrdering: return "ordering";
    case ConstraintFamily::kPermutation: return "permutation";
    case ConstraintFamily::kBlackbox: return "blackbox";
    case ConstraintFamily::kMixed: return "mixed";
  }
  return "?";
}

namespace {

TableInstance::Budget random_budget(Rng& rng, std::size_t n, std::size_t m) {
  TableInstance::Budget b;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < m; ++j)
      row.push_back(static_cast<double>(rng.between(1, 5)));
    lo += *std::min_element(row.begin(), row.end());
    hi += *std::max_element(row.begin(), row.end());
    b.weights.push_back(std::move(row));
  }
  b.capacity = std::floor(lo + (hi - lo) * rng.uniform(0.1, 0.7));
  return b;
}

}  // namespace

TableInstance random_table_instance(std::size_t stages, std::size_t symbols,
                                    ConstraintFamily family,
                                    std::uint64_t seed) {
  Rng rng(seed);
  if (family == ConstraintFamily::kPermutation) symbols = stages;
  TableInstance t;
  for (std::size_t j = 0; j < symbols; ++j)
    t.alphabet.push_back(static_cast<std::int64_t>(j));
  static constexpr std::array<double, 3> kWeights{0.5, 1.0, 2.0};
  for (std::size_t i = 0; i < stages; ++i) {
    t.weights.push_back(kWeights[rng.below(kWeights.size())]);
    std::vector<double> row;
    for (std::size_t j = 0; j < symbols; ++j)
      row.push_back(0.5 * static_cast<double>(rng.between(0, 19)));
    t.phi.push_back(std::move(row));
  }
  switch (family) {
    case ConstraintFamily::kNone:
      break;
    case ConstraintFamily::kBudget:
      t.budget = random_budget(rng, stages, symbols);
      break;
    case ConstraintFamily::kOrdering:
      t.ordering = rng.below(2) ? TableInstance::Ordering::kNonIncreasing
                                : TableInstance::Ordering::kNonDecreasing;
      break;
    case ConstraintFamily::kPermutation:
      t.structure = Structure::kPermutation;
      t.distinct = true;
      break;
    case ConstraintFamily::kBlackbox:
      t.blackbox = TableInstance::Blackbox{
          rng.next(), 0.05 * static_cast<double>(rng.between(6, 14))};
      break;
    case ConstraintFamily::kMixed:
      t.budget = random_budget(rng, stages, symbols);
      t.ordering = rng.below(2) ? TableInstance::Ordering::kNonIncreasing
                                : TableInstance::Ordering::kNonDecreasing;
      break;
  }
  return t;
}

DfaInstance random_dfa_instance(std::size_t fragments, std::size_t length,
                                std::uint64_t seed, bool bound) {
  Rng rng(seed);
  std::vector<std::size_t> offsets{0};
  const auto max_step = static_cast<std::int64_t>(std::max<std::size_t>(1, length / 2));
  for (std::size_t k = 1; k < fragments; ++k)
    offsets.push_back(offsets.back() +
                      static_cast<std::size_t>(rng.between(1, max_step)));
  static constexpr char kBases[] = {'A', 'C', 'G', 'T'};
  std::string genome;
  for (std::size_t i = 0; i < offsets.back() + length; ++i)
    genome.push_back(kBases[rng.below(4)]);
  std::vector<std::string> frags;
  for (std::size_t o : offsets) frags.push_back(genome.substr(o, length));
  rng.shuffle(frags.begin(), frags.end());
  return DfaInstance::make(std::move(frags), SwScores{}, bound);
}

namespace {

std::vector<double> random_simplex(Rng& rng, std::size_t n) {
  std::vector<double> v;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(0.05 + rng.uniform());
    sum += v.back();
  }
  for (double& x : v) x /= sum;
  return v;
}

// Least achievable expected discounted cost, by backward induction.
double min_cost(const FiniteCmdp& m) {
  std::vector<double> v(m.states, 0.0);
  for (std::size_t t = m.horizon; t-- > 0;) {
    std::vector<double> next(m.states);
    for (std::size_t x = 0; x < m.states; ++x) {
      double best = INFINITY;
      for (std::size_t a = 0; a < m.actions; ++a) {
        double q = m.cost[x][a];
        for (std::size_t y = 0; y < m.states; ++y)
          q += m.gamma * m.transition[x][a][y] * v[y];
        best = std::min(best, q);
      }
      next[x] = best;
    }
    v = std::move(next);
  }
  double e = 0.0;
  for (std::size_t x = 0; x < m.states; ++x) e += m.start[x] * v[x];
  return e;
}

// Expected discounted cost of the uniformly random policy.
double mean_cost(const FiniteCmdp& m) {
  std::vector<double> mu = m.start;
  double total = 0.0, w = 1.0;
  for (std::size_t t = 0; t < m.horizon; ++t) {
    std::vector<double> next(m.states, 0.0);
    for (std::size_t x = 0; x < m.states; ++x)
      for (std::size_t a = 0; a < m.actions; ++a) {
        const double pa = mu[x] / static_cast<double>(m.actions);
        total += w * pa * m.cost[x][a];
        for (std::size_t y = 0; y < m.states; ++y)
          next[y] += pa * m.transition[x][a][y];
      }
    mu = std::move(next);
    w *= m.gamma;
  }
  return total;
}

}  // namespace

FiniteCmdp random_cmdp(std::size_t states, std::size_t actions,
                       std::size_t horizon, std::uint64_t seed,
                       bool constrained) {
  Rng rng(seed);
  FiniteCmdp m;
  m.states = states;
  m.actions = actions;
  m.horizon = horizon;
  m.gamma = 0.5 + 0.5 * rng.uniform();
  m.transition.assign(states, {});
  for (std::size_t x = 0; x < states; ++x)
    for (std::size_t a = 0; a < actions; ++a)
      m.transition[x].push_back(random_simplex(rng, states));
  m.reward.assign(states, std::vector<double>(actions));
  m.cost.assign(states, std::vector<double>(actions));
  for (std::size_t x = 0; x < states; ++x)
    for (std::size_t a = 0; a < actions; ++a) {
      m.reward[x][a] = rng.uniform();
      m.cost[x][a] = rng.uniform();
    }
  m.start = random_simplex(rng, states);
  if (constrained) {
    const double lo = min_cost(m);
    const double hi = std::max(lo, mean_cost(m));
    m.budget = lo + (hi - lo) * rng.uniform(0.2, 1.0);
  }
  return m;
}

std::optional<SingleSurvivorWitness> find_single_survivor_witness(std::uint64_t seed,
                                                     std::uint64_t max_attempts,
                                                     std::size_t max_stages,
                                                     std::size_t max_symbols) {
  Rng rng(seed);
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    const auto n = static_cast<std::size_t>(
        rng.between(2, static_cast<std::int64_t>(std::max<std::size_t>(2, max_stages))));
    const auto m = static_cast<std::size_t>(
        rng.between(2, static_cast<std::int64_t>(std::max<std::size_t>(2, max_symbols))));
    TableInstance t =
        random_table_instance(n, m, ConstraintFamily::kBudget, rng.next());
    const ProblemH p = table_problem(t);
    try {
      const double optimum = *exhaustive_search(p).best.objective;
      SolveOptions single;
      single.policy = SurvivorPolicy::SingleSurvivor();
      const double greedy = *msdp_solve(p, single).best.objective;
      if (!(greedy < optimum)) continue;
      if (*msdp_solve(p).best.objective != optimum) continue;
      return SingleSurvivorWitness{std::move(t), attempt, greedy, optimum};
    } catch (const InfeasibleError&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace msdp
