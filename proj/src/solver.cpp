#include "msdp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

namespace msdp {

bool ranks_before(const PartialAssignment& a, const PartialAssignment& b) {
  if (a.lambda != b.lambda) return a.lambda > b.lambda;
  return std::lexicographical_compare(a.prefix.begin(), a.prefix.end(),
                                      b.prefix.begin(), b.prefix.end());
}

SurvivorPolicy SurvivorPolicy::Cap(std::size_t n, bool merge) {
  if (n == 0) throw std::invalid_argument("survivor cap must be >= 1");
  return {Mode::kCap, n, merge};
}

std::uint64_t default_completion_budget(const ProblemH& p, std::size_t stage) {
  if (const char* env = std::getenv("MSDP_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  const std::size_t depth = std::min<std::size_t>(4, p.stages - stage);
  std::uint64_t b = 10;
  for (std::size_t i = 0; i < depth; ++i) b *= p.symbols();
  return b;
}

namespace {

class CompletionDfs {
 public:
  CompletionDfs(const ProblemH& p, std::uint64_t budget, Counters& counters)
      : p_(p), budget_(budget), counters_(counters) {}

  bool run(std::vector<Symbol>& buf) {
    const std::size_t stage = buf.size();
    const auto m = static_cast<Symbol>(p_.symbols());
    for (Symbol s = 0; s < m; ++s) {
      if (!p_.is_allowed(stage, s)) continue;
      if (stage > 0 && !p_.has_transition(stage - 1, buf.back(), s)) continue;
      if (++expanded_ > budget_)
        throw BudgetExceededError("completion search exceeded " +
                                  std::to_string(budget_) + " expansions");
      ++counters_.csf_evals;
      buf.push_back(s);
      bool found = false;
      if (buf.size() == p_.stages) {
        found = p_.csf.full(Prefix(buf));
      } else {
        const Feasibility v = p_.csf.check_partial(Prefix(buf));
        found = v == Feasibility::kFeasible ||
                (v == Feasibility::kUnknown && run(buf));
      }
      buf.pop_back();
      if (found) return true;
    }
    return false;
  }

 private:
  const ProblemH& p_;
  std::uint64_t budget_;
  Counters& counters_;
  std::uint64_t expanded_ = 0;
};

}  // namespace

Feasibility completion_search(const ProblemH& p, Prefix prefix,
                              std::uint64_t budget, Counters& counters) {
  if (prefix.size() == p.stages) {
    ++counters.csf_evals;
    return p.csf.full(prefix) ? Feasibility::kFeasible
                              : Feasibility::kInfeasible;
  }
  std::vector<Symbol> buf(prefix.begin(), prefix.end());
  CompletionDfs dfs(p, budget, counters);
  return dfs.run(buf) ? Feasibility::kFeasible : Feasibility::kInfeasible;
}

namespace {

// Constraint and bound screening of one freshly extended prefix.
bool admit(const AcmsContext& ctx, const PartialAssignment& pa,
           AcmsStats& stats) {
  const ProblemH& p = ctx.problem;
  Prefix prefix(pa.prefix);
  ++stats.counters.csf_evals;
  if (pa.stage() == p.stages) {
    if (!p.csf.full(prefix)) return false;
  } else {
    Feasibility v = p.csf.check_partial(prefix);
    if (v == Feasibility::kUnknown) {
      const std::uint64_t budget =
          ctx.completion_budget ? *ctx.completion_budget
                                : default_completion_budget(p, pa.stage());
      try {
        v = completion_search(p, prefix, budget, stats.counters);
      } catch (const BudgetExceededError&) {
        ++stats.unresolved;  // kept: dropping it could lose the optimum
      }
    }
    if (v == Feasibility::kInfeasible) return false;
  }
  if (p.bound) {
    ++stats.counters.csf_evals;
    const double optimistic =
        pa.stage() == p.stages ? 0.0 : p.bound->optimistic(prefix);
    if (pa.lambda + optimistic < p.bound->incumbent) return false;
  }
  return true;
}

}  // namespace

std::vector<Survivor> acms(const AcmsContext& ctx, std::size_t stage,
                           Symbol symbol,
                           std::span<const std::span<const Survivor>> incoming,
                           AcmsStats& stats) {
  const ProblemH& p = ctx.problem;
  std::vector<Survivor> out;
  for (const auto& group : incoming) {
    for (const Survivor& s : group) {
      if (s.pa.stage() != stage)
        throw InvalidAssignmentError("incoming survivor ends at stage " +
                                     std::to_string(s.pa.stage()) +
                                     ", expected " + std::to_string(stage));
      ++stats.counters.acms_ops;
      PartialAssignment pa = extend(s.pa, symbol, p);
      if (admit(ctx, pa, stats)) out.push_back({std::move(pa), std::nullopt});
    }
  }
  std::sort(out.begin(), out.end(), [](const Survivor& a, const Survivor& b) {
    return ranks_before(a.pa, b.pa);
  });
  if (ctx.policy.merge_dominated && p.csf.digest) {
    std::set<Digest> seen;
    std::vector<Survivor> merged;
    merged.reserve(out.size());
    for (Survivor& s : out) {
      s.digest = p.csf.digest(Prefix(s.pa.prefix));
      // The first survivor with a given digest ranks best; the rest can
      // never complete to anything better.
      if (seen.insert(*s.digest).second) merged.push_back(std::move(s));
    }
    out = std::move(merged);
  }
  stats.demand += out.size();
  if (ctx.policy.bounded() && out.size() > ctx.policy.cap) {
    stats.evicted += out.size() - ctx.policy.cap;
    out.resize(ctx.policy.cap);
  }
  return out;
}

namespace {

struct SweepResult {
  SolveReport report;
  std::vector<Survivor> finals;
  std::size_t died_at = 0;  // 1-based stage where all survivors died, 0 if none
};

SweepResult sweep(const ProblemH& p, const SolveOptions& opt) {
  p.validate();
  const Trellis trellis = Trellis::build(p);
  const std::size_t n = p.stages;
  const auto m = static_cast<Symbol>(p.symbols());
  const AcmsContext ctx{p, opt.policy, opt.completion_budget};

  SweepResult res;
  SolveReport& rep = res.report;
  rep.solver = "msdp";
  rep.stage_demand.assign(n, 0);
  rep.node_demand.assign(n, std::vector<std::size_t>(m, 0));

  const Survivor root{};
  std::vector<std::vector<Survivor>> layer(m), next(m);
  std::vector<AcmsStats> stats(m);
  std::vector<std::exception_ptr> errors(m);

  for (std::size_t i = 0; i < n; ++i) {
    auto step = [&](Symbol j) {
      stats[j] = {};
      next[j].clear();
      if (!trellis.has_node(i, j)) return;
      try {
        std::vector<std::span<const Survivor>> groups;
        if (i == 0) {
          groups.emplace_back(&root, 1);
        } else {
          for (Symbol b = 0; b < m; ++b)
            if (!layer[b].empty() && trellis.has_edge(i - 1, b, j))
              groups.emplace_back(layer[b]);
        }
        next[j] = acms(ctx, i, j, groups, stats[j]);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    };
    const std::size_t workers =
        std::min<std::size_t>(std::max<std::size_t>(opt.threads, 1), m);
    if (workers <= 1) {
      for (Symbol j = 0; j < m; ++j) step(j);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          for (Symbol j = static_cast<Symbol>(w); j < m;
               j += static_cast<Symbol>(workers))
            step(j);
        });
      for (auto& t : pool) t.join();
    }
    for (Symbol j = 0; j < m; ++j)
      if (errors[j]) std::rethrow_exception(errors[j]);

    bool alive = false;
    for (Symbol j = 0; j < m; ++j) {
      rep.counters += stats[j].counters;
      rep.unresolved += stats[j].unresolved;
      rep.evicted += stats[j].evicted;
      rep.node_demand[i][j] = stats[j].demand;
      rep.stage_demand[i] += stats[j].demand;
      rep.ne_used = std::max(rep.ne_used, next[j].size());
      alive = alive || !next[j].empty();
    }
    std::swap(layer, next);
    if (!alive) {
      res.died_at = i + 1;
      break;
    }
  }
  rep.ne_bound =
      *std::max_element(rep.stage_demand.begin(), rep.stage_demand.end());
  if (opt.policy.bounded()) rep.ne_used = opt.policy.cap;
  rep.optimal_certified = rep.evicted == 0;
  if (res.died_at == 0)
    for (auto& node : layer)
      for (auto& s : node) res.finals.push_back(std::move(s));
  return res;
}

}  // namespace

SolveReport msdp_solve(const ProblemH& p, const SolveOptions& options) {
  SweepResult res = sweep(p, options);
  if (res.died_at != 0)
    throw InfeasibleError(res.died_at, res.report.evicted == 0);
  auto& finals = res.finals;
  std::sort(finals.begin(), finals.end(),
            [](const Survivor& a, const Survivor& b) {
              return ranks_before(a.pa, b.pa);
            });
  SolveReport rep = std::move(res.report);
  rep.best.symbols = finals.front().pa.prefix;
  rep.best.objective = finals.front().pa.lambda;
  for (std::size_t k = 0; k < std::min(options.top_k, finals.size()); ++k)
    rep.top_k.push_back(finals[k].pa);
  return rep;
}

NeBound measure_ne_bound(const ProblemH& p) {
  SolveOptions opt;
  opt.policy = SurvivorPolicy::KeepAllFeasible(false);
  SweepResult res = sweep(p, opt);
  NeBound out;
  out.bound = res.report.ne_bound.value_or(0);
  out.stage_demand = std::move(res.report.stage_demand);
  out.node_demand = std::move(res.report.node_demand);
  return out;
}

}  // namespace msdp
