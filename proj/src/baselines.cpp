#include "msdp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "msdp/rng.hpp"

namespace msdp {

bool in_domain(const ProblemH& p, Prefix x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!p.is_allowed(i, x[i])) return false;
    if (i > 0 && !p.has_transition(i - 1, x[i - 1], x[i])) return false;
  }
  return true;
}

namespace {

double objective_of(const ProblemH& p, Prefix x) {
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) f += p.term(i, x.first(i), x[i]);
  return f;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

}  // namespace

std::uint64_t enumeration_size(const ProblemH& p) {
  std::uint64_t n = 1;
  if (p.structure == Structure::kPermutation) {
    for (std::uint64_t k = 2; k <= p.stages; ++k) n = saturating_mul(n, k);
    return n;
  }
  for (std::size_t i = 0; i < p.stages; ++i) {
    std::uint64_t width = p.symbols();
    if (!p.allowed.empty())
      width = std::count(p.allowed[i].begin(), p.allowed[i].end(), true);
    n = saturating_mul(n, width);
  }
  return n;
}

SolveReport exhaustive_search(const ProblemH& p, const EsOptions& options) {
  p.validate();
  const std::uint64_t size = enumeration_size(p);
  if (size > options.cap)
    throw SizeError("exhaustive search would enumerate " +
                    (size == UINT64_MAX ? std::string("more than 2^64")
                                        : std::to_string(size)) +
                    " candidates (cap " + std::to_string(options.cap) + ")");

  SolveReport rep;
  rep.solver = "es";
  bool found = false;
  double best = 0.0;
  std::vector<Symbol> x(p.stages);

  auto visit = [&] {
    if (!in_domain(p, x)) return;
    ++rep.counters.csf_evals;
    if (!p.csf.full(Prefix(x))) return;
    ++rep.counters.acms_ops;
    const double f = objective_of(p, x);
    if (!found || f > best) {
      found = true;
      best = f;
      rep.best.symbols = x;
    }
  };

  if (p.structure == Structure::kPermutation) {
    std::iota(x.begin(), x.end(), 0);
    do visit();
    while (std::next_permutation(x.begin(), x.end()));
  } else {
    std::vector<std::vector<Symbol>> domain(p.stages);
    for (std::size_t i = 0; i < p.stages; ++i)
      for (Symbol s = 0; s < static_cast<Symbol>(p.symbols()); ++s)
        if (p.is_allowed(i, s)) domain[i].push_back(s);
    std::vector<std::size_t> pos(p.stages, 0);
    for (std::size_t i = 0; i < p.stages; ++i) x[i] = domain[i][0];
    // Odometer step; false once every position has wrapped.
    auto advance = [&] {
      for (std::size_t i = p.stages; i-- > 0;) {
        if (++pos[i] < domain[i].size()) {
          x[i] = domain[i][pos[i]];
          return true;
        }
        pos[i] = 0;
        x[i] = domain[i][0];
      }
      return false;
    };
    do visit();
    while (advance());
  }
  if (!found) throw InfeasibleError(p.stages, true);
  rep.best.objective = best;
  rep.optimal_certified = true;
  return rep;
}

void SaConfig::validate() const {
  if (!(initial_temperature > 0.0))
    throw std::invalid_argument("SA initial temperature must be > 0");
  if (!(cooling_rate > 0.0 && cooling_rate < 1.0))
    throw std::invalid_argument("SA cooling rate must lie in (0, 1)");
  if (iterations < 1) throw std::invalid_argument("SA iterations must be >= 1");
}

SaConfig default_sa_config(const ProblemH& p, std::uint64_t seed) {
  SaConfig cfg;
  cfg.seed = seed;
  if (p.structure == Structure::kPermutation) {
    cfg.neighbor = SaConfig::Neighbor::kAdjacentSwap;
    cfg.iterations = kSaPermutationBudget;
  } else {
    cfg.neighbor = SaConfig::Neighbor::kSingleSymbolFlip;
    cfg.iterations = kSaVectorBudget;
  }
  return cfg;
}

namespace {

constexpr int kStartRestarts = 16;
constexpr std::uint64_t kStartBudget = 10'000;

// Randomized depth-first construction of a feasible assignment.
class RandomStart {
 public:
  RandomStart(const ProblemH& p, Rng& rng, Counters& counters)
      : p_(p), rng_(rng), counters_(counters) {}

  bool run(std::vector<Symbol>& buf) {
    const std::size_t stage = buf.size();
    std::vector<Symbol> order;
    for (Symbol s = 0; s < static_cast<Symbol>(p_.symbols()); ++s)
      if (p_.is_allowed(stage, s) &&
          (stage == 0 || p_.has_transition(stage - 1, buf.back(), s)))
        order.push_back(s);
    rng_.shuffle(order.begin(), order.end());
    for (Symbol s : order) {
      if (++expanded_ > kStartBudget) return false;
      ++counters_.csf_evals;
      buf.push_back(s);
      if (buf.size() == p_.stages) {
        if (p_.csf.full(Prefix(buf))) return true;
      } else if (p_.csf.check_partial(Prefix(buf)) !=
                     Feasibility::kInfeasible &&
                 run(buf)) {
        return true;
      }
      buf.pop_back();
    }
    return false;
  }

 private:
  const ProblemH& p_;
  Rng& rng_;
  Counters& counters_;
  std::uint64_t expanded_ = 0;
};

}  // namespace

SolveReport simulated_annealing(const ProblemH& p, const SaConfig& cfg) {
  p.validate();
  cfg.validate();
  SolveReport rep;
  rep.solver = "sa";
  Rng rng(cfg.seed);

  std::vector<Symbol> cur;
  bool started = false;
  for (int attempt = 0; attempt < kStartRestarts && !started; ++attempt) {
    cur.clear();
    started = RandomStart(p, rng, rep.counters).run(cur);
  }
  if (!started) throw InfeasibleError(1, false);

  ++rep.counters.acms_ops;
  double fcur = objective_of(p, cur);
  std::vector<Symbol> best = cur;
  double fbest = fcur;
  double temperature = cfg.initial_temperature;
  const std::size_t n = p.stages;
  const auto m = static_cast<Symbol>(p.symbols());
  const bool swap = cfg.neighbor == SaConfig::Neighbor::kAdjacentSwap;
  const bool movable = swap ? n >= 2 : m >= 2;

  std::vector<Symbol> cand;
  for (std::uint64_t it = 1; it < cfg.iterations && movable; ++it) {
    cand = cur;
    if (swap) {
      const auto i = rng.below(n - 1);
      std::swap(cand[i], cand[i + 1]);
    } else {
      const auto i = rng.below(n);
      auto s = static_cast<Symbol>(rng.below(m - 1));
      if (s >= cand[i]) ++s;
      cand[i] = s;
    }
    temperature *= cfg.cooling_rate;
    if (!in_domain(p, cand)) continue;
    ++rep.counters.csf_evals;
    if (!p.csf.full(Prefix(cand))) continue;
    ++rep.counters.acms_ops;
    const double f = objective_of(p, cand);
    const double delta = f - fcur;
    if (delta >= 0.0 || rng.uniform() < std::exp(delta / temperature)) {
      cur.swap(cand);
      fcur = f;
      if (fcur > fbest) {
        fbest = fcur;
        best = cur;
      }
    }
  }
  rep.best.symbols = std::move(best);
  rep.best.objective = fbest;
  rep.optimal_certified = false;
  return rep;
}

}  // namespace msdp
