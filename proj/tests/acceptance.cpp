// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "msdp/adc.hpp"
#include "msdp/baselines.hpp"
#include "msdp/cli.hpp"
#include "msdp/cmdp.hpp"
#include "msdp/dfa.hpp"
#include "msdp/generator.hpp"
#include "msdp/solver.hpp"
#include "oracles.hpp"

using namespace msdp;

namespace {

// Pinned thresholds.
constexpr std::size_t kOracleInstances = 240;  // criterion 1 needs >= 200
constexpr std::size_t kOracleMinimum = 200;
constexpr double kOracleSeconds = 120;
constexpr std::uint64_t kWitnessAttempts = 10'000;
constexpr double kWitnessSeconds = 60;
constexpr std::uint64_t kAdcEsCount = 16'777'216;  // 4^12
constexpr std::uint64_t kAdcMsdpMaxTotal = 100'000;
constexpr std::uint64_t kAdcMinReduction = 100;
constexpr double kAdcSeconds = 30;
constexpr std::size_t kReferenceNe = 13;
constexpr std::size_t kCapSweepAbove = 8;
constexpr std::uint64_t kDfaEsCount = 3'628'800;  // 10!
constexpr std::uint64_t kDfaMsdpMaxTotal = 1'000'000;
constexpr double kDfaSeconds = 300;
constexpr std::size_t kCmdpToys = 24;
constexpr double kCmdpTolerance = 1e-9;
constexpr double kCmdpSeconds = 60;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << " (" << name
            << "): " << detail << std::endl;
}

void guarded(int id, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

std::string vec(const std::vector<std::int64_t>& x) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << "]";
  return os.str();
}

std::vector<std::int64_t> one_based(const std::vector<Symbol>& x) {
  std::vector<std::int64_t> out;
  for (Symbol s : x) out.push_back(s + 1);
  return out;
}

void criterion_oracle_equivalence() {
  const auto t0 = Clock::now();
  const std::vector<ConstraintFamily> families{
      ConstraintFamily::kBudget,    ConstraintFamily::kOrdering,
      ConstraintFamily::kPermutation, ConstraintFamily::kBlackbox,
      ConstraintFamily::kMixed,     ConstraintFamily::kNone};
  std::size_t compared = 0, agreed = 0, infeasible_both = 0, generated = 0;
  std::string first_mismatch;
  for (std::uint64_t seed = 0; compared < kOracleInstances && seed < 10 * kOracleInstances;
       ++seed) {
    const auto family = families[seed % families.size()];
    const std::size_t n = 2 + (seed / families.size()) % 7;  // 2..8
    const std::size_t m = 2 + (seed / 7) % 3;                // 2..4
    const ProblemH p = table_problem(random_table_instance(n, m, family, seed));
    ++generated;
    std::optional<SolveReport> es, dp;
    try {
      es = exhaustive_search(p);
    } catch (const InfeasibleError&) {
    }
    try {
      dp = msdp_solve(p);
    } catch (const InfeasibleError&) {
    }
    if (!es && !dp) {
      ++infeasible_both;
      continue;
    }
    ++compared;
    if (es && dp && *es->best.objective == *dp->best.objective &&
        es->best.symbols == dp->best.symbols && dp->optimal_certified) {
      ++agreed;
    } else if (first_mismatch.empty()) {
      first_mismatch = " first mismatch: seed " + std::to_string(seed) + " family " +
                       to_string(family);
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << agreed << "/" << compared << " feasible instances agree exactly (objective "
    << "and tie-broken argmax), " << infeasible_both
    << " infeasible instances rejected by both, " << generated
    << " generated, N<=8 M<=4, families budget/ordering/permutation/blackbox/"
       "mixed/none, "
    << secs << " s (limit " << kOracleSeconds << " s)" << first_mismatch;
  report(1, "oracle equivalence",
         compared >= kOracleMinimum && agreed == compared && secs < kOracleSeconds,
         d.str());
}

void criterion_witness() {
  const auto t0 = Clock::now();
  const auto w = find_single_survivor_witness(1, kWitnessAttempts, 4, 3);
  const double secs = seconds_since(t0);
  if (!w) {
    report(2, "single-survivor witness", false,
           "none found within " + std::to_string(kWitnessAttempts) + " attempts");
    return;
  }
  const ProblemH p = table_problem(w->instance);
  const auto truth = oracle::brute_optimum(p);
  SolveOptions single;
  single.policy = SurvivorPolicy::SingleSurvivor();
  double single_value = -INFINITY;
  try {
    single_value = *msdp_solve(p, single).best.objective;
  } catch (const InfeasibleError&) {
  }
  const double keep_all = *msdp_solve(p).best.objective;
  const bool ok = truth && p.stages <= 4 && p.symbols() <= 3 &&
                  single_value < truth->value && keep_all == truth->value &&
                  secs < kWitnessSeconds;
  std::ostringstream d;
  d << "found after " << w->attempts << " attempts (N=" << p.stages
    << ", M=" << p.symbols() << "): single survivor " << single_value
    << " < brute-force optimum " << (truth ? truth->value : NAN)
    << ", keep-all " << keep_all << ", " << secs << " s";
  report(2, "single-survivor witness", ok, d.str());
}

void criterion_adc() {
  const auto t0 = Clock::now();
  const ProblemH p = adc_problem(bundled_adc_instance());
  const SolveReport dp = msdp_solve(p);
  const SolveReport es = exhaustive_search(p);
  const double secs = seconds_since(t0);
  const std::vector<std::int64_t> ref{4, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1};
  std::vector<Symbol> ref_symbols;
  for (auto b : ref) ref_symbols.push_back(*p.alphabet.index_of(b));
  const bool ref_feasible = p.csf.full(Prefix(ref_symbols));
  const std::int64_t power = adc_power(ref);
  const bool same = dp.best.symbols == es.best.symbols;
  const std::uint64_t reduction = es.counters.total() / std::max<std::uint64_t>(1, dp.counters.total());
  const bool ok = same && ref_feasible && power == 48 &&
                  es.counters.csf_evals == kAdcEsCount &&
                  enumeration_size(p) == kAdcEsCount &&
                  dp.counters.total() < kAdcMsdpMaxTotal &&
                  reduction >= kAdcMinReduction && secs < kAdcSeconds;
  std::ostringstream d;
  d << "msDP " << vec(to_values(p, dp.best.symbols)) << " == ES "
    << vec(to_values(p, es.best.symbols)) << (same ? "" : " (MISMATCH)")
    << ", f=" << *dp.best.objective << "; reference vector "
    << (ref_feasible ? "feasible" : "INFEASIBLE") << " with power " << power
    << (to_values(p, dp.best.symbols) == ref ? " and optimal" : " (not optimal here)")
    << "; ES enumerated " << es.counters.csf_evals << " (expected " << kAdcEsCount
    << "), ES total " << es.counters.total() << "; msDP total "
    << dp.counters.total() << " = " << dp.counters.csf_evals << " csf + "
    << dp.counters.acms_ops << " acms (limit " << kAdcMsdpMaxTotal
    << ", reduction " << reduction << "x, reference count 6912); " << secs << " s";
  report(3, "ADC benchmark", ok, d.str());
}

void criterion_ne_bound() {
  const ProblemH p = adc_problem(bundled_adc_instance());
  const NeBound ne = measure_ne_bound(p);
  const SolveReport full = msdp_solve(p);
  bool above_ok = true;
  for (std::size_t k = ne.bound; k <= ne.bound + kCapSweepAbove; ++k) {
    SolveOptions o;
    o.policy = SurvivorPolicy::Cap(k);
    const SolveReport r = msdp_solve(p, o);
    above_ok = above_ok && r.optimal_certified && r.best == full.best;
  }
  std::vector<std::size_t> suboptimal;
  for (std::size_t k = 1; k < ne.bound; ++k) {
    SolveOptions o;
    o.policy = SurvivorPolicy::Cap(k);
    try {
      if (*msdp_solve(p, o).best.objective < *full.best.objective)
        suboptimal.push_back(k);
    } catch (const InfeasibleError&) {
      suboptimal.push_back(k);
    }
  }
  std::size_t node_max = 0;
  for (const auto& row : ne.node_demand)
    for (std::size_t v : row) node_max = std::max(node_max, v);
  std::ostringstream d;
  d << "measured bound " << ne.bound << " (reference: >= " << kReferenceNe
    << ", informational), largest per-node demand " << node_max
    << ", stage demand [";
  for (std::size_t i = 0; i < ne.stage_demand.size(); ++i)
    d << (i ? "," : "") << ne.stage_demand[i];
  d << "]; Cap(k) certified optimal for k in [" << ne.bound << ","
    << ne.bound + kCapSweepAbove << "]: " << (above_ok ? "yes" : "NO")
    << "; suboptimal caps below the bound: ";
  if (suboptimal.empty()) d << "none";
  for (std::size_t i = 0; i < suboptimal.size(); ++i)
    d << (i ? "," : "") << suboptimal[i];
  report(4, "survivor-demand bound, ADC", above_ok && !suboptimal.empty(), d.str());
}

void criterion_dfa() {
  const auto t0 = Clock::now();
  const DfaInstance inst = bundled_dfa_instance();
  const ProblemH p = dfa_problem(inst);
  DfaInstance plain_inst = inst;
  plain_inst.bound_enabled = false;
  const SolveReport es = exhaustive_search(dfa_problem(plain_inst));
  const SolveReport dp = msdp_solve(p);
  const double secs = seconds_since(t0);
  const std::vector<std::int64_t> reference{6, 3, 10, 5, 7, 9, 1, 8, 2, 4};
  const auto ref = ecoli_reference_order();
  std::vector<Symbol> reversed(dp.best.symbols.rbegin(), dp.best.symbols.rend());
  const std::string assembled = assemble_oriented(dp.best.symbols, inst.fragments);
  const bool same = dp.best.symbols == es.best.symbols;
  const bool matches_reference = one_based(dp.best.symbols) == reference;
  const double reference_value = evaluate_objective(p, Prefix(ref));
  const bool ok = same && assembled == kEcoliSection &&
                  es.counters.csf_evals == kDfaEsCount &&
                  dp.counters.total() < kDfaMsdpMaxTotal && secs < kDfaSeconds;
  std::ostringstream d;
  d << "msDP " << vec(one_based(dp.best.symbols)) << " == ES "
    << vec(one_based(es.best.symbols)) << (same ? "" : " (MISMATCH)")
    << ", J=" << *dp.best.objective << "; ES enumerated " << es.counters.csf_evals
    << " permutations; assembled " << assembled << "; msDP total "
    << dp.counters.total() << " = " << dp.counters.csf_evals << " csf + "
    << dp.counters.acms_ops << " acms (limit " << kDfaMsdpMaxTotal
    << ", reference count 83890); " << secs << " s";
  if (!matches_reference) {
    d << "; FLAG score sensitivity: under match=1 mismatch=-1 gap=-1 the "
         "oracle ordering differs from the reference "
      << vec(reference) << ", which scores " << reference_value
      << (reversed == ref ? " and is the exact reversal of the oracle ordering "
                            "(symmetric scores tie both reading directions; "
                            "lexicographic tie-break picks this one)"
                          : "");
  }
  report(5, "DFA benchmark", ok, d.str());
}

void criterion_sa() {
  struct Case {
    std::string name;
    ProblemH p;
    std::uint64_t budget;
  };
  std::vector<Case> cases{{"adc", adc_problem(bundled_adc_instance()), kSaVectorBudget},
                          {"dfa", dfa_problem(bundled_dfa_instance()), kSaPermutationBudget}};
  bool ok = true;
  std::ostringstream d;
  for (const auto& c : cases) {
    const SaConfig cfg = default_sa_config(c.p, 1);
    const SolveReport a = simulated_annealing(c.p, cfg);
    const SolveReport b = simulated_annealing(c.p, cfg);
    const double optimum = *msdp_solve(c.p).best.objective;
    const bool feasible = in_domain(c.p, a.best.symbols) && c.p.csf.full(Prefix(a.best.symbols));
    const bool repeat = a.best == b.best && a.counters == b.counters;
    const bool case_ok = cfg.iterations == c.budget && feasible &&
                         *a.best.objective <= optimum && repeat &&
                         !a.optimal_certified;
    ok = ok && case_ok;
    d << c.name << ": budget " << cfg.iterations << ", f=" << *a.best.objective
      << " <= optimum " << optimum << ", feasible " << (feasible ? "yes" : "NO")
      << ", repeat-identical " << (repeat ? "yes" : "NO") << "; ";
  }
  report(6, "SA baseline", ok, d.str());
}

void criterion_cmdp() {
  const auto t0 = Clock::now();
  struct Shape {
    std::size_t states, actions, horizon;
  };
  const std::vector<Shape> shapes{{2, 2, 4}, {2, 3, 3}, {3, 2, 3}, {3, 3, 2},
                                  {4, 2, 2}, {4, 3, 2}, {2, 3, 4}, {3, 2, 4}};
  std::size_t toys = 0, constrained_ok = 0, free_ok = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < kCmdpToys; ++k) {
    const Shape s = shapes[k % shapes.size()];
    const FiniteCmdp m = random_cmdp(s.states, s.actions, s.horizon, 1000 + k);
    ++toys;
    const auto truth = oracle::cmdp_optimum(m);
    if (truth) {
      const double got = *msdp_solve(cmdp_to_h(m)).best.objective;
      worst = std::max(worst, std::abs(got - *truth));
      if (std::abs(got - *truth) <= kCmdpTolerance) ++constrained_ok;
    }
    FiniteCmdp free = m;
    free.budget = std::numeric_limits<double>::infinity();
    const double got = *msdp_solve(cmdp_to_h(free)).best.objective;
    const double bi = oracle::backward_induction(free);
    worst = std::max(worst, std::abs(got - bi));
    if (std::abs(got - bi) <= kCmdpTolerance) ++free_ok;
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << constrained_ok << "/" << toys << " constrained toys match trajectory "
    << "enumeration, " << free_ok << "/" << toys
    << " unconstrained match backward induction, max |diff| " << worst
    << " (tolerance " << kCmdpTolerance << "), <=4 states, <=3 actions, "
    << "horizon <=4, " << secs << " s";
  report(7, "CMDP adapter",
         constrained_ok == toys && free_ok == toys && secs < kCmdpSeconds,
         d.str());
}

void criterion_determinism() {
  auto first = comparisons_json(bench());
  auto second = comparisons_json(bench());
  bool totals_ok = true;
  std::size_t reports = 0;
  for (const auto* doc : {&first, &second})
    for (const auto& inst : (*doc)["instances"])
      for (const auto& row : inst["solvers"]) {
        if (!row.contains("counters")) {
          totals_ok = false;
          continue;
        }
        ++reports;
        const auto& c = row["counters"];
        totals_ok = totals_ok && c["total"].get<std::uint64_t>() ==
                                     c["csf"].get<std::uint64_t>() +
                                         c["acms"].get<std::uint64_t>();
      }
  strip_wall_time(first);
  strip_wall_time(second);
  const std::string a = first.dump(2), b = second.dump(2);
  std::ostringstream d;
  d << "two bench runs " << (a == b ? "byte-identical" : "DIFFER")
    << " without wall_ms (" << a.size() << " bytes); total == csf + acms in "
    << reports << " reports: " << (totals_ok ? "yes" : "NO");
  report(8, "determinism and counters", a == b && totals_ok && reports == 12,
         d.str());
}

}  // namespace

int main() {
  guarded(1, "oracle equivalence", criterion_oracle_equivalence);
  guarded(2, "single-survivor witness", criterion_witness);
  guarded(3, "ADC benchmark", criterion_adc);
  guarded(4, "survivor-demand bound, ADC", criterion_ne_bound);
  guarded(5, "DFA benchmark", criterion_dfa);
  guarded(6, "SA baseline", criterion_sa);
  guarded(7, "CMDP adapter", criterion_cmdp);
  guarded(8, "determinism and counters", criterion_determinism);
  std::cout << (failures == 0 ? "all criteria passed" : "some criteria failed")
            << std::endl;
  return failures;
}
