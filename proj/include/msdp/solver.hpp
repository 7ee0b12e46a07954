#pragma once

// Multi-survivor dynamic programming over the problem trellis.
//
// Each trellis node keeps a ranked list of survivors (feasible prefixes that
// end in the node's symbol). A stage step runs Add-Compare-Multiple-Select at
// every node: extend each incoming survivor by the node's symbol, drop the
// extensions whose prefix can no longer be completed feasibly, rank the rest
// by accumulated objective and keep as many as the survivor policy allows.
// Keeping every feasible survivor restores the principle of optimality that
// single-survivor DP loses under constraints.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <span>
#include <vector>

#include "msdp/core.hpp"
#include "msdp/trellis.hpp"

namespace msdp {

struct Survivor {
  PartialAssignment pa;
  std::optional<Digest> digest;
};

// Ranking used everywhere: larger lambda first, then lexicographically
// smaller symbol indices.
bool ranks_before(const PartialAssignment& a, const PartialAssignment& b);

struct SurvivorPolicy {
  enum class Mode { kKeepAllFeasible, kCap };

  Mode mode = Mode::kKeepAllFeasible;
  std::size_t cap = 0;  // survivors per node, used when mode == kCap
  bool merge_dominated = false;

  static SurvivorPolicy KeepAllFeasible(bool merge = false) {
    return {Mode::kKeepAllFeasible, 0, merge};
  }
  // Throws std::invalid_argument for n == 0.
  static SurvivorPolicy Cap(std::size_t n, bool merge = false);
  static SurvivorPolicy SingleSurvivor() { return Cap(1); }

  bool bounded() const { return mode == Mode::kCap; }
};

struct SolveOptions {
  SurvivorPolicy policy;
  // Node-expansion budget per completion search; nullopt uses the default
  // 10 * M^min(4, N - m), or MSDP_BUDGET when that variable is set.
  std::optional<std::uint64_t> completion_budget;
  std::size_t threads = 1;
  // Number of best final survivors to list in the report.
  std::size_t top_k = 0;
};

struct SolveReport {
  std::string solver;
  Assignment best;
  std::vector<PartialAssignment> top_k;
  Counters counters;
  // Per stage, total survivors demanded over all nodes after constraint
  // pruning (and dominance merging, when enabled), before any cap.
  std::vector<std::size_t> stage_demand;
  // node_demand[i][j]: survivors demanded at node (i, j).
  std::vector<std::vector<std::size_t>> node_demand;
  std::optional<std::size_t> ne_bound;  // max of stage_demand
  std::size_t ne_used = 0;              // largest per-node list retained
  std::uint64_t unresolved = 0;         // completion searches out of budget
  std::uint64_t evicted = 0;            // feasible survivors dropped by a cap
  bool optimal_certified = false;
};

// Running state shared by the per-node steps of one solve.
struct AcmsStats {
  Counters counters;
  std::uint64_t unresolved = 0;
  std::uint64_t evicted = 0;
  std::size_t demand = 0;  // survivors before the cap, after pruning/merging
};

struct AcmsContext {
  const ProblemH& problem;
  SurvivorPolicy policy;
  std::optional<std::uint64_t> completion_budget;
};

// One ACMS step at trellis node (stage, symbol). `incoming` holds the
// survivor lists of the predecessor nodes at stage - 1 that have an edge into
// this node; at stage 0 it is the start node's single empty survivor.
// Returns the kept survivors in rank order.
std::vector<Survivor> acms(const AcmsContext& ctx, std::size_t stage,
                           Symbol symbol,
                           std::span<const std::span<const Survivor>> incoming,
                           AcmsStats& stats);

// Decides whether `prefix` has a feasible completion by depth-first search,
// pruning on partial checks. Every expanded node counts one CSF evaluation.
// Returns kFeasible or kInfeasible; throws BudgetExceededError after
// `budget` expansions without a verdict.
Feasibility completion_search(const ProblemH& p, Prefix prefix,
                              std::uint64_t budget, Counters& counters);

std::uint64_t default_completion_budget(const ProblemH& p, std::size_t stage);

// Throws InfeasibleError when no feasible assignment survives and
// InvalidInstanceError on malformed problems.
SolveReport msdp_solve(const ProblemH& p, const SolveOptions& options = {});

// Lower bound on the survivors needed for guaranteed optimality: the largest
// number of feasible partial paths over the nodes of any one stage, measured
// by a keep-all sweep without dominance merging. The report carries the
// per-node counts.
struct NeBound {
  std::size_t bound = 0;
  std::vector<std::size_t> stage_demand;
  std::vector<std::vector<std::size_t>> node_demand;
};
NeBound measure_ne_bound(const ProblemH& p);

}  // namespace msdp
