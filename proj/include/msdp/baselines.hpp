#pragma once

// Comparison solvers: exhaustive enumeration (the correctness oracle) and a
// seeded simulated-annealing heuristic.

#include <cstdint>

#include "msdp/core.hpp"
#include "msdp/solver.hpp"

namespace msdp {

// Mask and transition-filter membership of a full assignment.
bool in_domain(const ProblemH& p, Prefix symbols);

struct EsOptions {
  std::uint64_t cap = 100'000'000;
};

// Number of candidates exhaustive search would visit (M^N, or N! for
// permutation instances), saturating at UINT64_MAX.
std::uint64_t enumeration_size(const ProblemH& p);

// Enumerates every assignment in lexicographic order of symbol indices (every
// permutation for permutation-structured problems). One CSF evaluation per
// candidate, one ACMS-equivalent operation per objective evaluation of a
// feasible candidate. Ties keep the lexicographically first assignment.
// Throws SizeError above the cap, InfeasibleError if nothing is feasible.
SolveReport exhaustive_search(const ProblemH& p, const EsOptions& options = {});

struct SaConfig {
  enum class Neighbor { kSingleSymbolFlip, kAdjacentSwap };

  double initial_temperature = 1.0;
  double cooling_rate = 0.995;
  // Candidate solutions evaluated, the initial one included.
  std::uint64_t iterations = 1000;
  Neighbor neighbor = Neighbor::kSingleSymbolFlip;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument.
  void validate() const;
};

inline constexpr std::uint64_t kSaVectorBudget = 5220;
inline constexpr std::uint64_t kSaPermutationBudget = 380;

// Swap moves and the 380-candidate budget for permutation problems, symbol
// flips and 5220 candidates otherwise.
SaConfig default_sa_config(const ProblemH& p, std::uint64_t seed = 1);

// Metropolis acceptance over feasible neighbours with geometric cooling.
// Infeasible proposals are rejected outright. The start point comes from a
// randomized depth-first construction guided by the partial checks. Never
// certifies optimality. Throws InfeasibleError if no feasible start is found.
SolveReport simulated_annealing(const ProblemH& p, const SaConfig& cfg);

}  // namespace msdp
