#pragma once

// Seeded random instances for property tests and the `gen` subcommand.
// Every generator is a pure function of its arguments.

#include <cstdint>
#include <optional>
#include <string>

#include "msdp/instance.hpp"

namespace msdp {

enum class ConstraintFamily {
  kNone,
  kBudget,
  kOrdering,
  kPermutation,
  kBlackbox,
  kMixed,  // budget + ordering, exercising completion search
};

std::optional<ConstraintFamily> parse_family(const std::string& name);
const char* to_string(ConstraintFamily f);

// phi entries are multiples of 0.5 in [0, 10) so that ties occur; weights
// are drawn from {0.5, 1, 2}. Permutation instances force M = N.
TableInstance random_table_instance(std::size_t stages, std::size_t symbols,
                                    ConstraintFamily family,
                                    std::uint64_t seed);

// Fragments of length `length` cut from a random genome at random offsets
// (every base covered), returned in shuffled order.
DfaInstance random_dfa_instance(std::size_t fragments, std::size_t length,
                                std::uint64_t seed, bool bound = false);

// Dirichlet-like random kernels, rewards in [0, 1), non-negative costs in
// [0, 1), budget set between the cheapest and the average policy cost when
// `constrained` (infinite otherwise).
FiniteCmdp random_cmdp(std::size_t states, std::size_t actions,
                       std::size_t horizon, std::uint64_t seed,
                       bool constrained = true);

// A small budget-constrained table instance on which single-survivor DP
// returns a strictly worse value than the exhaustive optimum while the
// keep-all sweep matches it.
struct SingleSurvivorWitness {
  TableInstance instance;
  std::uint64_t attempts = 0;
  double single_survivor_value = 0.0;
  double optimum = 0.0;
};

std::optional<SingleSurvivorWitness> find_single_survivor_witness(
    std::uint64_t seed, std::uint64_t max_attempts = 10'000,
    std::size_t max_stages = 4, std::size_t max_symbols = 3);

}  // namespace msdp
