#pragma once

// Problem-instance data model for stage-separable constrained discrete
// optimization:
//
//   maximize  f(x) = sum_i b_i * phi_i(x_i)   subject to  A(x) = 1
//
// where every x_i is drawn from one finite alphabet and A is an arbitrary
// constraint-satisfaction oracle. Symbols are addressed by their index
// 0..M-1 into the alphabet; the alphabet maps indices to display values.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msdp/errors.hpp"

namespace msdp {

using Symbol = int;
using Prefix = std::span<const Symbol>;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::int64_t> values,
                    std::vector<std::string> labels = {});

  // Values lo, lo+1, ..., hi.
  static Alphabet Range(std::int64_t lo, std::int64_t hi);

  std::size_t size() const { return values_.size(); }
  std::int64_t value(Symbol s) const { return values_.at(s); }
  const std::vector<std::int64_t>& values() const { return values_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Symbol s) const;
  std::optional<Symbol> index_of(std::int64_t value) const;
  bool contains(Symbol s) const {
    return s >= 0 && static_cast<std::size_t>(s) < values_.size();
  }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::int64_t> values_;
  std::vector<std::string> labels_;
};

enum class Feasibility { kFeasible, kInfeasible, kUnknown };

const char* to_string(Feasibility f);

// Opaque constraint-state summary of a prefix. Equal digests at equal stage
// must imply that every suffix completes both prefixes identically.
using Digest = std::vector<std::int64_t>;

struct CsfOracle {
  // A(x) on a full assignment. Required.
  std::function<bool(Prefix)> full;
  // Completability of a prefix. Must never answer kFeasible for a prefix with
  // no feasible completion, nor kInfeasible for one that has. Optional; an
  // empty function behaves as "always kUnknown".
  std::function<Feasibility(Prefix)> partial;
  // Optional; enables dominance merging in the solver.
  std::function<Digest(Prefix)> digest;

  Feasibility check_partial(Prefix prefix) const {
    return partial ? partial(prefix) : Feasibility::kUnknown;
  }
};

// How far back the stage reward looks. kNode: phi_i(x_i) only, the prefix
// must be ignored. kPair: may read prefix.back() and nothing else (the reward
// sits on the incoming trellis edge). kPath: the whole prefix, so rewards are
// not edge-local.
enum class RewardLocality { kNode, kPair, kPath };

// phi_i evaluated at `stage` (0-based) for `symbol`, given the symbols already
// placed at stages 0..stage-1.
using StageReward = std::function<double(std::size_t stage, Prefix prefix,
                                         Symbol symbol)>;

// Declares that feasible assignments are exactly permutations of the
// alphabet (N == M); exhaustive search then walks N! orders instead of M^N.
enum class Structure { kVector, kPermutation };

// Optional admissible pruning rule: a prefix whose `optimistic` upper bound
// on the remaining reward cannot lift it to `incumbent` is dropped.
struct PruningBound {
  std::function<double(Prefix)> optimistic;
  double incumbent = 0.0;
};

struct ProblemH {
  std::string name;
  std::size_t stages = 0;
  Alphabet alphabet;
  std::vector<double> weights;
  StageReward reward;
  RewardLocality locality = RewardLocality::kNode;
  CsfOracle csf;
  Structure structure = Structure::kVector;
  // allowed[i][s]; empty means every symbol is allowed at every stage.
  std::vector<std::vector<bool>> allowed;
  // Optional forbidden-transition hook: (stage of `from`, from, to).
  std::function<bool(std::size_t, Symbol, Symbol)> transition;
  std::optional<PruningBound> bound;

  std::size_t symbols() const { return alphabet.size(); }
  bool is_allowed(std::size_t stage, Symbol s) const {
    return allowed.empty() || allowed[stage][s];
  }
  bool has_transition(std::size_t stage, Symbol from, Symbol to) const {
    return !transition || transition(stage, from, to);
  }
  // b_{i} * phi_{i}(symbol | prefix), the folded stage term.
  double term(std::size_t stage, Prefix prefix, Symbol symbol) const {
    return weights[stage] * reward(stage, prefix, symbol);
  }

  // Throws InvalidInstanceError.
  void validate() const;
};

struct Assignment {
  std::vector<Symbol> symbols;
  std::optional<double> objective;

  bool operator==(const Assignment&) const = default;
};

struct PartialAssignment {
  std::vector<Symbol> prefix;
  double lambda = 0.0;

  std::size_t stage() const { return prefix.size(); }
};

struct Counters {
  std::uint64_t csf_evals = 0;
  std::uint64_t acms_ops = 0;

  std::uint64_t total() const { return csf_evals + acms_ops; }
  Counters& operator+=(const Counters& o) {
    csf_evals += o.csf_evals;
    acms_ops += o.acms_ops;
    return *this;
  }
  bool operator==(const Counters&) const = default;
};

// Throws InvalidAssignmentError if `symbols` is not a valid full assignment.
void check_assignment(const ProblemH& p, Prefix symbols);

// f(x) = sum_i b_i phi_i(x_i), accumulated in stage order so that it matches
// incremental prefix sums bit for bit.
double evaluate_objective(const ProblemH& p, Prefix symbols);
double evaluate_objective(const ProblemH& p, Assignment& a);

PartialAssignment extend(const PartialAssignment& pa, Symbol symbol,
                         const ProblemH& p);

// Display values of an assignment.
std::vector<std::int64_t> to_values(const ProblemH& p, Prefix symbols);

}  // namespace msdp
