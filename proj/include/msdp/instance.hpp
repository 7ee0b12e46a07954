#pragma once

// Plain-data instance descriptions and their JSON file format:
//
//   {"N": int, "alphabet": [values], "b": [N reals],
//    "phi": {"table": [[M reals] x N]}
//         | {"adapter": "adc" | "dfa" | "cmdp", "params": {...}},
//    "constraints": {...}}
//
// Table instances declare their constraints as a conjunction of families in
// the constraints block; adapter instances carry them in their params and
// leave the block empty.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "msdp/adc.hpp"
#include "msdp/cmdp.hpp"
#include "msdp/core.hpp"
#include "msdp/dfa.hpp"

namespace msdp {

struct TableInstance {
  enum class Ordering { kNone, kNonIncreasing, kNonDecreasing };

  struct Budget {
    std::vector<std::vector<double>> weights;  // [N][M]
    double capacity = 0.0;
    bool operator==(const Budget&) const = default;
  };

  // Pseudo-random black-box constraint: x is feasible iff a hash of
  // (seed, x) falls below `density`. Has no useful partial check.
  struct Blackbox {
    std::uint64_t seed = 0;
    double density = 0.5;
    bool operator==(const Blackbox&) const = default;
  };

  std::vector<std::int64_t> alphabet;
  std::vector<double> weights;
  std::vector<std::vector<double>> phi;  // [N][M]
  Structure structure = Structure::kVector;
  std::optional<Budget> budget;
  Ordering ordering = Ordering::kNone;
  bool distinct = false;  // implied by permutation structure
  std::optional<Blackbox> blackbox;

  std::size_t stages() const { return phi.size(); }
  void validate() const;
  bool operator==(const TableInstance&) const = default;
};

ProblemH table_problem(const TableInstance& inst);

struct CmdpSpec {
  FiniteCmdp model;
  std::vector<DecisionRule> rules;  // empty: every deterministic rule
  bool operator==(const CmdpSpec&) const = default;
};

using InstanceSpec =
    std::variant<TableInstance, AdcInstance, DfaInstance, CmdpSpec>;

ProblemH to_problem(const InstanceSpec& spec);

// Throws ParseError naming the offending field. `base_dir` resolves relative
// FASTA paths in dfa params.
InstanceSpec parse_instance(const nlohmann::ordered_json& j,
                            const std::filesystem::path& base_dir = {});
InstanceSpec parse_instance_text(const std::string& text,
                                 const std::filesystem::path& base_dir = {});
InstanceSpec load_instance(const std::filesystem::path& path);

nlohmann::ordered_json instance_to_json(const InstanceSpec& spec);
// Two-space indented JSON with a trailing newline.
std::string dump_instance(const InstanceSpec& spec);

}  // namespace msdp
