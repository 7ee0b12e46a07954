#pragma once

// Library side of the `msdp` command line tool: running solvers on an
// instance, the bundled benchmark, and report formatting.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "msdp/baselines.hpp"
#include "msdp/instance.hpp"
#include "msdp/solver.hpp"

namespace msdp {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitInfeasible = 4,
  kExitBudget = 5,
};

enum class Format { kJson, kCsv, kTable };
std::optional<Format> parse_format(const std::string& name);

struct RunSpec {
  std::filesystem::path instance;
  std::vector<std::string> solvers;  // subset of msdp, es, sa
  SurvivorPolicy policy;
  std::optional<std::uint64_t> sa_iterations;  // default by structure
  std::uint64_t sa_seed = 1;
  std::size_t threads = 1;
  Format format = Format::kJson;
  std::optional<std::filesystem::path> output;

  // Throws std::invalid_argument on an empty or unknown solver list.
  void validate() const;
};

struct SolverRun {
  std::string solver;
  std::optional<SolveReport> report;
  std::vector<std::int64_t> x;  // display values of the best assignment
  bool feasible = false;        // independent full check of the result
  double wall_ms = 0.0;
  std::string error;
  int exit_code = kExitOk;
};

struct Comparison {
  std::string instance;
  std::size_t stages = 0;
  std::size_t symbols = 0;
  std::vector<SolverRun> rows;
  // DFA instances: oriented assembly of the msDP (else ES) ordering.
  std::optional<std::string> assembled;
  std::vector<std::string> notes;

  // First non-zero solver exit code, or 0.
  int exit_code() const;
};

// Runs one solver and never throws for solver-side failures; they land in
// SolverRun::error with a matching exit code.
SolverRun run_solver(const ProblemH& p, const std::string& solver,
                     const RunSpec& spec);

Comparison run(const RunSpec& spec);
Comparison run_on(const std::string& name, const InstanceSpec& inst,
                  const RunSpec& spec);

// Runs msdp, es and sa on the bundled ADC and DFA instances.
std::vector<Comparison> bench(std::size_t threads = 1);

// Report document for one solve:
// {"best":{"x":[...],"f":real},"counters":{"csf","acms","total"},
//  "ne_bound":int|null,"certified":bool}
nlohmann::ordered_json solve_report_json(const ProblemH& p,
                                         const SolveReport& r);

nlohmann::ordered_json comparison_json(const Comparison& c);
nlohmann::ordered_json comparisons_json(const std::vector<Comparison>& cs);

inline constexpr const char* kCsvHeader =
    "solver,objective,feasible,certified,csf_evals,acms_ops,total,wall_ms";
// Frozen columns above. With several instances the solver cell reads
// "<instance>/<solver>".
std::string comparison_csv(const std::vector<Comparison>& cs);
// Aligned text mirroring the computations / solutions comparison tables.
std::string comparison_table(const std::vector<Comparison>& cs);

std::string render(const std::vector<Comparison>& cs, Format f);

// Removes every "wall_ms" member, recursively.
void strip_wall_time(nlohmann::ordered_json& j);

}  // namespace msdp
