#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msdp/adc.hpp"
#include "msdp/cli.hpp"
#include "msdp/errors.hpp"
#include "msdp/generator.hpp"

namespace {

int emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
    return msdp::kExitOk;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << output << "\n";
    return msdp::kExitUsage;
  }
  out << text;
  return out ? msdp::kExitOk : msdp::kExitUsage;
}

struct SolveArgs {
  std::string instance;
  std::vector<std::string> solvers{"msdp"};
  std::size_t ne_cap = 0;
  bool merge = false;
  std::uint64_t sa_iters = 0;
  std::uint64_t sa_seed = 1;
  std::string format = "json";
  std::size_t threads = 1;
  std::string output;
};

struct GenArgs {
  std::string kind;
  std::size_t n = 4;
  std::size_t m = 3;
  std::string family = "budget";
  double power = 48.0;
  std::size_t length = 8;
  std::size_t states = 3;
  std::size_t actions = 2;
  std::size_t horizon = 3;
  bool unconstrained = false;
  std::uint64_t attempts = 10'000;
  std::uint64_t seed = 1;
  std::string output;
};

int run_solve(const SolveArgs& a) {
  const auto format = msdp::parse_format(a.format);
  if (!format) {
    std::cerr << "error: unknown format '" << a.format << "'\n";
    return msdp::kExitUsage;
  }
  msdp::RunSpec spec;
  spec.instance = a.instance;
  spec.solvers = a.solvers;
  spec.policy = a.ne_cap > 0 ? msdp::SurvivorPolicy::Cap(a.ne_cap)
                             : msdp::SurvivorPolicy::KeepAllFeasible(a.merge);
  spec.policy.merge_dominated = a.merge;
  if (a.sa_iters > 0) spec.sa_iterations = a.sa_iters;
  spec.sa_seed = a.sa_seed;
  spec.threads = a.threads;
  spec.format = *format;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return msdp::kExitUsage;
  }
  const msdp::Comparison c = msdp::run(spec);
  for (const auto& row : c.rows)
    if (!row.error.empty())
      std::cerr << row.solver << ": " << row.error << "\n";
  const int written = emit(msdp::render({c}, *format), a.output);
  return written != msdp::kExitOk ? written : c.exit_code();
}

int run_gen(const GenArgs& a) {
  std::optional<msdp::InstanceSpec> inst;
  if (a.kind == "random-table") {
    const auto family = msdp::parse_family(a.family);
    if (!family) {
      std::cerr << "error: unknown constraint family '" << a.family << "'\n";
      return msdp::kExitUsage;
    }
    inst = msdp::random_table_instance(a.n, a.m, *family, a.seed);
  } else if (a.kind == "adc") {
    inst = msdp::random_adc_instance(a.n, a.power, a.seed);
  } else if (a.kind == "dfa-random") {
    inst = msdp::random_dfa_instance(a.n, a.length, a.seed, true);
  } else if (a.kind == "cmdp-random") {
    inst = msdp::CmdpSpec{msdp::random_cmdp(a.states, a.actions, a.horizon,
                                            a.seed, !a.unconstrained),
                          {}};
  } else if (a.kind == "witness") {
    const auto w =
        msdp::find_single_survivor_witness(a.seed, a.attempts, a.n, a.m);
    if (!w) {
      std::cerr << "none found within " << a.attempts << " attempts\n";
      return msdp::kExitBudget;
    }
    std::cerr << "witness after " << w->attempts
              << " attempts: single survivor " << w->single_survivor_value
              << " < optimum " << w->optimum << "\n";
    inst = w->instance;
  } else {
    std::cerr << "error: unknown kind '" << a.kind
              << "' (random-table, adc, dfa-random, cmdp-random, witness)\n";
    return msdp::kExitUsage;
  }
  return emit(msdp::dump_instance(*inst), a.output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-survivor dynamic programming solver and benchmarks"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve an instance file");
  s->add_option("instance", solve.instance, "Instance JSON file")
      ->required();
  s->add_option("--solver", solve.solvers, "Comma-separated: msdp, es, sa")
      ->delimiter(',');
  s->add_option("--ne-cap", solve.ne_cap,
                "Survivors kept per node (0 keeps every feasible one)");
  s->add_flag("--merge-dominated", solve.merge,
              "Drop survivors dominated by one with the same constraint state");
  s->add_option("--sa-iters", solve.sa_iters, "SA candidate budget");
  s->add_option("--sa-seed", solve.sa_seed, "SA seed");
  s->add_option("--format", solve.format, "json, csv or table");
  s->add_option("--threads", solve.threads, "msDP worker threads")
      ->check(CLI::PositiveNumber);
  s->add_option("--output", solve.output, "Output file (default stdout)");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Emit a seeded instance file");
  g->add_option("kind", gen.kind,
                "random-table, adc, dfa-random, cmdp-random or witness")
      ->required();
  g->add_option("-N,--stages", gen.n,
                "Stages / paths / fragments (witness: max stages)");
  g->add_option("-M,--symbols", gen.m, "Symbols (witness: max symbols)");
  g->add_option("--family", gen.family,
                "none, budget, ordering, permutation, blackbox or mixed");
  g->add_option("--power", gen.power, "ADC power budget");
  g->add_option("--length", gen.length, "DFA fragment length");
  g->add_option("--states", gen.states, "CMDP states");
  g->add_option("--actions", gen.actions, "CMDP actions");
  g->add_option("--horizon", gen.horizon, "CMDP horizon");
  g->add_flag("--unconstrained", gen.unconstrained, "CMDP without a budget");
  g->add_option("--attempts", gen.attempts, "Witness attempt cap");
  g->add_option("--seed", gen.seed, "Seed");
  g->add_option("--output", gen.output, "Output file (default stdout)");

  std::string bench_format = "table";
  std::string bench_output;
  std::size_t bench_threads = 1;
  auto* b = app.add_subcommand("bench", "Run the bundled ADC and DFA instances");
  b->add_option("--format", bench_format, "json, csv or table");
  b->add_option("--threads", bench_threads, "msDP worker threads")
      ->check(CLI::PositiveNumber);
  b->add_option("--output", bench_output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? msdp::kExitOk : msdp::kExitUsage;
  }

  try {
    if (*s) return run_solve(solve);
    if (*g) return run_gen(gen);
    const auto format = msdp::parse_format(bench_format);
    if (!format) {
      std::cerr << "error: unknown format '" << bench_format << "'\n";
      return msdp::kExitUsage;
    }
    const auto reports = msdp::bench(bench_threads);
    int rc = emit(msdp::render(reports, *format), bench_output);
    for (const auto& c : reports)
      if (rc == msdp::kExitOk) rc = c.exit_code();
    return rc;
  } catch (const msdp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return msdp::kExitParse;
  } catch (const msdp::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return msdp::kExitInfeasible;
  } catch (const msdp::BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return msdp::kExitBudget;
  } catch (const msdp::SizeError& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return msdp::kExitBudget;
  } catch (const msdp::InvalidInstanceError& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return msdp::kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return msdp::kExitInternal;
  }
}
