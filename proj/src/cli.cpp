#include "msdp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "msdp/adc.hpp"
#include "msdp/dfa.hpp"

namespace msdp {

using Json = nlohmann::ordered_json;

std::optional<Format> parse_format(const std::string& name) {
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  if (name == "table" || name == "text" || name == "text-table")
    return Format::kTable;
  return std::nullopt;
}

void RunSpec::validate() const {
  if (solvers.empty()) throw std::invalid_argument("no solver selected");
  for (const auto& s : solvers)
    if (s != "msdp" && s != "es" && s != "sa")
      throw std::invalid_argument("unknown solver '" + s +
                                  "' (expected msdp, es or sa)");
}

int Comparison::exit_code() const {
  for (const auto& r : rows)
    if (r.exit_code != kExitOk) return r.exit_code;
  return kExitOk;
}

SolverRun run_solver(const ProblemH& p, const std::string& solver,
                     const RunSpec& spec) {
  SolverRun row;
  row.solver = solver;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (solver == "msdp") {
      SolveOptions opt;
      opt.policy = spec.policy;
      opt.threads = spec.threads;
      row.report = msdp_solve(p, opt);
    } else if (solver == "es") {
      row.report = exhaustive_search(p);
    } else if (solver == "sa") {
      SaConfig cfg = default_sa_config(p, spec.sa_seed);
      if (spec.sa_iterations) cfg.iterations = *spec.sa_iterations;
      row.report = simulated_annealing(p, cfg);
    } else {
      throw std::invalid_argument("unknown solver '" + solver + "'");
    }
    const auto& best = row.report->best.symbols;
    row.x = to_values(p, best);
    row.feasible = in_domain(p, best) && p.csf.full(Prefix(best));
  } catch (const InfeasibleError& e) {
    row.error = e.what();
    row.exit_code = kExitInfeasible;
  } catch (const SizeError& e) {
    row.error = e.what();
    row.exit_code = kExitBudget;
  } catch (const BudgetExceededError& e) {
    row.error = e.what();
    row.exit_code = kExitBudget;
  } catch (const std::invalid_argument& e) {
    row.error = e.what();
    row.exit_code = kExitUsage;
  } catch (const std::exception& e) {
    row.error = e.what();
    row.exit_code = kExitInternal;
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return row;
}

Comparison run_on(const std::string& name, const InstanceSpec& inst,
                  const RunSpec& spec) {
  spec.validate();
  const ProblemH p = to_problem(inst);
  Comparison c;
  c.instance = name;
  c.stages = p.stages;
  c.symbols = p.symbols();
  for (const auto& s : spec.solvers) c.rows.push_back(run_solver(p, s, spec));
  if (const auto* dfa = std::get_if<DfaInstance>(&inst)) {
    for (const char* pick : {"msdp", "es"}) {
      auto it = std::find_if(c.rows.begin(), c.rows.end(), [&](const auto& r) {
        return r.solver == pick && r.report;
      });
      if (it == c.rows.end()) continue;
      c.assembled = assemble_oriented(it->report->best.symbols, dfa->fragments);
      break;
    }
  }
  return c;
}

Comparison run(const RunSpec& spec) {
  spec.validate();
  const InstanceSpec inst = load_instance(spec.instance);
  return run_on(spec.instance.stem().string(), inst, spec);
}

std::vector<Comparison> bench(std::size_t threads) {
  RunSpec spec;
  spec.solvers = {"msdp", "es", "sa"};
  spec.threads = threads;
  std::vector<Comparison> out;
  out.push_back(run_on("adc", bundled_adc_instance(), spec));

  const DfaInstance dfa = bundled_dfa_instance();
  Comparison c = run_on("dfa", dfa, spec);
  const auto ref = ecoli_reference_order();
  const ProblemH p = dfa_problem(dfa);
  std::ostringstream note;
  note << "reference order F6 F3 F10 F5 F7 F9 F1 F8 F2 F4 scores "
       << evaluate_objective(p, Prefix(ref)) << " and assembles to "
       << assemble_sequence(ref, dfa.fragments);
  c.notes.push_back(note.str());
  if (!c.rows.empty() && c.rows[0].report &&
      c.rows[0].report->best.symbols != ref) {
    std::vector<Symbol> rev = c.rows[0].report->best.symbols;
    std::reverse(rev.begin(), rev.end());
    c.notes.push_back(
        rev == ref ? "symmetric scores: the optimum is the reversed reference "
                     "order (ties break lexicographically)"
                   : "optimal order differs from the reference order under "
                     "these scores");
  }
  out.push_back(std::move(c));
  return out;
}

Json solve_report_json(const ProblemH& p, const SolveReport& r) {
  Json j;
  j["best"] = Json{{"x", to_values(p, r.best.symbols)},
                   {"f", r.best.objective.value_or(0.0)}};
  j["counters"] = Json{{"csf", r.counters.csf_evals},
                       {"acms", r.counters.acms_ops},
                       {"total", r.counters.total()}};
  j["ne_bound"] = r.ne_bound ? Json(*r.ne_bound) : Json(nullptr);
  j["certified"] = r.optimal_certified;
  return j;
}

namespace {

Json row_json(const SolverRun& row) {
  Json j;
  j["solver"] = row.solver;
  if (!row.report) {
    j["error"] = row.error;
    j["exit_code"] = row.exit_code;
    j["wall_ms"] = row.wall_ms;
    return j;
  }
  const SolveReport& r = *row.report;
  j["best"] = Json{{"x", row.x}, {"f", r.best.objective.value_or(0.0)}};
  j["counters"] = Json{{"csf", r.counters.csf_evals},
                       {"acms", r.counters.acms_ops},
                       {"total", r.counters.total()}};
  j["ne_bound"] = r.ne_bound ? Json(*r.ne_bound) : Json(nullptr);
  j["certified"] = r.optimal_certified;
  j["feasible"] = row.feasible;
  if (row.solver == "msdp") {
    j["ne_used"] = r.ne_used;
    j["stage_demand"] = r.stage_demand;
    j["evicted"] = r.evicted;
    j["unresolved"] = r.unresolved;
  }
  j["wall_ms"] = row.wall_ms;
  return j;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string fmt_vector(const std::vector<std::int64_t>& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i)
    s += (i ? "," : "") + std::to_string(x[i]);
  return s + "]";
}

}  // namespace

Json comparison_json(const Comparison& c) {
  Json j;
  j["instance"] = c.instance;
  j["N"] = c.stages;
  j["M"] = c.symbols;
  Json rows = Json::array();
  for (const auto& r : c.rows) rows.push_back(row_json(r));
  j["solvers"] = std::move(rows);
  if (c.assembled) j["assembled"] = *c.assembled;
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j;
}

Json comparisons_json(const std::vector<Comparison>& cs) {
  Json arr = Json::array();
  for (const auto& c : cs) arr.push_back(comparison_json(c));
  return Json{{"instances", std::move(arr)}};
}

std::string comparison_csv(const std::vector<Comparison>& cs) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const auto& c : cs)
    for (const auto& r : c.rows) {
      os << (cs.size() > 1 ? c.instance + "/" + r.solver : r.solver) << ",";
      if (r.report) {
        const SolveReport& rep = *r.report;
        os << fmt_double(rep.best.objective.value_or(0.0)) << ","
           << (r.feasible ? "true" : "false") << ","
           << (rep.optimal_certified ? "true" : "false") << ","
           << rep.counters.csf_evals << "," << rep.counters.acms_ops << ","
           << rep.counters.total() << ",";
      } else {
        os << ",false,false,,,,";
      }
      os << std::fixed << std::setprecision(3) << r.wall_ms
         << std::defaultfloat << "\n";
    }
  return os.str();
}

std::string comparison_table(const std::vector<Comparison>& cs) {
  std::ostringstream os;
  os << "Number of computations (CSF evaluations + ACMS operations)\n";
  os << std::left << std::setw(10) << "instance" << std::setw(8) << "solver"
     << std::right << std::setw(12) << "csf" << std::setw(12) << "acms"
     << std::setw(12) << "total" << std::setw(8) << "N_e" << std::setw(12)
     << "wall_ms" << "\n";
  for (const auto& c : cs)
    for (const auto& r : c.rows) {
      os << std::left << std::setw(10) << c.instance << std::setw(8)
         << r.solver << std::right;
      if (!r.report) {
        os << "  error: " << r.error << "\n";
        continue;
      }
      const auto& rep = *r.report;
      os << std::setw(12) << rep.counters.csf_evals << std::setw(12)
         << rep.counters.acms_ops << std::setw(12) << rep.counters.total()
         << std::setw(8)
         << (rep.ne_bound ? std::to_string(*rep.ne_bound) : std::string("-"))
         << std::setw(12) << std::fixed << std::setprecision(1) << r.wall_ms
         << std::defaultfloat << "\n";
    }
  os << "\nSolutions\n";
  os << std::left << std::setw(10) << "instance" << std::setw(8) << "solver"
     << std::setw(14) << "objective" << std::setw(12) << "status" << "x\n";
  for (const auto& c : cs) {
    for (const auto& r : c.rows) {
      if (!r.report) continue;
      const auto& rep = *r.report;
      const char* status = !r.feasible                ? "infeasible"
                           : rep.optimal_certified     ? "optimal"
                                                       : "heuristic";
      os << std::left << std::setw(10) << c.instance << std::setw(8)
         << r.solver << std::setw(14) << fmt_double(rep.best.objective.value_or(0))
         << std::setw(12) << status << fmt_vector(r.x) << "\n";
    }
    if (c.assembled) os << "  assembled: " << *c.assembled << "\n";
    for (const auto& n : c.notes) os << "  note: " << n << "\n";
  }
  return os.str();
}

std::string render(const std::vector<Comparison>& cs, Format f) {
  switch (f) {
    case Format::kJson:
      return (cs.size() == 1 ? comparison_json(cs[0]) : comparisons_json(cs))
                 .dump(2) +
             "\n";
    case Format::kCsv:
      return comparison_csv(cs);
    case Format::kTable:
      return comparison_table(cs);
  }
  return {};
}

void strip_wall_time(Json& j) {
  if (j.is_object()) {
    j.erase("wall_ms");
    for (auto& [k, v] : j.items()) strip_wall_time(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_wall_time(v);
  }
}

}  // namespace msdp
