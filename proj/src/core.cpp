#include "msdp/core.hpp"

#include <algorithm>
#include <set>

namespace msdp {

Alphabet::Alphabet(std::vector<std::int64_t> values,
                   std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  if (values_.empty()) throw InvalidInstanceError("alphabet is empty");
  std::set<std::int64_t> seen(values_.begin(), values_.end());
  if (seen.size() != values_.size())
    throw InvalidInstanceError("alphabet values are not distinct");
  if (!labels_.empty() && labels_.size() != values_.size())
    throw InvalidInstanceError("alphabet labels do not match values");
}

Alphabet Alphabet::Range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v;
  for (std::int64_t x = lo; x <= hi; ++x) v.push_back(x);
  return Alphabet(std::move(v));
}

std::string Alphabet::label(Symbol s) const {
  if (!labels_.empty()) return labels_.at(s);
  return std::to_string(value(s));
}

std::optional<Symbol> Alphabet::index_of(std::int64_t value) const {
  auto it = std::find(values_.begin(), values_.end(), value);
  if (it == values_.end()) return std::nullopt;
  return static_cast<Symbol>(it - values_.begin());
}

const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::kFeasible:
      return "feasible";
    case Feasibility::kInfeasible:
      return "infeasible";
    case Feasibility::kUnknown:
      return "unknown";
  }
  return "?";
}

void ProblemH::validate() const {
  if (stages == 0) throw InvalidInstanceError("stage count must be >= 1");
  if (alphabet.size() == 0) throw InvalidInstanceError("alphabet is empty");
  if (weights.size() != stages)
    throw InvalidInstanceError("expected " + std::to_string(stages) +
                               " weights, got " +
                               std::to_string(weights.size()));
  if (!reward) throw InvalidInstanceError("missing stage reward");
  if (!csf.full) throw InvalidInstanceError("missing full constraint check");
  if (!allowed.empty()) {
    if (allowed.size() != stages)
      throw InvalidInstanceError("stage mask has wrong number of stages");
    for (std::size_t i = 0; i < stages; ++i) {
      if (allowed[i].size() != alphabet.size())
        throw InvalidInstanceError("stage mask has wrong width at stage " +
                                   std::to_string(i + 1));
      if (std::none_of(allowed[i].begin(), allowed[i].end(),
                       [](bool b) { return b; }))
        throw InvalidInstanceError("every symbol is masked at stage " +
                                   std::to_string(i + 1));
    }
  }
  if (structure == Structure::kPermutation && stages != alphabet.size())
    throw InvalidInstanceError("permutation structure requires N == M");
}

void check_assignment(const ProblemH& p, Prefix symbols) {
  if (symbols.size() != p.stages)
    throw InvalidAssignmentError("assignment has length " +
                                 std::to_string(symbols.size()) +
                                 ", expected " + std::to_string(p.stages));
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!p.alphabet.contains(symbols[i]))
      throw InvalidAssignmentError("symbol index " +
                                   std::to_string(symbols[i]) +
                                   " outside alphabet at stage " +
                                   std::to_string(i + 1));
  }
}

double evaluate_objective(const ProblemH& p, Prefix symbols) {
  check_assignment(p, symbols);
  double f = 0.0;
  for (std::size_t i = 0; i < symbols.size(); ++i)
    f += p.term(i, symbols.first(i), symbols[i]);
  return f;
}

double evaluate_objective(const ProblemH& p, Assignment& a) {
  a.objective = evaluate_objective(p, Prefix(a.symbols));
  return *a.objective;
}

PartialAssignment extend(const PartialAssignment& pa, Symbol symbol,
                         const ProblemH& p) {
  if (pa.stage() >= p.stages)
    throw StageOverflowError("cannot extend a full assignment of length " +
                             std::to_string(pa.stage()));
  if (!p.alphabet.contains(symbol))
    throw InvalidAssignmentError("symbol index " + std::to_string(symbol) +
                                 " outside alphabet");
  PartialAssignment out;
  out.prefix.reserve(pa.prefix.size() + 1);
  out.prefix = pa.prefix;
  out.lambda = pa.lambda + p.term(pa.stage(), Prefix(pa.prefix), symbol);
  out.prefix.push_back(symbol);
  return out;
}

std::vector<std::int64_t> to_values(const ProblemH& p, Prefix symbols) {
  std::vector<std::int64_t> out;
  out.reserve(symbols.size());
  for (Symbol s : symbols) out.push_back(p.alphabet.value(s));
  return out;
}

}  // namespace msdp
