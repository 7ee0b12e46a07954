#include "msdp/trellis.hpp"

#include <algorithm>
#include <sstream>

namespace msdp {

Trellis Trellis::build(const ProblemH& p, const StageMask& mask) {
  StageMask m = !mask.empty() ? mask : p.allowed;
  if (m.empty()) m.assign(p.stages, std::vector<bool>(p.symbols(), true));
  if (m.size() != p.stages)
    throw InvalidInstanceError("stage mask has wrong number of stages");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != p.symbols())
      throw InvalidInstanceError("stage mask has wrong width at stage " +
                                 std::to_string(i + 1));
    if (std::none_of(m[i].begin(), m[i].end(), [](bool b) { return b; }))
      throw InvalidInstanceError("empty stage " + std::to_string(i + 1) +
                                 ": every symbol is masked");
  }
  return Trellis(p, std::move(m));
}

bool Trellis::has_edge(std::size_t stage, Symbol from, Symbol to) const {
  return stage + 1 < stages() && has_node(stage, from) &&
         has_node(stage + 1, to) && problem_.has_transition(stage, from, to);
}

std::size_t Trellis::node_count() const {
  std::size_t n = 2;
  for (const auto& row : mask_) n += std::count(row.begin(), row.end(), true);
  return n;
}

std::size_t Trellis::edge_count() const {
  const auto m = static_cast<Symbol>(symbols());
  const std::size_t first = std::count(mask_.front().begin(),
                                       mask_.front().end(), true);
  const std::size_t last = std::count(mask_.back().begin(),
                                      mask_.back().end(), true);
  std::size_t e = first + last;
  for (std::size_t i = 0; i + 1 < stages(); ++i)
    for (Symbol a = 0; a < m; ++a)
      for (Symbol b = 0; b < m; ++b) e += has_edge(i, a, b) ? 1 : 0;
  return e;
}

double Trellis::start_reward(Symbol to) const {
  switch (problem_.locality) {
    case RewardLocality::kNode:
      return 0.0;
    case RewardLocality::kPair:
      return problem_.term(0, {}, to);
    case RewardLocality::kPath:
      break;
  }
  throw InvalidInstanceError("path-local rewards have no edge rewards");
}

double Trellis::edge_reward(std::size_t stage, Symbol from, Symbol to) const {
  switch (problem_.locality) {
    case RewardLocality::kNode:
      return problem_.term(stage, {}, from);
    case RewardLocality::kPair: {
      const Symbol prev[1] = {from};
      return problem_.term(stage + 1, Prefix(prev), to);
    }
    case RewardLocality::kPath:
      break;
  }
  throw InvalidInstanceError("path-local rewards have no edge rewards");
}

double Trellis::terminal_reward(Symbol from) const {
  switch (problem_.locality) {
    case RewardLocality::kNode:
      return problem_.term(stages() - 1, {}, from);
    case RewardLocality::kPair:
      return 0.0;
    case RewardLocality::kPath:
      break;
  }
  throw InvalidInstanceError("path-local rewards have no edge rewards");
}

double Trellis::walk_reward(const Assignment& a) const {
  check_assignment(problem_, a.symbols);
  const auto& x = a.symbols;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!has_node(i, x[i]))
      throw InvalidAssignmentError("walk uses masked node at stage " +
                                   std::to_string(i + 1));
    if (i + 1 < x.size() && !has_edge(i, x[i], x[i + 1]))
      throw InvalidAssignmentError("walk uses missing edge after stage " +
                                   std::to_string(i + 1));
  }
  if (problem_.locality == RewardLocality::kPath)
    return evaluate_objective(problem_, Prefix(x));
  double r = start_reward(x.front());
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    r += edge_reward(i, x[i], x[i + 1]);
  r += terminal_reward(x.back());
  return r;
}

std::string Trellis::to_dot() const {
  if (stages() * symbols() > 64)
    throw SizeError("DOT dump limited to N*M <= 64");
  const bool labelled = problem_.locality != RewardLocality::kPath;
  const auto m = static_cast<Symbol>(symbols());
  auto node = [](std::size_t i, Symbol j) {
    return "x" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
  std::ostringstream os;
  os << "digraph trellis {\n  rankdir=LR;\n  S; F;\n";
  for (std::size_t i = 0; i < stages(); ++i)
    for (Symbol j = 0; j < m; ++j)
      if (has_node(i, j))
        os << "  " << node(i, j) << " [label=\"" << problem_.alphabet.label(j)
           << "\"];\n";
  auto edge = [&](const std::string& a, const std::string& b, double w) {
    os << "  " << a << " -> " << b;
    if (labelled) os << " [label=\"" << w << "\"]";
    os << ";\n";
  };
  for (Symbol j = 0; j < m; ++j)
    if (has_node(0, j)) edge("S", node(0, j), labelled ? start_reward(j) : 0);
  for (std::size_t i = 0; i + 1 < stages(); ++i)
    for (Symbol a = 0; a < m; ++a)
      for (Symbol b = 0; b < m; ++b)
        if (has_edge(i, a, b))
          edge(node(i, a), node(i + 1, b),
               labelled ? edge_reward(i, a, b) : 0);
  for (Symbol j = 0; j < m; ++j)
    if (has_node(stages() - 1, j))
      edge(node(stages() - 1, j), "F", labelled ? terminal_reward(j) : 0);
  os << "}\n";
  return os.str();
}

}  // namespace msdp
