#pragma once

// Staged graph on which the multi-survivor sweep runs: N stages of M symbol
// nodes plus a start node S and a terminal node F. The fully connected case
// is algebraic, so nodes and edges are kept implicitly as a stage mask plus
// the problem's optional transition filter.

#include <cstddef>
#include <string>
#include <vector>

#include "msdp/core.hpp"

namespace msdp {

using StageMask = std::vector<std::vector<bool>>;

class Trellis {
 public:
  // `mask` overrides the problem's own allowed-symbol mask when non-empty.
  // Throws InvalidInstanceError if a stage ends up with no nodes.
  static Trellis build(const ProblemH& p, const StageMask& mask = {});

  std::size_t stages() const { return problem_.stages; }
  std::size_t symbols() const { return problem_.symbols(); }
  const ProblemH& problem() const { return problem_; }

  bool has_node(std::size_t stage, Symbol s) const { return mask_[stage][s]; }
  // Edge between stage `stage` and stage `stage + 1`.
  bool has_edge(std::size_t stage, Symbol from, Symbol to) const;

  // Counts include S and F and their edges.
  std::size_t node_count() const;
  std::size_t edge_count() const;

  // Folded edge rewards. For node-local problems the edge leaving stage i
  // carries b_i phi_i(x_i) and S-edges carry 0; for pair-local problems the
  // reward sits on the edge entering the node and F-edges carry 0.
  // Path-local problems have no edge rewards (throws InvalidInstanceError).
  double start_reward(Symbol to) const;
  double edge_reward(std::size_t stage, Symbol from, Symbol to) const;
  double terminal_reward(Symbol from) const;

  // Sum of edge rewards along S -> x_1 -> ... -> x_N -> F. Equals
  // evaluate_objective exactly. Throws InvalidAssignmentError on a walk that
  // uses a missing node or edge.
  double walk_reward(const Assignment& a) const;

  // Graphviz dump, only for N*M <= 64.
  std::string to_dot() const;

 private:
  Trellis(ProblemH p, StageMask mask)
      : problem_(std::move(p)), mask_(std::move(mask)) {}

  ProblemH problem_;
  StageMask mask_;
};

}  // namespace msdp
