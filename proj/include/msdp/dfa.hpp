#pragma once

// DNA fragment assembly as an ordering problem: place N fragments in N
// stages, each exactly once, maximizing the summed similarity of adjacent
// fragments. Similarities are Smith-Waterman local-alignment scores.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msdp/core.hpp"

namespace msdp {

struct SwScores {
  double match = 1.0;
  double mismatch = -1.0;
  double gap = -1.0;

  bool operator==(const SwScores&) const = default;
};

// Best local alignment score (floored at 0). Throws ParseError on characters
// outside ACGT or on empty input.
double smith_waterman(std::string_view s1, std::string_view s2,
                      const SwScores& scores = {});

using SimilarityMatrix = std::vector<std::vector<double>>;

SimilarityMatrix similarity_matrix(const std::vector<std::string>& fragments,
                                   const SwScores& scores);

struct DfaInstance {
  std::vector<std::string> fragments;
  SwScores scores;
  bool bound_enabled = false;
  SimilarityMatrix similarity;  // filled by make()

  static DfaInstance make(std::vector<std::string> fragments,
                          SwScores scores = {}, bool bound_enabled = false);
  // Throws InvalidInstanceError.
  void validate() const;

  bool operator==(const DfaInstance&) const = default;
};

// Best greedy nearest-neighbour tour over all start fragments (lowest start
// index wins ties). Used as the incumbent for bound pruning.
std::pair<double, std::vector<Symbol>> greedy_order(const SimilarityMatrix& s);

// Admissible bound on the similarity still to be collected after `prefix`:
// remaining transitions times the largest entry from {last} + unused into
// unused.
double optimistic_completion(const SimilarityMatrix& s, Prefix prefix);

// Alphabet values 1..N label the fragments. Stage 0 earns nothing; stage i
// earns similarity[prev][cur]. Feasible assignments are the permutations;
// the digest is the set of used fragments. With bound_enabled, prefixes that
// cannot reach the greedy incumbent are pruned.
ProblemH dfa_problem(const DfaInstance& inst);

// Merges fragments in `order` at the longest exact suffix/prefix overlap.
std::string assemble_sequence(std::span<const Symbol> order,
                              const std::vector<std::string>& fragments);

// Symmetric scores leave the reading direction open: assembles `order` and
// its reversal and returns the shorter result (the forward one on a tie).
std::string assemble_oriented(std::span<const Symbol> order,
                              const std::vector<std::string>& fragments);

// Plain FASTA: one fragment per record, sequence lines concatenated.
std::vector<std::string> read_fasta(std::istream& in);

// Ten 8-base fragments of an E. coli section, F1..F10.
std::vector<std::string> ecoli_fragments();
inline constexpr std::string_view kEcoliSection = "TACTAGCAATACGCTTGCGTTCGGT";
// F6 F3 F10 F5 F7 F9 F1 F8 F2 F4 as symbol indices.
std::vector<Symbol> ecoli_reference_order();

DfaInstance bundled_dfa_instance();

}  // namespace msdp
