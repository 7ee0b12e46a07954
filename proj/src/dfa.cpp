#include "msdp/dfa.hpp"

#include <algorithm>
#include <istream>
#include <memory>
#include <numeric>

namespace msdp {

namespace {

void check_bases(std::string_view s, const char* which) {
  if (s.empty()) throw ParseError(which, "empty sequence");
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c != 'A' && c != 'C' && c != 'G' && c != 'T')
      throw ParseError(which, std::string("invalid base '") + c +
                                  "' at position " + std::to_string(i));
  }
}

}  // namespace

double smith_waterman(std::string_view s1, std::string_view s2,
                      const SwScores& scores) {
  check_bases(s1, "s1");
  check_bases(s2, "s2");
  // Two rolling rows of H.
  std::vector<double> prev(s2.size() + 1, 0.0), cur(s2.size() + 1, 0.0);
  double best = 0.0;
  for (std::size_t i = 1; i <= s1.size(); ++i) {
    cur[0] = 0.0;
    for (std::size_t j = 1; j <= s2.size(); ++j) {
      const double sub =
          s1[i - 1] == s2[j - 1] ? scores.match : scores.mismatch;
      cur[j] = std::max({0.0, prev[j - 1] + sub, prev[j] + scores.gap,
                         cur[j - 1] + scores.gap});
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

SimilarityMatrix similarity_matrix(const std::vector<std::string>& fragments,
                                   const SwScores& scores) {
  const std::size_t n = fragments.size();
  SimilarityMatrix s(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s[i][j] = smith_waterman(fragments[i], fragments[j], scores);
  return s;
}

DfaInstance DfaInstance::make(std::vector<std::string> fragments,
                              SwScores scores, bool bound_enabled) {
  DfaInstance inst;
  inst.fragments = std::move(fragments);
  inst.scores = scores;
  inst.bound_enabled = bound_enabled;
  if (inst.fragments.empty()) throw InvalidInstanceError("dfa: no fragments");
  inst.similarity = similarity_matrix(inst.fragments, scores);
  return inst;
}

void DfaInstance::validate() const {
  const std::size_t n = fragments.size();
  if (n == 0) throw InvalidInstanceError("dfa: no fragments");
  if (similarity.size() != n)
    throw InvalidInstanceError("dfa: similarity matrix not computed");
  for (const auto& row : similarity)
    if (row.size() != n)
      throw InvalidInstanceError("dfa: similarity matrix is not square");
}

std::pair<double, std::vector<Symbol>> greedy_order(const SimilarityMatrix& s) {
  const auto n = static_cast<Symbol>(s.size());
  double best_value = 0.0;
  std::vector<Symbol> best;
  for (Symbol start = 0; start < n; ++start) {
    std::vector<Symbol> order{start};
    std::vector<bool> used(n, false);
    used[start] = true;
    double value = 0.0;
    while (order.size() < s.size()) {
      Symbol pick = -1;
      for (Symbol j = 0; j < n; ++j)
        if (!used[j] && (pick < 0 || s[order.back()][j] > s[order.back()][pick]))
          pick = j;
      value += s[order.back()][pick];
      used[pick] = true;
      order.push_back(pick);
    }
    if (best.empty() || value > best_value) {
      best_value = value;
      best = std::move(order);
    }
  }
  return {best_value, best};
}

double optimistic_completion(const SimilarityMatrix& s, Prefix prefix) {
  const auto n = static_cast<Symbol>(s.size());
  const std::size_t remaining = s.size() - prefix.size();
  if (remaining == 0) return 0.0;
  std::vector<bool> used(n, false);
  for (Symbol x : prefix) used[x] = true;
  std::vector<Symbol> unused;
  for (Symbol j = 0; j < n; ++j)
    if (!used[j]) unused.push_back(j);
  std::vector<Symbol> sources = unused;
  if (!prefix.empty()) sources.push_back(prefix.back());
  double top = 0.0;
  bool any = false;
  for (Symbol i : sources)
    for (Symbol j : unused)
      if (i != j && (!any || s[i][j] > top)) {
        top = s[i][j];
        any = true;
      }
  // The very first placement earns nothing.
  const std::size_t transitions = prefix.empty() ? remaining - 1 : remaining;
  return any ? static_cast<double>(transitions) * top : 0.0;
}

ProblemH dfa_problem(const DfaInstance& inst) {
  inst.validate();
  auto sim = std::make_shared<const SimilarityMatrix>(inst.similarity);
  const std::size_t n = inst.fragments.size();

  std::vector<std::int64_t> ids(n);
  std::iota(ids.begin(), ids.end(), 1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("F" + std::to_string(i + 1));

  ProblemH p;
  p.name = "dfa";
  p.stages = n;
  p.alphabet = Alphabet(std::move(ids), std::move(labels));
  p.weights.assign(n, 1.0);
  p.locality = RewardLocality::kPair;
  p.structure = Structure::kPermutation;
  p.reward = [sim](std::size_t, Prefix prefix, Symbol s) {
    return prefix.empty() ? 0.0 : (*sim)[prefix.back()][s];
  };
  auto distinct = [n](Prefix x) {
    std::vector<bool> used(n, false);
    for (Symbol s : x) {
      if (used[s]) return false;
      used[s] = true;
    }
    return true;
  };
  p.csf.full = [=](Prefix x) { return x.size() == n && distinct(x); };
  // N == M: any repeat-free prefix completes with the unused fragments.
  p.csf.partial = [=](Prefix x) {
    return distinct(x) ? Feasibility::kFeasible : Feasibility::kInfeasible;
  };
  p.csf.digest = [n](Prefix x) {
    Digest d((n + 62) / 63, 0);
    for (Symbol s : x) d[s / 63] |= std::int64_t{1} << (s % 63);
    return d;
  };
  if (inst.bound_enabled) {
    PruningBound bound;
    bound.incumbent = greedy_order(inst.similarity).first;
    bound.optimistic = [sim](Prefix x) { return optimistic_completion(*sim, x); };
    p.bound = std::move(bound);
  }
  return p;
}

std::string assemble_sequence(std::span<const Symbol> order,
                              const std::vector<std::string>& fragments) {
  std::string out;
  for (Symbol s : order) {
    const std::string& f = fragments.at(s);
    std::size_t k = std::min(out.size(), f.size());
    while (k > 0 && out.compare(out.size() - k, k, f, 0, k) != 0) --k;
    out.append(f, k, std::string::npos);
  }
  return out;
}

std::string assemble_oriented(std::span<const Symbol> order,
                              const std::vector<std::string>& fragments) {
  std::string fwd = assemble_sequence(order, fragments);
  std::vector<Symbol> rev(order.rbegin(), order.rend());
  std::string bwd = assemble_sequence(rev, fragments);
  return bwd.size() < fwd.size() ? bwd : fwd;
}

std::vector<std::string> read_fasta(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  bool open = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == ';') continue;
    if (line[0] == '>') {
      out.emplace_back();
      open = true;
      continue;
    }
    if (!open) throw ParseError("fasta", "sequence data before first header");
    for (char c : line)
      if (c != ' ' && c != '\t') out.back().push_back(c);
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    check_bases(out[i], ("fasta record " + std::to_string(i + 1)).c_str());
  return out;
}

std::vector<std::string> ecoli_fragments() {
  return {"ACGCTTGC", "TTGCGTTC", "ACTAGCAA", "CGTTCGGT", "AGCAATAC",
          "TACTAGCA", "AATACGCT", "CTTGCGTT", "ATACGCTT", "CTAGCAAT"};
}

std::vector<Symbol> ecoli_reference_order() {
  return {5, 2, 9, 4, 6, 8, 0, 7, 1, 3};
}

DfaInstance bundled_dfa_instance() {
  return DfaInstance::make(ecoli_fragments(), SwScores{}, true);
}

}  // namespace msdp
