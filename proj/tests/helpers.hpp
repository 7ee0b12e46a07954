#pragma once

#include <functional>
#include <vector>

#include "msdp/core.hpp"

namespace testing_util {

// Table-reward problem with an arbitrary full check and no partial check.
inline msdp::ProblemH table(std::vector<std::vector<double>> phi,
                            std::vector<double> weights = {},
                            std::function<bool(msdp::Prefix)> full = {}) {
  msdp::ProblemH p;
  p.name = "test";
  p.stages = phi.size();
  std::vector<std::int64_t> values;
  for (std::size_t j = 0; j < phi.at(0).size(); ++j)
    values.push_back(static_cast<std::int64_t>(j));
  p.alphabet = msdp::Alphabet(values);
  p.weights = weights.empty() ? std::vector<double>(p.stages, 1.0) : weights;
  p.reward = [phi](std::size_t i, msdp::Prefix, msdp::Symbol s) {
    return phi[i][s];
  };
  p.csf.full = full ? full : [](msdp::Prefix) { return true; };
  return p;
}

}  // namespace testing_util
