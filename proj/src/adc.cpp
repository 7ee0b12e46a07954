#include "msdp/adc.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "msdp/rng.hpp"

namespace msdp {

void AdcInstance::validate() const {
  const std::size_t n = a.size();
  if (n == 0) throw InvalidInstanceError("adc: no RF paths");
  if (b.size() != n || d.size() != n)
    throw InvalidInstanceError("adc: a, b and d must have equal length");
  if (!(power_budget > 0.0))
    throw InvalidInstanceError("adc: power budget must be > 0");
  if (bits.empty()) throw InvalidInstanceError("adc: empty bit set");
  if (!std::is_sorted(bits.begin(), bits.end()) ||
      std::adjacent_find(bits.begin(), bits.end()) != bits.end())
    throw InvalidInstanceError("adc: bit set must be strictly ascending");
  if (bits.front() < 0 || bits.back() > 60)
    throw InvalidInstanceError("adc: bit values must lie in [0, 60]");
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] == 0.0)
      throw InvalidInstanceError("adc: d[" + std::to_string(i) + "] is zero");
    for (std::int64_t x : bits)
      if (b[i] * b[i] + d[i] * std::ldexp(1.0, static_cast<int>(x)) == 0.0)
        throw InvalidInstanceError("adc: zero denominator on path " +
                                   std::to_string(i));
  }
}

std::int64_t adc_power(std::span<const std::int64_t> bit_values) {
  std::int64_t p = 0;
  for (std::int64_t x : bit_values) p += std::int64_t{1} << x;
  return p;
}

ProblemH adc_problem(const AdcInstance& inst) {
  inst.validate();
  auto data = std::make_shared<const AdcInstance>(inst);
  const std::size_t n = inst.paths();
  // Power of each symbol, and the cheapest completion per remaining slot.
  std::vector<std::int64_t> cost;
  for (std::int64_t x : inst.bits) cost.push_back(std::int64_t{1} << x);
  const std::int64_t min_cost = cost.front();
  const double budget = inst.power_budget;

  ProblemH p;
  p.name = "adc";
  p.stages = n;
  p.alphabet = Alphabet(inst.bits);
  p.weights.assign(n, 1.0);
  p.locality = RewardLocality::kNode;
  p.reward = [data](std::size_t i, Prefix, Symbol s) {
    const double q = std::ldexp(1.0, static_cast<int>(data->bits[s]));
    return data->a[i] * data->a[i] / (data->b[i] * data->b[i] + data->d[i] * q);
  };

  auto power = [cost](Prefix x) {
    std::int64_t used = 0;
    for (Symbol s : x) used += cost[s];
    return used;
  };
  auto ordered = [](Prefix x) {
    // Symbols are ascending in bit value, so index order is bit order.
    return std::is_sorted(x.rbegin(), x.rend());
  };
  p.csf.full = [=](Prefix x) {
    return ordered(x) && static_cast<double>(power(x)) <= budget;
  };
  // Repeating the smallest bit value is always a valid non-increasing tail,
  // so the prefix is completable iff it is ordered and the minimum-power
  // completion fits.
  p.csf.partial = [=](Prefix x) {
    if (!ordered(x)) return Feasibility::kInfeasible;
    const auto rest = static_cast<std::int64_t>(n - x.size());
    return static_cast<double>(power(x) + rest * min_cost) <= budget
               ? Feasibility::kFeasible
               : Feasibility::kInfeasible;
  };
  p.csf.digest = [=](Prefix x) {
    return Digest{power(x), x.empty() ? -1 : x.back()};
  };
  return p;
}

AdcInstance random_adc_instance(std::size_t paths, double power_budget,
                                std::uint64_t seed) {
  Rng rng(seed);
  AdcInstance inst;
  inst.power_budget = power_budget;
  const double top = std::ldexp(1.0, static_cast<int>(inst.bits.back()));
  for (std::size_t i = 0; i < paths; ++i)
    inst.a.push_back(std::sqrt(-2.0 * std::log1p(-rng.uniform())));
  std::sort(inst.a.begin(), inst.a.end(), std::greater<>());
  for (std::size_t i = 0; i < paths; ++i) inst.b.push_back(rng.uniform(0.5, 1.5));
  for (std::size_t i = 0; i < paths; ++i)
    inst.d.push_back(-(inst.b[i] * inst.b[i] / top) * rng.uniform(0.2, 0.9));
  return inst;
}

AdcInstance bundled_adc_instance() {
  return random_adc_instance(12, 48.0, kBundledAdcSeed);
}

}  // namespace msdp
