#pragma once

// Bit allocation for variable-resolution ADCs on N receiver RF paths:
//
//   maximize  sum_i a_i^2 / (b_i^2 + d_i 2^{x_i})
//   s.t.      sum_i 2^{x_i} <= P_t  and  x_1 >= x_2 >= ... >= x_N.

#include <cstdint>
#include <span>
#include <vector>

#include "msdp/core.hpp"

namespace msdp {

struct AdcInstance {
  std::vector<double> a;  // channel singular value per path
  std::vector<double> b;  // noise term per path (enters squared)
  std::vector<double> d;  // quantization-noise coefficient per path
  double power_budget = 0.0;
  std::vector<std::int64_t> bits{1, 2, 3, 4};  // ascending

  std::size_t paths() const { return a.size(); }
  // Throws InvalidInstanceError.
  void validate() const;

  bool operator==(const AdcInstance&) const = default;
};

// sum_i 2^{bits_i} over bit values (not symbol indices).
std::int64_t adc_power(std::span<const std::int64_t> bit_values);

// Symbol s stands for bits[s]. The partial check is exact, so it never
// answers kUnknown; the digest is (power used so far, last symbol).
ProblemH adc_problem(const AdcInstance& inst);

// Seeded instance: a_i Rayleigh-distributed and sorted descending,
// b_i ~ U[0.5, 1.5], d_i = -(b_i^2 / 2^{max bit}) * U[0.2, 0.9]. Negative d
// keeps every denominator positive and makes extra bits pay off.
AdcInstance random_adc_instance(std::size_t paths, double power_budget,
                                std::uint64_t seed);

// The bundled 12-path, 48-unit instance used by `msdp bench`.
inline constexpr std::uint64_t kBundledAdcSeed = 3;
AdcInstance bundled_adc_instance();

}  // namespace msdp
