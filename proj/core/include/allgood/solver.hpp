#pragma once

#include <cstddef>
#include <cstdint>

#include "allgood/model.hpp"

namespace allgood {

struct SolveConfig {
  double target_accuracy = 1e-4;     // bound on the suboptimality of the value
  std::int64_t max_iterations = 1'000'000;
  double floor = 1e-12;              // lower clip on iterates before renormalizing
};

struct SolveResult {
  SimplexWeights weights;   // average of the mirror-ascent iterates
  double value;             // game value at `weights`
  double certified_gap;     // L sqrt(2 log K / N)
  std::int64_t iterations;  // N
  bool certified;           // false when max_iterations cut the run short
};

/// Lipschitz constant of w -> game value in the l1 norm:
/// max_{a,b} (mu_a - mu_b + eps)^2 / 2 (additive) or
/// max_{a,b} (mu_a - mu_b (1 - eps))^2 / (2 (1 - eps)^2) (multiplicative),
/// divided by the reward variance.
double lipschitz_constant(const BanditInstance& instance);

/// Number of iterations that certifies `accuracy`: ceil(2 L^2 log K / acc^2).
std::int64_t iterations_for_accuracy(double lipschitz, std::size_t arms,
                                     double accuracy);

/// Step size at iteration n (1-based): L^{-1} sqrt(2 log K / n).
double mirror_step(double lipschitz, std::size_t arms, std::int64_t n);

/// Entropic mirror ascent on the simplex from the uniform allocation with
/// step L^{-1} sqrt(2 log K / n). Deterministic.
SolveResult mirror_ascent(const BanditInstance& instance, const SolveConfig& config);

/// 1 / value of the mirror-ascent solution. Throws
/// Error(degenerate_instance) when the value is at most 1e-14.
double characteristic_time(const BanditInstance& instance, const SolveConfig& config);

}  // namespace allgood
