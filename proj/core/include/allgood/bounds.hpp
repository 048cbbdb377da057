#pragma once

#include <cstddef>

#include "allgood/model.hpp"

namespace allgood {

/// Bernoulli KL divergence kl(p, q). Error(domain) unless p, q in (0, 1).
double kl_bernoulli(double p, double q);

/// Asymptotic lower bound on the expected stopping time of any delta-correct
/// strategy: t_star * log(1 / (2.4 delta)).
double proposition1_bound(double t_star, double delta);

/// Moderate-confidence lower bound averaged over permuted instances:
/// sum_b 1/(mu_(1) - mu_b + beta)^2 / (12 |G_beta|^3), beta the lower margin.
/// Additive only (Error(unsupported_mode)); Error(no_bad_arm) when every arm
/// is good.
double theorem3_bound(const BanditInstance& instance);

/// Earlier instance-dependent complexity
///   f = 2 sum_a max(1/(mu_(1) - eps - mu_a)^2, 1/(mu_(1) + alpha - mu_a)^2).
/// Terms with a zero denominator are skipped and counted.
struct MasonDiagnostic {
  double value = 0.0;
  bool degenerate = false;
  std::size_t skipped_terms = 0;
  /// Value with the first denominator read as 1/eps^2 for every arm (the
  /// display's free index taken as the top arm).
  double alternate_value = 0.0;
  /// The two readings differ by more than 1%.
  bool interpretation_sensitive = false;
};

/// Additive only; Error(unsupported_mode) otherwise.
MasonDiagnostic mason_f(const BanditInstance& instance);

}  // namespace allgood
