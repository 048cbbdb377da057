#include "allgood/solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "allgood/error.hpp"
#include "allgood/oracle.hpp"

namespace allgood {

namespace {

constexpr double kValueFloor = 1e-14;

void check_config(const BanditInstance& instance, const SolveConfig& config) {
  if (!(config.target_accuracy > 0.0) || !std::isfinite(config.target_accuracy)) {
    throw Error(Errc::invalid_argument, "target accuracy must be positive and finite");
  }
  if (config.max_iterations < 1) {
    throw Error(Errc::invalid_argument, "max_iterations must be at least 1");
  }
  if (!(config.floor >= 0.0) ||
      config.floor * static_cast<double>(instance.arms()) >= 1.0) {
    throw Error(Errc::invalid_argument, "iterate floor must lie in [0, 1/K)");
  }
}

}  // namespace

double lipschitz_constant(const BanditInstance& instance) {
  const auto mu = instance.means();
  const auto [lo, hi] = std::minmax_element(mu.begin(), mu.end());
  const double eps = instance.epsilon();
  double l = 0.0;
  if (instance.mode() == Mode::Additive) {
    // Largest at a = argmax, b = argmin.
    const double span = *hi - *lo + eps;
    l = span * span / 2.0;
  } else {
    const double keep = 1.0 - eps;
    for (double a : mu) {
      for (double b : mu) {
        const double d = a - b * keep;
        l = std::max(l, d * d / (2.0 * keep * keep));
      }
    }
  }
  return l / instance.variance();
}

std::int64_t iterations_for_accuracy(double lipschitz, std::size_t arms,
                                     double accuracy) {
  const double n = 2.0 * lipschitz * lipschitz *
                   std::log(static_cast<double>(arms)) / (accuracy * accuracy);
  if (!(n < 9.0e18)) return INT64_MAX;
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(n)));
}

double mirror_step(double lipschitz, std::size_t arms, std::int64_t n) {
  return std::sqrt(2.0 * std::log(static_cast<double>(arms)) / static_cast<double>(n)) /
         lipschitz;
}

SolveResult mirror_ascent(const BanditInstance& instance, const SolveConfig& config) {
  check_config(instance, config);
  const std::size_t k = instance.arms();
  const double lip = lipschitz_constant(instance);
  const double log_k = std::log(static_cast<double>(k));
  const std::int64_t wanted = iterations_for_accuracy(lip, k, config.target_accuracy);
  const std::int64_t n_iter = std::min(wanted, config.max_iterations);

  std::vector<double> iterate(k, 1.0 / static_cast<double>(k));
  std::vector<double> average(k, 0.0);
  std::vector<double> step(k);

  const ResponseOracle oracle(instance);
  for (std::int64_t n = 1; n <= n_iter; ++n) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t a = 0; a < k; ++a) average[a] += (iterate[a] - average[a]) * inv_n;
    if (n == n_iter) break;

    const auto response = oracle(iterate);
    const auto grad = supergradient(instance, response);
    const double rate = mirror_step(lip, k, n);
    double top = -INFINITY;
    for (std::size_t a = 0; a < k; ++a) {
      step[a] = rate * grad[a];
      top = std::max(top, step[a]);
    }
    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      iterate[a] *= std::exp(step[a] - top);
      total += iterate[a];
    }
    double floored_total = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      iterate[a] = std::max(iterate[a] / total, config.floor);
      floored_total += iterate[a];
    }
    for (double& v : iterate) v /= floored_total;
  }

  auto weights = SimplexWeights::normalized(average);
  const double value = game_value(instance, weights);
  const double gap = lip * std::sqrt(2.0 * log_k / static_cast<double>(n_iter));
  return SolveResult{std::move(weights), value, gap, n_iter, n_iter >= wanted};
}

double characteristic_time(const BanditInstance& instance, const SolveConfig& config) {
  const auto result = mirror_ascent(instance, config);
  if (!(result.value > kValueFloor)) {
    throw Error(Errc::degenerate_instance,
                "game value vanishes; the characteristic time is unbounded");
  }
  return 1.0 / result.value;
}

}  // namespace allgood
