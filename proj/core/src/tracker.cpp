#include "allgood/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "allgood/error.hpp"
#include "allgood/oracle.hpp"

namespace allgood {

const char* to_string(SamplingRule rule) noexcept {
  return rule == SamplingRule::CTracking ? "tas" : "uniform";
}

TrackerState::TrackerState(std::size_t arms)
    : counts_(arms, 0),
      sums_(arms, 0.0),
      cumulative_(arms, 0.0),
      raw_cumulative_(arms, 0.0) {
  if (arms < 2) throw Error(Errc::invalid_argument, "tracker needs at least two arms");
}

std::vector<double> TrackerState::empirical_means() const {
  std::vector<double> out(counts_.size(), 0.0);
  for (std::size_t a = 0; a < counts_.size(); ++a) {
    if (counts_[a] > 0) out[a] = sums_[a] / static_cast<double>(counts_[a]);
  }
  return out;
}

void TrackerState::record(std::size_t arm, double reward) {
  ++counts_.at(arm);
  sums_[arm] += reward;
  ++t_;
}

void TrackerState::accumulate(std::span<const double> floored,
                              std::span<const double> raw) {
  for (std::size_t a = 0; a < cumulative_.size(); ++a) {
    cumulative_[a] += floored[a];
    raw_cumulative_[a] += raw[a];
  }
}

void TrackerState::set_cached_weights(std::vector<double> weights) {
  cached_ = std::move(weights);
  cache_age_ = 0;
}

double threshold(std::int64_t t, double delta, std::size_t arms) {
  if (t < 1) throw Error(Errc::invalid_argument, "t must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(Errc::invalid_argument, "delta must lie in (0, 1)");
  }
  const double ratio = static_cast<double>(t) / delta;
  return std::log(1.0 / delta) +
         0.5 * static_cast<double>(arms) * std::log(std::log(std::numbers::e + ratio));
}

namespace {

bool usable_estimate(std::span<const double> means, Mode mode) {
  return mode == Mode::Additive ||
         *std::max_element(means.begin(), means.end()) > 0.0;
}

}  // namespace

double z_statistic(const TrackerState& state, double epsilon, Mode mode,
                   double variance) {
  const auto& counts = state.pull_counts();
  for (auto n : counts) {
    if (n < 1) throw Error(Errc::invalid_argument, "every arm must be pulled before testing");
  }
  auto means = state.empirical_means();
  if (!usable_estimate(means, mode)) return 0.0;
  const auto estimate =
      BanditInstance::empirical(std::move(means), epsilon, mode, variance);
  const double t = static_cast<double>(state.t());
  std::vector<double> proportions(counts.size());
  for (std::size_t a = 0; a < counts.size(); ++a) {
    proportions[a] = static_cast<double>(counts[a]) / t;
  }
  const double value = ResponseOracle(estimate)(proportions).cost;
  return t * value;
}

std::size_t next_arm(const TrackerState& state) {
  const auto& counts = state.pull_counts();
  const auto& target = state.cumulative_weights();
  std::size_t best = 0;
  double best_lag = static_cast<double>(counts[0]) - target[0];
  for (std::size_t a = 1; a < counts.size(); ++a) {
    const double lag = static_cast<double>(counts[a]) - target[a];
    if (lag < best_lag) {
      best = a;
      best_lag = lag;
    }
  }
  return best;
}

std::size_t uniform_baseline_step(const TrackerState& state) {
  return static_cast<std::size_t>(state.t() % static_cast<std::int64_t>(state.arms()));
}

SolveResult solve_for_estimate(const TrackerState& state, double epsilon, Mode mode,
                               double variance, const SolveConfig& base) {
  auto means = state.empirical_means();
  if (!usable_estimate(means, mode)) {
    return SolveResult{SimplexWeights::uniform(state.arms()), 0.0, 0.0, 0, true};
  }
  const auto estimate =
      BanditInstance::empirical(std::move(means), epsilon, mode, variance);
  SolveConfig config = base;
  config.target_accuracy = 1.0 / std::sqrt(static_cast<double>(std::max<std::int64_t>(1, state.t())));
  return mirror_ascent(estimate, config);
}

Sampler::Sampler(const BanditInstance& instance, const TrackerConfig& config)
    : instance_(instance),
      config_(config),
      lazy_period_(config.lazy_period > 0
                       ? config.lazy_period
                       : 100 * static_cast<std::int64_t>(instance.arms())) {}

std::size_t Sampler::choose(TrackerState& state, TrialRecord& record) {
  const std::size_t k = state.arms();
  const std::int64_t t = state.t();
  if (config_.rule == SamplingRule::RoundRobin) {
    const std::vector<double> uniform(k, 1.0 / static_cast<double>(k));
    state.accumulate(uniform, uniform);
    if (config_.check_invariants) check_tracking_invariants(state, record);
    return uniform_baseline_step(state);
  }

  const std::int64_t since_burn_in = t - static_cast<std::int64_t>(k);
  if (state.cached_weights().empty() || since_burn_in % lazy_period_ == 0) {
    auto solved = solve_for_estimate(state, instance_.epsilon(), instance_.mode(),
                                     instance_.variance(), config_.solve);
    ++record.solves;
    if (!solved.certified) ++record.uncertified_solves;
    const auto w = solved.weights.values();
    state.set_cached_weights(std::vector<double>(w.begin(), w.end()));
  } else {
    state.age_cache();
  }
  const auto floored =
      project_floor(SimplexWeights(state.cached_weights()), exploration_rate(t, k));
  state.accumulate(floored.values(), state.cached_weights());
  if (config_.check_invariants) check_tracking_invariants(state, record);
  return next_arm(state);
}

void burn_in(const BanditInstance& instance, TrackerState& state, RewardStream& rng) {
  const std::size_t k = instance.arms();
  const std::vector<double> uniform(k, 1.0 / static_cast<double>(k));
  for (std::size_t a = 0; a < k; ++a) {
    // The allocation tracked during burn-in is uniform; the K-th term comes
    // from the first solved allocation.
    if (a + 1 < k) state.accumulate(uniform, uniform);
    state.record(a, rng.sample(instance, a));
  }
}

void check_tracking_invariants(const TrackerState& state, TrialRecord& record) {
  const std::size_t k = state.arms();
  const double t = static_cast<double>(state.t());
  const double kk = static_cast<double>(k);
  const double deviation_bound = kk * (1.0 + std::sqrt(t));
  const auto& counts = state.pull_counts();
  double dev = 0.0;
  double raw_dev = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    const double n = static_cast<double>(counts[a]);
    dev = std::max(dev, std::abs(n - state.cumulative_weights()[a]));
    raw_dev = std::max(raw_dev, std::abs(n - state.raw_cumulative_weights()[a]));
  }
  if (dev > deviation_bound || raw_dev > deviation_bound) ++record.tracking_violations;
  record.max_tracking_deviation = std::max(record.max_tracking_deviation, dev);
  record.max_raw_tracking_deviation = std::max(record.max_raw_tracking_deviation, raw_dev);
}

void check_exploration(const TrackerState& state, TrialRecord& record) {
  const double t = static_cast<double>(state.t());
  const double kk = static_cast<double>(state.arms());
  const double floor_bound = std::sqrt(t + kk * kk) - 2.0 * kk;
  for (auto n : state.pull_counts()) {
    if (static_cast<double>(n) < floor_bound) {
      ++record.exploration_violations;
      return;
    }
  }
}

TrialRecord run(const BanditInstance& instance, double delta,
                const TrackerConfig& config, RewardStream& rng) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(Errc::invalid_argument, "delta must lie in (0, 1)");
  }
  const std::size_t k = instance.arms();
  if (config.tau_max < static_cast<std::int64_t>(k)) {
    throw Error(Errc::invalid_argument, "tau_max must be at least K");
  }
  if (config.stop_check_period < 1) {
    throw Error(Errc::invalid_argument, "stop check period must be at least 1");
  }
  const auto start = std::chrono::steady_clock::now();

  TrialRecord record;
  TrackerState state(k);
  burn_in(instance, state, rng);
  Sampler sampler(instance, config);

  for (;;) {
    const std::int64_t t = state.t();
    if ((t - static_cast<std::int64_t>(k)) % config.stop_check_period == 0 &&
        z_statistic(state, instance.epsilon(), instance.mode(), instance.variance()) >
            threshold(t, delta, k)) {
      break;
    }
    if (t >= config.tau_max) {
      record.capped = true;
      break;
    }
    const std::size_t arm = sampler.choose(state, record);
    state.record(arm, rng.sample(instance, arm));
    if (config.check_invariants) check_exploration(state, record);
  }

  record.stopping_time = state.t();
  record.answer = good_set(state.empirical_means(), instance.epsilon(), instance.mode());
  record.correct = record.answer == good_set(instance);
  record.pull_counts = state.pull_counts();
  record.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return record;
}

TrialRecord run(const BanditInstance& instance, double delta,
                const TrackerConfig& config, std::uint64_t seed) {
  RewardStream rng(seed);
  auto record = run(instance, delta, config, rng);
  record.seed = seed;
  return record;
}

}  // namespace allgood
