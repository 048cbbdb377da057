#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "allgood/model.hpp"
#include "allgood/solver.hpp"

namespace allgood {

enum class SamplingRule {
  CTracking,   // Track-and-Stop: follow the optimal allocation of the estimate
  RoundRobin,  // uniform baseline
};

const char* to_string(SamplingRule rule) noexcept;

struct TrackerConfig {
  SamplingRule rule = SamplingRule::CTracking;
  /// Solver settings for weight recomputation. The target accuracy is
  /// replaced by 1/sqrt(t) at each recompute; max_iterations caps each solve.
  SolveConfig solve{};
  /// Pulls between weight recomputations; 0 means 100 * K.
  std::int64_t lazy_period = 0;
  /// Hard cap on the number of pulls; reaching it flags the record.
  std::int64_t tau_max = 100'000'000;
  /// Evaluate the stopping rule every this many pulls.
  std::int64_t stop_check_period = 1;
  /// Check the forced-exploration and tracking bounds after every pull.
  bool check_invariants = true;
};

/// Sufficient statistics of one run, plus the tracking bookkeeping.
class TrackerState {
 public:
  explicit TrackerState(std::size_t arms);

  std::size_t arms() const noexcept { return counts_.size(); }
  std::int64_t t() const noexcept { return t_; }
  const std::vector<std::int64_t>& pull_counts() const noexcept { return counts_; }
  const std::vector<double>& reward_sums() const noexcept { return sums_; }
  std::vector<double> empirical_means() const;

  /// Running sum of the floored allocations tracked so far.
  const std::vector<double>& cumulative_weights() const noexcept { return cumulative_; }
  /// Same sum before flooring.
  const std::vector<double>& raw_cumulative_weights() const noexcept { return raw_cumulative_; }

  const std::vector<double>& cached_weights() const noexcept { return cached_; }
  std::int64_t cache_age() const noexcept { return cache_age_; }

  void record(std::size_t arm, double reward);
  void accumulate(std::span<const double> floored, std::span<const double> raw);
  void set_cached_weights(std::vector<double> weights);
  void age_cache() noexcept { ++cache_age_; }

 private:
  std::int64_t t_ = 0;
  std::vector<std::int64_t> counts_;
  std::vector<double> sums_;
  std::vector<double> cumulative_;
  std::vector<double> raw_cumulative_;
  std::vector<double> cached_;
  std::int64_t cache_age_ = 0;
};

struct TrialRecord {
  std::int64_t stopping_time = 0;
  ArmSet answer;                 // good set of the empirical means at stopping
  bool correct = false;          // answer equals the true good set
  std::uint64_t seed = 0;
  std::vector<std::int64_t> pull_counts;
  std::chrono::nanoseconds wall_time{0};
  bool capped = false;           // tau_max reached before the stopping rule fired
  std::int64_t solves = 0;
  std::int64_t uncertified_solves = 0;  // solves cut short by max_iterations
  std::int64_t exploration_violations = 0;  // N_a(t) < sqrt(t + K^2) - 2K
  std::int64_t tracking_violations = 0;     // deviation above K (1 + sqrt t)
  double max_tracking_deviation = 0.0;      // against the floored sum
  double max_raw_tracking_deviation = 0.0;  // against the unfloored sum
};

/// log(1/delta) + (K/2) log(log(e + t/delta)).
double threshold(std::int64_t t, double delta, std::size_t arms);

/// GLR statistic t * T(mu_hat, N/t)^{-1}. Zero when the empirical instance
/// has no informative alternative (value 0, or a non-positive maximum in
/// multiplicative mode). Requires every arm pulled at least once.
double z_statistic(const TrackerState& state, double epsilon, Mode mode,
                   double variance = 1.0);

/// Arm furthest behind its cumulative floored allocation; lowest index on
/// ties.
std::size_t next_arm(const TrackerState& state);

/// Round-robin arm: t mod K.
std::size_t uniform_baseline_step(const TrackerState& state);

/// Optimal allocation for the current estimate, with target accuracy
/// 1/sqrt(t). Falls back to uniform when the estimate is unusable.
SolveResult solve_for_estimate(const TrackerState& state, double epsilon, Mode mode,
                               double variance, const SolveConfig& base);

/// One step of the sampling rule: refresh cached weights when due, floor them
/// at the current exploration rate, accumulate and choose the next arm. The
/// caller pulls the returned arm.
class Sampler {
 public:
  Sampler(const BanditInstance& instance, const TrackerConfig& config);
  Sampler(BanditInstance&&, const TrackerConfig&) = delete;  // keeps a reference

  std::size_t choose(TrackerState& state, TrialRecord& record);
  std::int64_t lazy_period() const noexcept { return lazy_period_; }

 private:
  const BanditInstance& instance_;
  TrackerConfig config_;
  std::int64_t lazy_period_;
};

/// Pulls each arm once, then alternates sampling and stopping checks until
/// the GLR statistic exceeds the threshold or tau_max is reached.
TrialRecord run(const BanditInstance& instance, double delta,
                const TrackerConfig& config, RewardStream& rng);
TrialRecord run(const BanditInstance& instance, double delta,
                const TrackerConfig& config, std::uint64_t seed);

/// Pulls each arm once and accounts the burn-in in the tracking sums.
void burn_in(const BanditInstance& instance, TrackerState& state, RewardStream& rng);

/// Tracking deviation max_a |N_a(t) - sum_s w_a(s)| <= K (1 + sqrt t), for
/// both the floored and the unfloored sums. Call when both sums cover t pulls.
void check_tracking_invariants(const TrackerState& state, TrialRecord& record);

/// Forced exploration N_a(t) >= sqrt(t + K^2) - 2K.
void check_exploration(const TrackerState& state, TrialRecord& record);

}  // namespace allgood
