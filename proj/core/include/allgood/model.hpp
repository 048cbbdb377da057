#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace allgood {

enum class Mode { Additive, Multiplicative };

const char* to_string(Mode mode) noexcept;

using ArmSet = std::vector<std::size_t>;

/// A Gaussian bandit problem: per-arm means, the accuracy parameter epsilon,
/// how "good" is measured (additive gap or multiplicative ratio to the best
/// mean) and the common reward variance.
///
/// Arm indices are 0-based everywhere inside the library; user-facing output
/// adds one.
class BanditInstance {
 public:
  /// Throws Error(invalid_instance) when K < 2, a mean is not finite,
  /// epsilon <= 0 (or >= 1 in multiplicative mode), variance <= 0, or a
  /// multiplicative instance has a non-positive mean.
  BanditInstance(std::vector<double> means, double epsilon,
                 Mode mode = Mode::Additive, double variance = 1.0);

  /// Instance built from empirical means. Multiplicative mode only needs a
  /// strictly positive maximum here, since sample averages of positive arms
  /// can dip below zero.
  static BanditInstance empirical(std::vector<double> means, double epsilon,
                                  Mode mode, double variance);

  std::span<const double> means() const noexcept { return means_; }
  double mean(std::size_t arm) const { return means_.at(arm); }
  std::size_t arms() const noexcept { return means_.size(); }
  double epsilon() const noexcept { return epsilon_; }
  Mode mode() const noexcept { return mode_; }
  double variance() const noexcept { return variance_; }

  /// Same epsilon/mode/variance, different means (validated as empirical).
  BanditInstance with_means(std::vector<double> means) const;

 private:
  struct Unchecked {};
  BanditInstance(Unchecked, std::vector<double> means, double epsilon,
                 Mode mode, double variance);

  std::vector<double> means_;
  double epsilon_;
  Mode mode_;
  double variance_;
};

/// Probability vector over arms.
class SimplexWeights {
 public:
  /// Throws Error(invalid_argument) on a negative or non-finite entry, or
  /// when the entries do not sum to one within 1e-9.
  explicit SimplexWeights(std::vector<double> weights);

  static SimplexWeights uniform(std::size_t arms);
  /// Normalizes non-negative values with a positive sum.
  static SimplexWeights normalized(std::span<const double> values);

  std::span<const double> values() const noexcept { return weights_; }
  double operator[](std::size_t arm) const { return weights_[arm]; }
  std::size_t size() const noexcept { return weights_.size(); }

 private:
  std::vector<double> weights_;
};

/// Stable descending order of a mean vector: rank r holds original arm
/// `index[r]` with mean `sorted[r]`. Ties keep original index order.
struct ArmOrder {
  std::vector<std::size_t> index;
  std::vector<double> sorted;

  static ArmOrder of(std::span<const double> means);
};

/// {a : mu_a >= max mu - eps} (additive) or {a : mu_a >= (1-eps) max mu}
/// (multiplicative) for an arbitrary mean vector, ascending indices. Equality
/// at the threshold counts as good.
ArmSet good_set(std::span<const double> means, double epsilon, Mode mode);
ArmSet good_set(const BanditInstance& instance);

struct Margins {
  double alpha;                 // upper margin, >= 0
  std::optional<double> beta;   // lower margin, absent when every arm is good
};

/// Additive mode only; Error(unsupported_mode) otherwise.
Margins margins(const BanditInstance& instance);

/// Clips coordinates below `eta` up to `eta` and scales the rest down
/// proportionally, repeating until every coordinate is at least `eta`.
/// Error(infeasible_floor) when eta > 1/K, Error(invalid_argument) when
/// eta <= 0.
SimplexWeights project_floor(const SimplexWeights& w, double eta);

/// 1 / (2 sqrt(K^2 + t)).
double exploration_rate(std::int64_t t, std::size_t arms);

/// Seeded source of Gaussian rewards. Not thread-safe; give each run its own.
class RewardStream {
 public:
  explicit RewardStream(std::uint64_t seed) : engine_(seed) {}

  double sample(const BanditInstance& instance, std::size_t arm);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline double sample_reward(RewardStream& stream, const BanditInstance& instance,
                            std::size_t arm) {
  return stream.sample(instance, arm);
}

}  // namespace allgood
