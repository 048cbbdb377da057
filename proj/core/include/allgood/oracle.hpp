#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "allgood/model.hpp"

namespace allgood {

enum class ResponseCase {
  GoodMadeBad,  // a good arm k is pushed below the threshold set by arm l
  BadMadeGood,  // a bad arm k is lifted while the top l arms are lowered
};

const char* to_string(ResponseCase c) noexcept;

/// Cheapest alternative instance (one whose good set differs) for a fixed
/// sampling allocation.
///
/// `k` is the original index of the arm whose class flips. For GoodMadeBad,
/// `l` is the original index of the arm raised to become the new reference;
/// for BadMadeGood, `l` is the number of top-ranked arms (in stable
/// descending order) that are lowered. `lambda` is in original arm order and
/// `cost` equals sum_a w_a (mu_a - lambda_a)^2 / (2 sigma^2).
///
/// The returned lambda sits on the boundary of the alternative set: the
/// flipped arm lands exactly on the threshold, so the infimum is attained
/// only in the closure.
struct BestResponse {
  ResponseCase kind;
  std::size_t k;
  std::size_t l;
  double t_bar;
  std::vector<double> lambda;
  double cost;
};

/// Best-response oracle bound to one instance. The sort order and good set
/// depend only on the means, so they are computed once; repeated calls (as in
/// mirror ascent) only pay for the candidate enumeration.
class ResponseOracle {
 public:
  explicit ResponseOracle(const BanditInstance& instance);
  explicit ResponseOracle(BanditInstance&&) = delete;  // keeps a reference

  /// Throws Error(zero_weight) on a non-positive weight or length mismatch.
  BestResponse operator()(std::span<const double> w) const;

  const BanditInstance& instance() const noexcept { return instance_; }

 private:
  const BanditInstance& instance_;
  ArmOrder order_;
  std::vector<bool> good_;
};

/// Closed-form best response over the finite candidate family.
///
/// Throws Error(zero_weight) when some weight is zero or the weight vector
/// has the wrong length, and Error(degenerate_alternative) when no candidate
/// exists.
BestResponse best_response(const BanditInstance& instance, const SimplexWeights& w);

/// Value of the inner minimization: the cost of the best response.
double game_value(const BanditInstance& instance, const SimplexWeights& w);

/// Danskin supergradient d_a = (lambda*_a - mu_a)^2 / (2 sigma^2).
std::vector<double> supergradient(const BanditInstance& instance,
                                  const SimplexWeights& w);

/// Same as supergradient(), reusing an already computed best response.
std::vector<double> supergradient(const BanditInstance& instance,
                                  const BestResponse& response);

}  // namespace allgood
