#include "allgood/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "allgood/error.hpp"

namespace allgood {

namespace {

struct Candidate {
  ResponseCase kind;
  std::size_t k;
  std::size_t l;
  double t;
  double cost;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.k != b.k) return a.k < b.k;
  return a.l < b.l;
}

// Per-mode pieces of the candidate formulas. In the additive case the
// flipped arm ends at t and the reference arms at t + eps; in the
// multiplicative case at t and t / (1 - eps).
struct Geometry {
  Mode mode;
  double eps;

  double lift(double t) const {
    return mode == Mode::Additive ? t + eps : t / (1.0 - eps);
  }
  // Coefficient on w_k in the weighted average.
  double self_weight() const {
    return mode == Mode::Additive ? 1.0 : (1.0 - eps) * (1.0 - eps);
  }
  // Contribution of a reference arm with mean mu to the numerator.
  double pulled(double mu) const {
    return mode == Mode::Additive ? mu - eps : (1.0 - eps) * mu;
  }
};

void check_weights(const BanditInstance& instance, std::span<const double> w) {
  if (w.size() != instance.arms()) {
    throw Error(Errc::zero_weight, "weight vector length does not match arm count");
  }
  for (double v : w) {
    if (!(v > 0.0)) {
      throw Error(Errc::zero_weight, "best response needs strictly positive weights");
    }
  }
}

}  // namespace

const char* to_string(ResponseCase c) noexcept {
  return c == ResponseCase::GoodMadeBad ? "GoodMadeBad" : "BadMadeGood";
}

ResponseOracle::ResponseOracle(const BanditInstance& instance)
    : instance_(instance),
      order_(ArmOrder::of(instance.means())),
      good_(instance.arms(), false) {
  for (std::size_t a : good_set(instance)) good_[a] = true;
}

BestResponse ResponseOracle::operator()(std::span<const double> w) const {
  const BanditInstance& instance = instance_;
  check_weights(instance, w);
  const auto mu = instance.means();
  const std::size_t n = mu.size();
  const Geometry geo{instance.mode(), instance.epsilon()};
  const double c = geo.self_weight();
  const ArmOrder& order = order_;
  const std::vector<bool>& good = good_;

  Candidate best{ResponseCase::GoodMadeBad, n, n, 0.0,
                 std::numeric_limits<double>::infinity()};
  bool found_any = false;
  auto consider = [&](const Candidate& cand) {
    if (!found_any || better(cand, best)) best = cand;
    found_any = true;
  };

  // Push a good arm k below the threshold defined by another good arm l.
  for (std::size_t k = 0; k < n; ++k) {
    if (!good[k]) continue;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k || !good[l]) continue;
      const double t = (c * w[k] * mu[k] + w[l] * geo.pulled(mu[l])) / (c * w[k] + w[l]);
      const double top = geo.lift(t);
      const double cost = w[k] * (mu[k] - t) * (mu[k] - t) + w[l] * (mu[l] - top) * (mu[l] - top);
      consider({ResponseCase::GoodMadeBad, k, l, t, cost});
    }
  }

  // Lift a bad arm k while lowering the l best arms to the same level.
  for (std::size_t rank = 1; rank < n; ++rank) {
    const std::size_t k = order.index[rank];
    if (good[k]) continue;
    double sum_w = 0.0;
    double sum_wm = 0.0;
    bool sandwiched = false;
    for (std::size_t l = 1; l <= rank; ++l) {
      const std::size_t a = order.index[l - 1];
      sum_w += w[a];
      sum_wm += w[a] * geo.pulled(mu[a]);
      const double t = (c * w[k] * mu[k] + sum_wm) / (c * w[k] + sum_w);
      const double top = geo.lift(t);
      if (!(order.sorted[l - 1] >= top && top > order.sorted[l])) continue;
      double cost = w[k] * (mu[k] - t) * (mu[k] - t);
      for (std::size_t i = 0; i < l; ++i) {
        const std::size_t b = order.index[i];
        cost += w[b] * (mu[b] - top) * (mu[b] - top);
      }
      consider({ResponseCase::BadMadeGood, k, l, t, cost});
      sandwiched = true;
    }
    if (sandwiched) continue;

    // Rounding can leave no prefix satisfying the sandwich. The convex
    // objective with every arm above the lifted level clipped to it is then
    // minimized over the same prefix averages.
    Candidate fallback{ResponseCase::BadMadeGood, k, 0, 0.0,
                       std::numeric_limits<double>::infinity()};
    sum_w = 0.0;
    sum_wm = 0.0;
    for (std::size_t l = 1; l <= rank; ++l) {
      const std::size_t a = order.index[l - 1];
      sum_w += w[a];
      sum_wm += w[a] * geo.pulled(mu[a]);
      const double t = (c * w[k] * mu[k] + sum_wm) / (c * w[k] + sum_w);
      const double top = geo.lift(t);
      double cost = w[k] * (mu[k] - t) * (mu[k] - t);
      std::size_t lowered = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t b = order.index[i];
        if (b == k || !(mu[b] > top)) continue;
        cost += w[b] * (mu[b] - top) * (mu[b] - top);
        ++lowered;
      }
      if (cost < fallback.cost) fallback = {ResponseCase::BadMadeGood, k, lowered, t, cost};
    }
    consider(fallback);
  }

  if (!found_any) {
    throw Error(Errc::degenerate_alternative, "no alternative instance exists");
  }

  BestResponse out;
  out.kind = best.kind;
  out.k = best.k;
  out.l = best.l;
  out.t_bar = best.t;
  out.lambda.assign(mu.begin(), mu.end());
  const double top = geo.lift(best.t);
  if (best.kind == ResponseCase::GoodMadeBad) {
    out.lambda[best.l] = top;
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      if (a != best.k && mu[a] > top) out.lambda[a] = top;
    }
  }
  out.lambda[best.k] = best.t;

  double cost = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const double d = mu[a] - out.lambda[a];
    cost += w[a] * d * d;
  }
  out.cost = cost / (2.0 * instance.variance());
  return out;
}

BestResponse best_response(const BanditInstance& instance, const SimplexWeights& w) {
  return ResponseOracle(instance)(w.values());
}

double game_value(const BanditInstance& instance, const SimplexWeights& w) {
  return best_response(instance, w).cost;
}

std::vector<double> supergradient(const BanditInstance& instance,
                                  const BestResponse& response) {
  const auto mu = instance.means();
  std::vector<double> d(mu.size());
  const double scale = 1.0 / (2.0 * instance.variance());
  for (std::size_t a = 0; a < mu.size(); ++a) {
    const double diff = response.lambda[a] - mu[a];
    d[a] = diff * diff * scale;
  }
  return d;
}

std::vector<double> supergradient(const BanditInstance& instance,
                                  const SimplexWeights& w) {
  return supergradient(instance, best_response(instance, w));
}

}  // namespace allgood
