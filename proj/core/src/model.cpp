#include "allgood/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "allgood/error.hpp"

namespace allgood {

namespace {

constexpr double kSimplexTolerance = 1e-9;

void check_common(const std::vector<double>& means, double epsilon, Mode mode,
                  double variance) {
  if (means.size() < 2) {
    throw Error(Errc::invalid_instance, "instance needs at least two arms");
  }
  for (double m : means) {
    if (!std::isfinite(m)) {
      throw Error(Errc::invalid_instance, "arm means must be finite");
    }
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(Errc::invalid_instance, "epsilon must be positive");
  }
  if (mode == Mode::Multiplicative && !(epsilon < 1.0)) {
    throw Error(Errc::invalid_instance,
                "multiplicative epsilon must lie in (0, 1)");
  }
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw Error(Errc::invalid_instance, "variance must be positive");
  }
}

}  // namespace

const char* to_string(Mode mode) noexcept {
  return mode == Mode::Additive ? "additive" : "multiplicative";
}

BanditInstance::BanditInstance(std::vector<double> means, double epsilon,
                               Mode mode, double variance)
    : means_(std::move(means)),
      epsilon_(epsilon),
      mode_(mode),
      variance_(variance) {
  check_common(means_, epsilon_, mode_, variance_);
  if (mode_ == Mode::Multiplicative) {
    for (double m : means_) {
      if (!(m > 0.0)) {
        throw Error(Errc::invalid_instance,
                    "multiplicative mode requires strictly positive means");
      }
    }
  }
}

BanditInstance::BanditInstance(Unchecked, std::vector<double> means,
                               double epsilon, Mode mode, double variance)
    : means_(std::move(means)),
      epsilon_(epsilon),
      mode_(mode),
      variance_(variance) {}

BanditInstance BanditInstance::empirical(std::vector<double> means,
                                         double epsilon, Mode mode,
                                         double variance) {
  check_common(means, epsilon, mode, variance);
  if (mode == Mode::Multiplicative &&
      !(*std::max_element(means.begin(), means.end()) > 0.0)) {
    throw Error(Errc::invalid_instance,
                "multiplicative mode requires a positive maximum mean");
  }
  return BanditInstance(Unchecked{}, std::move(means), epsilon, mode, variance);
}

BanditInstance BanditInstance::with_means(std::vector<double> means) const {
  return empirical(std::move(means), epsilon_, mode_, variance_);
}

SimplexWeights::SimplexWeights(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw Error(Errc::invalid_argument, "weights must be non-empty");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(Errc::invalid_argument,
                  "weights must be finite and non-negative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw Error(Errc::invalid_argument, "weights must sum to one");
  }
}

SimplexWeights SimplexWeights::uniform(std::size_t arms) {
  if (arms == 0) {
    throw Error(Errc::invalid_argument, "weights must be non-empty");
  }
  return SimplexWeights(std::vector<double>(arms, 1.0 / static_cast<double>(arms)));
}

SimplexWeights SimplexWeights::normalized(std::span<const double> values) {
  double total = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(Errc::invalid_argument,
                  "weights must be finite and non-negative");
    }
    total += v;
  }
  if (!(total > 0.0)) {
    throw Error(Errc::invalid_argument, "weights must have a positive sum");
  }
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v /= total;
  return SimplexWeights(std::move(out));
}

ArmOrder ArmOrder::of(std::span<const double> means) {
  ArmOrder order;
  order.index.resize(means.size());
  std::iota(order.index.begin(), order.index.end(), std::size_t{0});
  std::stable_sort(order.index.begin(), order.index.end(),
                   [&](std::size_t a, std::size_t b) { return means[a] > means[b]; });
  order.sorted.reserve(means.size());
  for (std::size_t i : order.index) order.sorted.push_back(means[i]);
  return order;
}

ArmSet good_set(std::span<const double> means, double epsilon, Mode mode) {
  ArmSet out;
  if (means.empty()) return out;
  const double best = *std::max_element(means.begin(), means.end());
  const double cut =
      mode == Mode::Additive ? best - epsilon : (1.0 - epsilon) * best;
  for (std::size_t a = 0; a < means.size(); ++a) {
    if (means[a] >= cut) out.push_back(a);
  }
  return out;
}

ArmSet good_set(const BanditInstance& instance) {
  return good_set(instance.means(), instance.epsilon(), instance.mode());
}

Margins margins(const BanditInstance& instance) {
  if (instance.mode() != Mode::Additive) {
    throw Error(Errc::unsupported_mode,
                "margins are defined for additive instances only");
  }
  const auto means = instance.means();
  const double cut =
      *std::max_element(means.begin(), means.end()) - instance.epsilon();
  Margins m{std::numeric_limits<double>::infinity(), std::nullopt};
  for (double mu : means) {
    if (mu >= cut) {
      m.alpha = std::min(m.alpha, mu - cut);
    } else {
      const double gap = cut - mu;
      m.beta = m.beta ? std::min(*m.beta, gap) : gap;
    }
  }
  return m;
}

SimplexWeights project_floor(const SimplexWeights& w, double eta) {
  const std::size_t k = w.size();
  if (!(eta > 0.0)) {
    throw Error(Errc::invalid_argument, "floor must be positive");
  }
  // Allow for the rounding in a caller's 1/K.
  if (eta * static_cast<double>(k) > 1.0 + 1e-12) {
    throw Error(Errc::infeasible_floor, "floor exceeds 1/K");
  }
  const auto in = w.values();
  std::vector<bool> clamped(k, false);
  std::vector<double> out(in.begin(), in.end());
  for (;;) {
    std::size_t n_clamped = 0;
    double free_mass = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      if (!clamped[a] && in[a] < eta) clamped[a] = true;
      if (clamped[a]) {
        ++n_clamped;
      } else {
        free_mass += in[a];
      }
    }
    const double budget = 1.0 - static_cast<double>(n_clamped) * eta;
    const double scale = free_mass > 0.0 ? budget / free_mass : 0.0;
    bool changed = false;
    for (std::size_t a = 0; a < k; ++a) {
      if (clamped[a]) {
        out[a] = eta;
      } else {
        out[a] = in[a] * scale;
        if (out[a] < eta) {
          clamped[a] = true;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  // Snap to an exact simplex point: the only rounding left is in the scaled
  // coordinates.
  double total = 0.0;
  for (double v : out) total += v;
  if (total != 1.0) {
    std::size_t largest = static_cast<std::size_t>(
        std::max_element(out.begin(), out.end()) - out.begin());
    out[largest] += 1.0 - total;
  }
  return SimplexWeights(std::move(out));
}

double exploration_rate(std::int64_t t, std::size_t arms) {
  if (t < 1) throw Error(Errc::invalid_argument, "t must be at least 1");
  const double kk = static_cast<double>(arms);
  return 1.0 / (2.0 * std::sqrt(kk * kk + static_cast<double>(t)));
}

double RewardStream::sample(const BanditInstance& instance, std::size_t arm) {
  if (arm >= instance.arms()) {
    throw Error(Errc::invalid_argument, "arm index out of range");
  }
  return instance.means()[arm] + std::sqrt(instance.variance()) * normal_(engine_);
}

}  // namespace allgood
