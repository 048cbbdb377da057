#include "allgood/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "allgood/error.hpp"

namespace allgood {

double kl_bernoulli(double p, double q) {
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) {
    throw Error(Errc::domain, "kl_bernoulli needs p and q in (0, 1)");
  }
  return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
}

double proposition1_bound(double t_star, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(Errc::invalid_argument, "delta must lie in (0, 1)");
  }
  return t_star * std::log(1.0 / (2.4 * delta));
}

double theorem3_bound(const BanditInstance& instance) {
  const Margins m = margins(instance);
  if (!m.beta) {
    throw Error(Errc::no_bad_arm, "every arm is good; the lower margin is undefined");
  }
  const double beta = *m.beta;
  const auto mu = instance.means();
  const double top = *std::max_element(mu.begin(), mu.end());
  const double near_top =
      static_cast<double>(good_set(mu, beta, Mode::Additive).size());
  double sum = 0.0;
  for (double v : mu) {
    const double d = top - v + beta;
    sum += 1.0 / (d * d);
  }
  return sum / (12.0 * near_top * near_top * near_top);
}

MasonDiagnostic mason_f(const BanditInstance& instance) {
  const Margins m = margins(instance);
  const auto mu = instance.means();
  const double eps = instance.epsilon();
  const double top = *std::max_element(mu.begin(), mu.end());

  MasonDiagnostic out;
  double sum = 0.0;
  double alt_sum = 0.0;
  for (double v : mu) {
    const double below = top - eps - v;
    const double above = top + m.alpha - v;
    if (below == 0.0 || above == 0.0) {
      ++out.skipped_terms;
      continue;
    }
    sum += std::max(1.0 / (below * below), 1.0 / (above * above));
    alt_sum += std::max(1.0 / (eps * eps), 1.0 / (above * above));
  }
  out.value = 2.0 * sum;
  out.alternate_value = 2.0 * alt_sum;
  out.degenerate = out.skipped_terms > 0;
  out.interpretation_sensitive =
      std::abs(out.alternate_value - out.value) > 0.01 * std::abs(out.value);
  return out;
}

}  // namespace allgood
