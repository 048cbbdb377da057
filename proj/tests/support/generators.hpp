#pragma once

// Hand-rolled random generators for property tests. All draws come from one
// seeded engine so failures replay exactly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "allgood/model.hpp"

namespace testsupport {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  bool coin() { return index(0, 1) == 1; }

  std::vector<double> means(std::size_t k, double lo, double hi) {
    std::vector<double> mu(k);
    for (auto& m : mu) m = uniform(lo, hi);
    return mu;
  }

  // Simplex point with every coordinate at least `floor`.
  std::vector<double> weights(std::size_t k, double floor = 1e-3) {
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& v : w) {
      v = -std::log(uniform(1e-12, 1.0));
      total += v;
    }
    const double free_mass = 1.0 - floor * static_cast<double>(k);
    for (auto& v : w) v = floor + free_mass * v / total;
    return w;
  }

  allgood::BanditInstance additive(std::size_t k_lo, std::size_t k_hi, double eps_lo = 0.05,
                                   double eps_hi = 0.5) {
    return allgood::BanditInstance(means(index(k_lo, k_hi), 0.0, 1.0), uniform(eps_lo, eps_hi),
                                   allgood::Mode::Additive);
  }

  allgood::BanditInstance multiplicative(std::size_t k_lo, std::size_t k_hi,
                                         double eps_lo = 0.05, double eps_hi = 0.5) {
    return allgood::BanditInstance(means(index(k_lo, k_hi), 0.1, 1.0),
                                   uniform(eps_lo, eps_hi), allgood::Mode::Multiplicative);
  }

  allgood::BanditInstance any(std::size_t k_lo, std::size_t k_hi) {
    return coin() ? additive(k_lo, k_hi) : multiplicative(k_lo, k_hi);
  }

  std::vector<std::size_t> permutation(std::size_t k) {
    std::vector<std::size_t> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), engine_);
    return p;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// out[i] = v[perm[i]]
template <class T>
std::vector<T> permute(const std::vector<T>& v, const std::vector<std::size_t>& perm) {
  std::vector<T> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[perm[i]];
  return out;
}

}  // namespace testsupport
