#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "allgood/model.hpp"
#include "allgood/oracle.hpp"
#include "allgood/solver.hpp"
#include "allgood/tracker.hpp"

namespace allgood {

// ---------------------------------------------------------------------------
// Fixed-confidence Monte Carlo campaigns.
//
// Trial i at delta index d uses the reward seed
//   base_seed XOR hash64(d, i),   hash64(d, i) = splitmix64(splitmix64(d) + i)
// so any single trial can be replayed with `allgood run --seed`.
// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t delta_index,
                         std::size_t trial_index) noexcept;

struct Campaign {
  BanditInstance instance;
  std::vector<double> deltas;
  std::int64_t trials = 100;
  std::uint64_t base_seed = 0;
  unsigned threads = 1;
  TrackerConfig tracker{};
};

struct TrialRow {
  std::size_t delta_index;
  double delta;
  std::int64_t trial;
  TrialRecord record;
};

struct DeltaSummary {
  double delta;
  std::int64_t trials;
  double mean_tau;
  double q10;
  double q90;
  double error_rate;
  std::int64_t capped;
};

struct CampaignResult {
  std::vector<TrialRow> rows;          // ordered by (delta index, trial)
  std::vector<DeltaSummary> summaries; // one per delta, grid order
};

/// Runs every (delta, trial) pair, in parallel when threads > 1. Output is
/// independent of the thread count.
CampaignResult mc_campaign(const Campaign& campaign);

/// Linear interpolation between order statistics (h = (n-1) q).
double quantile(std::span<const double> sorted, double q);

DeltaSummary summarize(double delta, std::span<const TrialRow> rows);

/// Columns: delta_index,delta,trial,seed,tau,correct,capped,answer,
/// pulls_1..pulls_K and, with `timing`, wall_ms. `answer` lists 1-based arms
/// separated by ';'.
void write_trials_csv(std::ostream& out, const CampaignResult& result,
                      std::size_t arms, bool timing = false);

/// Columns: delta,trials,mean_tau,q10,q90,error_rate,capped.
void write_summary_csv(std::ostream& out, const CampaignResult& result);

// ---------------------------------------------------------------------------
// Fixed-budget evaluation: the sampling rule runs without stopping and the
// empirical good set is scored against the true one.
// ---------------------------------------------------------------------------

struct SetScore {
  double precision;
  double recall;
  double f1;
};

/// Precision |E & T| / |E|, recall |E & T| / |T|, F1 their harmonic mean.
/// Empty sets score 0.
SetScore score_sets(const ArmSet& estimate, const ArmSet& truth);

struct BudgetRun {
  BanditInstance instance;
  std::int64_t budget;
  std::int64_t stride = 1;
  std::uint64_t seed = 0;
  TrackerConfig tracker{};
};

struct BudgetSnapshot {
  std::int64_t t;
  SetScore score;
};

/// Snapshot after burn-in (t = K), then whenever t is a multiple of the
/// stride, and at t = budget.
std::vector<BudgetSnapshot> budget_run(const BudgetRun& run);

/// Columns: t,f1,precision,recall.
void write_budget_csv(std::ostream& out, std::span<const BudgetSnapshot> snapshots);

// ---------------------------------------------------------------------------
// Diagnostics and JSON reports (arm indices 1-based).
// ---------------------------------------------------------------------------

struct BoundsReport {
  double t_star;
  double certified_gap;
  double prop1;
  std::optional<double> theorem3;
  std::optional<double> mason_f;
  std::vector<std::string> flags;
};

BoundsReport compute_bounds(const BanditInstance& instance, double delta,
                            const SolveConfig& config);

/// {case, k, l, t_bar, lambda, cost}
std::string to_json(const BestResponse& response);
/// {weights, value, t_star, certified_gap, iterations, certified}
std::string to_json(const SolveResult& result);
/// {stopping_time, answer, correct, seed, pull_counts, wall_ms, capped, ...}
std::string to_json(const TrialRecord& record);
/// {t_star, prop1, theorem3, mason_f, flags}
std::string to_json(const BoundsReport& report);

}  // namespace allgood
