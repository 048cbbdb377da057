#include "allgood/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "allgood/bounds.hpp"
#include "allgood/error.hpp"
#include "json.hpp"

namespace allgood {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t delta_index,
                         std::size_t trial_index) noexcept {
  return base_seed ^ splitmix64(splitmix64(delta_index) + trial_index);
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_answer(const ArmSet& arms) {
  std::string out;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(arms[i] + 1);
  }
  return out;
}

json one_based(const ArmSet& arms) {
  json out = json::array();
  for (auto a : arms) out.push_back(a + 1);
  return out;
}

void check_campaign(const Campaign& c) {
  if (c.deltas.empty()) throw Error(Errc::invalid_argument, "delta grid is empty");
  for (double d : c.deltas) {
    if (!(d > 0.0 && d < 1.0)) throw Error(Errc::invalid_argument, "deltas must lie in (0, 1)");
  }
  if (c.trials < 1) throw Error(Errc::invalid_argument, "trials must be at least 1");
}

}  // namespace

CampaignResult mc_campaign(const Campaign& campaign) {
  check_campaign(campaign);
  const std::size_t n_delta = campaign.deltas.size();
  const auto n_trials = static_cast<std::size_t>(campaign.trials);
  const std::size_t n_jobs = n_delta * n_trials;

  CampaignResult result;
  result.rows.resize(n_jobs);
  auto run_job = [&](std::size_t job) {
    const std::size_t d = job / n_trials;
    const std::size_t i = job % n_trials;
    const std::uint64_t seed = trial_seed(campaign.base_seed, d, i);
    result.rows[job] = TrialRow{d, campaign.deltas[d], static_cast<std::int64_t>(i),
                                run(campaign.instance, campaign.deltas[d],
                                    campaign.tracker, seed)};
  };

  const unsigned threads = std::max(1u, campaign.threads);
  if (threads == 1) {
    for (std::size_t job = 0; job < n_jobs; ++job) run_job(job);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t job = next.fetch_add(1);
          if (job >= n_jobs) return;
          try {
            run_job(job);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(n_jobs);
            return;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (std::size_t d = 0; d < n_delta; ++d) {
    result.summaries.push_back(summarize(
        campaign.deltas[d],
        std::span<const TrialRow>(result.rows).subspan(d * n_trials, n_trials)));
  }
  return result;
}

double quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error(Errc::invalid_argument, "quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

DeltaSummary summarize(double delta, std::span<const TrialRow> rows) {
  std::vector<double> taus;
  taus.reserve(rows.size());
  double errors = 0.0;
  std::int64_t capped = 0;
  for (const auto& row : rows) {
    taus.push_back(static_cast<double>(row.record.stopping_time));
    if (!row.record.correct) errors += 1.0;
    if (row.record.capped) ++capped;
  }
  const auto n = static_cast<double>(rows.size());
  double mean = 0.0;
  for (double t : taus) mean += t;
  mean /= n;
  std::sort(taus.begin(), taus.end());
  return DeltaSummary{delta,
                      static_cast<std::int64_t>(rows.size()),
                      mean,
                      quantile(taus, 0.1),
                      quantile(taus, 0.9),
                      errors / n,
                      capped};
}

void write_trials_csv(std::ostream& out, const CampaignResult& result,
                      std::size_t arms, bool timing) {
  out << "delta_index,delta,trial,seed,tau,correct,capped,answer";
  for (std::size_t a = 0; a < arms; ++a) out << ",pulls_" << (a + 1);
  if (timing) out << ",wall_ms";
  out << '\n';
  for (const auto& row : result.rows) {
    const auto& r = row.record;
    out << row.delta_index << ',' << format_double(row.delta) << ',' << row.trial << ','
        << r.seed << ',' << r.stopping_time << ',' << (r.correct ? 1 : 0) << ','
        << (r.capped ? 1 : 0) << ',' << format_answer(r.answer);
    for (auto n : r.pull_counts) out << ',' << n;
    if (timing) {
      out << ',' << format_double(std::chrono::duration<double, std::milli>(r.wall_time).count());
    }
    out << '\n';
  }
}

void write_summary_csv(std::ostream& out, const CampaignResult& result) {
  out << "delta,trials,mean_tau,q10,q90,error_rate,capped\n";
  for (const auto& s : result.summaries) {
    out << format_double(s.delta) << ',' << s.trials << ',' << format_double(s.mean_tau)
        << ',' << format_double(s.q10) << ',' << format_double(s.q90) << ','
        << format_double(s.error_rate) << ',' << s.capped << '\n';
  }
}

SetScore score_sets(const ArmSet& estimate, const ArmSet& truth) {
  std::size_t hits = 0;
  for (auto a : estimate) {
    if (std::binary_search(truth.begin(), truth.end(), a)) ++hits;
  }
  const double precision =
      estimate.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(estimate.size());
  const double recall =
      truth.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(truth.size());
  const double f1 =
      precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
  return SetScore{precision, recall, f1};
}

std::vector<BudgetSnapshot> budget_run(const BudgetRun& run) {
  const auto& instance = run.instance;
  const auto k = static_cast<std::int64_t>(instance.arms());
  if (run.budget < k) throw Error(Errc::invalid_argument, "budget must be at least K");
  if (run.stride < 1) throw Error(Errc::invalid_argument, "stride must be at least 1");

  const ArmSet truth = good_set(instance);
  RewardStream rng(run.seed);
  TrackerState state(instance.arms());
  TrialRecord scratch;
  burn_in(instance, state, rng);
  Sampler sampler(instance, run.tracker);

  std::vector<BudgetSnapshot> out;
  auto snapshot = [&] {
    const auto estimate =
        good_set(state.empirical_means(), instance.epsilon(), instance.mode());
    out.push_back({state.t(), score_sets(estimate, truth)});
  };
  snapshot();
  while (state.t() < run.budget) {
    const std::size_t arm = sampler.choose(state, scratch);
    state.record(arm, rng.sample(instance, arm));
    if (state.t() % run.stride == 0 || state.t() == run.budget) snapshot();
  }
  return out;
}

void write_budget_csv(std::ostream& out, std::span<const BudgetSnapshot> snapshots) {
  out << "t,f1,precision,recall\n";
  for (const auto& s : snapshots) {
    out << s.t << ',' << format_double(s.score.f1) << ',' << format_double(s.score.precision)
        << ',' << format_double(s.score.recall) << '\n';
  }
}

BoundsReport compute_bounds(const BanditInstance& instance, double delta,
                            const SolveConfig& config) {
  const auto solved = mirror_ascent(instance, config);
  if (!(solved.value > 1e-14)) {
    throw Error(Errc::degenerate_instance,
                "game value vanishes; the characteristic time is unbounded");
  }
  BoundsReport report;
  report.t_star = 1.0 / solved.value;
  report.certified_gap = solved.certified_gap;
  report.prop1 = proposition1_bound(report.t_star, delta);
  if (!solved.certified) report.flags.emplace_back("solver-uncertified");
  if (instance.mode() == Mode::Additive) {
    if (margins(instance).beta) {
      report.theorem3 = theorem3_bound(instance);
    } else {
      report.flags.emplace_back("theorem3-no-bad-arm");
    }
    const auto f = mason_f(instance);
    report.mason_f = f.value;
    if (f.degenerate) report.flags.emplace_back("mason-degenerate");
    if (f.interpretation_sensitive) report.flags.emplace_back("mason-interpretation-sensitive");
  } else {
    report.flags.emplace_back("margins-unsupported-mode");
  }
  return report;
}

std::string to_json(const BestResponse& response) {
  json doc;
  doc["case"] = to_string(response.kind);
  doc["k"] = response.k + 1;
  // Arm index for GoodMadeBad, prefix length for BadMadeGood.
  doc["l"] = response.kind == ResponseCase::GoodMadeBad ? response.l + 1 : response.l;
  doc["t_bar"] = response.t_bar;
  doc["lambda"] = response.lambda;
  doc["cost"] = response.cost;
  return doc.dump();
}

std::string to_json(const SolveResult& result) {
  json doc;
  const auto w = result.weights.values();
  doc["weights"] = std::vector<double>(w.begin(), w.end());
  doc["value"] = result.value;
  doc["t_star"] = result.value > 0.0 ? json(1.0 / result.value) : json(nullptr);
  doc["certified_gap"] = result.certified_gap;
  doc["iterations"] = result.iterations;
  doc["certified"] = result.certified;
  return doc.dump();
}

std::string to_json(const TrialRecord& record) {
  json doc;
  doc["stopping_time"] = record.stopping_time;
  doc["answer"] = one_based(record.answer);
  doc["correct"] = record.correct;
  doc["seed"] = record.seed;
  doc["pull_counts"] = record.pull_counts;
  doc["wall_ms"] = std::chrono::duration<double, std::milli>(record.wall_time).count();
  doc["capped"] = record.capped;
  doc["solves"] = record.solves;
  doc["uncertified_solves"] = record.uncertified_solves;
  doc["exploration_violations"] = record.exploration_violations;
  doc["tracking_violations"] = record.tracking_violations;
  return doc.dump();
}

std::string to_json(const BoundsReport& report) {
  json doc;
  doc["t_star"] = report.t_star;
  doc["certified_gap"] = report.certified_gap;
  doc["prop1"] = report.prop1;
  doc["theorem3"] = report.theorem3 ? json(*report.theorem3) : json(nullptr);
  doc["mason_f"] = report.mason_f ? json(*report.mason_f) : json(nullptr);
  doc["flags"] = report.flags;
  return doc.dump();
}

}  // namespace allgood
