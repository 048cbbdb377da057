// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
// usage: acceptance --cli PATH [--workdir DIR] [criterion ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "allgood/bounds.hpp"
#include "allgood/harness.hpp"
#include "allgood/oracle.hpp"
#include "allgood/solver.hpp"
#include "allgood/tracker.hpp"
#include "support/brute_force.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

namespace fs = std::filesystem;
using namespace allgood;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Context {
  std::string cli;
  fs::path workdir;
  // Invariant counters over every tracker run made by the suite.
  std::int64_t runs = 0;
  std::int64_t exploration_violations = 0;
  std::int64_t tracking_violations = 0;
  // Criterion 5's campaign, reused by criterion 9.
  std::optional<CampaignResult> four_good;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void tally(Context& ctx, const CampaignResult& r) {
  for (const auto& row : r.rows) {
    ++ctx.runs;
    ctx.exploration_violations += row.record.exploration_violations;
    ctx.tracking_violations += row.record.tracking_violations;
  }
}

const BanditInstance& four_good_instance() {
  static const BanditInstance inst({1, 1, 1, 1, 0.05}, 0.9);
  return inst;
}

// 1. Two-arm closed form.
Outcome two_arm(Context&) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = mirror_ascent(BanditInstance({0.9, 0.6}, 0.05), SolveConfig{});
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double t_star = 1.0 / r.value;
  const double linf = std::max(std::abs(r.weights[0] - 0.5), std::abs(r.weights[1] - 0.5));
  const bool pass = std::abs(t_star - 128.0) <= 1.28 && linf <= 0.01 && secs < 1.0;
  return {pass, fmt("T*=%.4f (want 128 +-1%%), |w-1/2|=%.2e, %.3fs", t_star, linf, secs)};
}

// 2. Oracle against brute force.
Outcome oracle_brute_force(Context&) {
  testsupport::Gen gen(2002);
  int checked = 0;
  int failures = 0;
  double worst = 0.0;
  while (checked < 50) {
    const std::size_t k = gen.index(2, 4);
    const double eps = gen.coin() ? 0.1 : 0.3;
    const bool mult = gen.coin();
    auto mu = gen.means(k, 0.0, 1.0);
    if (mult && *std::min_element(mu.begin(), mu.end()) <= 0.0) continue;
    const BanditInstance inst(mu, eps, mult ? Mode::Multiplicative : Mode::Additive);
    const double eta = exploration_rate(static_cast<std::int64_t>(gen.index(1, 10000)), k);
    const auto w = project_floor(SimplexWeights(gen.weights(k, 0.0)), eta);
    const std::vector<double> wv(w.values().begin(), w.values().end());
    const double got = ResponseOracle(inst)(wv).cost;
    const double ref = testsupport::brute_force_cost(mu, eps, mult, wv).cost;
    const double rel = std::abs(got - ref) / std::max(ref, 1e-300);
    worst = std::max(worst, rel);
    if (rel > 1e-6) ++failures;
    ++checked;
  }
  return {failures == 0, fmt("%d/%d mismatches, worst relative error %.2e", failures, checked, worst)};
}

// 3. Mirror-ascent certificate against a 100x reference.
Outcome certificate(Context&) {
  testsupport::Gen gen(3003);
  int failures = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto inst = gen.any(2, 6);
    for (std::int64_t n : {1000, 10000}) {
      SolveConfig cfg;
      cfg.target_accuracy = 1e-300;
      cfg.max_iterations = n;
      const auto r = mirror_ascent(inst, cfg);
      cfg.max_iterations = 100 * n;
      const auto ref = mirror_ascent(inst, cfg);
      const double sub = ref.value - r.value;
      const double bound = lipschitz_constant(inst) *
                           std::sqrt(2.0 * std::log(static_cast<double>(inst.arms())) / n);
      worst_ratio = std::max(worst_ratio, sub / bound);
      if (sub > bound) ++failures;
    }
  }
  return {failures == 0, fmt("%d/20 violations, worst suboptimality/bound %.3g", failures, worst_ratio)};
}

// 4. Closed-form upper bound on the characteristic time.
Outcome closed_form_bound(Context&) {
  const double beta = 0.1;
  const double eps = 0.5;
  const BanditInstance inst({beta, -beta, -beta, -beta, -beta, -eps}, eps);
  const double bound = 8.0 / (beta * beta) + 4.0 * 4.0 / ((eps - 2 * beta) * (eps - 2 * beta));
  const auto r = mirror_ascent(inst, SolveConfig{});
  const double t_hi = 1.0 / r.value;
  const double t_lo = 1.0 / (r.value + r.certified_gap);
  return {t_lo <= bound,
          fmt("T* in [%.2f, %.2f] (gap %.2e, certified=%d), bound %.2f", t_lo, t_hi,
              r.certified_gap, r.certified ? 1 : 0, bound)};
}

// 5. delta-correctness on the four-good-arm instance.
Outcome delta_correct(Context& ctx) {
  Campaign c{four_good_instance(), {0.1}, 200, 5005};
  const auto r = mc_campaign(c);
  tally(ctx, r);
  ctx.four_good = r;
  const auto& s = r.summaries[0];
  return {s.error_rate <= 0.15 && s.capped == 0,
          fmt("error rate %.3f over 200 trials (limit 0.15), mean tau %.0f, capped %lld",
              s.error_rate, s.mean_tau, static_cast<long long>(s.capped))};
}

// 6. Stopping time over log(1/delta) approaches T*.
Outcome asymptotic_ratio(Context& ctx) {
  const std::vector<double> deltas{1e-2, 1e-4, 1e-6};
  Campaign c{BanditInstance({0.9, 0.6}, 0.05), deltas, 50, 6006};
  const auto r = mc_campaign(c);
  tally(ctx, r);
  std::vector<double> ratio;
  for (const auto& s : r.summaries) ratio.push_back(s.mean_tau / std::log(1.0 / s.delta));
  bool pass = ratio[2] >= 0.8 * 128.0 && ratio[2] <= 2.0 * 128.0;
  for (std::size_t i = 1; i < ratio.size(); ++i) pass = pass && ratio[i] <= 1.1 * ratio[i - 1];
  return {pass, fmt("E[tau]/log(1/delta) = %.1f, %.1f, %.1f (want last in [102.4, 256], "
                    "non-increasing within 10%%)",
                    ratio[0], ratio[1], ratio[2])};
}

// 7. Tracking invariants across every run above plus a few extra shapes.
Outcome invariants(Context& ctx) {
  const std::vector<BanditInstance> extra{
      BanditInstance({0.9, 0.7, 0.65, 0.2, 0.1, 0.05}, 0.1),
      BanditInstance({10, 9, 5, 8.5}, 0.2, Mode::Multiplicative),
      BanditInstance({0.5, 0.45, 0.4}, 0.08, Mode::Additive, 0.25),
  };
  std::uint64_t seed = 7007;
  for (const auto& inst : extra) {
    Campaign c{inst, {0.05}, 10, seed++};
    tally(ctx, mc_campaign(c));
    c.tracker.rule = SamplingRule::RoundRobin;
    tally(ctx, mc_campaign(c));
  }
  return {ctx.exploration_violations == 0 && ctx.tracking_violations == 0,
          fmt("%lld runs, %lld exploration and %lld tracking violations",
              static_cast<long long>(ctx.runs), static_cast<long long>(ctx.exploration_violations),
              static_cast<long long>(ctx.tracking_violations))};
}

// 8. Property suites.
Outcome properties(Context&) {
  const int n = 500;
  testsupport::Gen gen(8008);
  const int concave = testsupport::concavity_failures(gen, n);
  const int lip_w = testsupport::weight_lipschitz_failures(gen, n);
  const int lip_mu = testsupport::mean_lipschitz_failures(gen, n);
  const int perm = testsupport::permutation_failures(gen, n);
  const int shift = testsupport::translation_failures(gen, n);
  const int super = testsupport::supergradient_failures(gen, n);
  const int total = concave + lip_w + lip_mu + perm + shift + super;
  return {total == 0,
          fmt("failures over %d cases each: concavity %d, Lipschitz(w) %d, Lipschitz(mu) %d, "
              "permutation %d, translation %d, supergradient %d",
              n, concave, lip_w, lip_mu, perm, shift, super)};
}

// 9. Consistency of the lower bounds.
Outcome bounds_consistency(Context& ctx) {
  std::vector<std::string> parts;
  bool pass = true;

  testsupport::Gen gen(9009);
  int compared = 0;
  int above = 0;
  double worst = 0.0;
  SolveConfig cfg;
  cfg.target_accuracy = 1e-5;
  while (compared < 20) {
    const auto inst = gen.additive(2, 5, 0.05, 0.3);
    const auto f = mason_f(inst);
    if (f.degenerate) continue;
    const auto r = mirror_ascent(inst, cfg);
    if (!(r.value > 1e-14)) continue;
    // 1/value is the largest T* compatible with the certificate.
    const double t_star = 1.0 / r.value;
    worst = std::max(worst, f.value / t_star);
    if (f.value > t_star) ++above;
    ++compared;
  }
  pass = pass && above == 0;
  parts.push_back(fmt("f <= T* fails on %d/20 (worst f/T* %.2f)", above, worst));

  if (!ctx.four_good) {
    Campaign c{four_good_instance(), {0.1}, 200, 5005};
    ctx.four_good = mc_campaign(c);
    tally(ctx, *ctx.four_good);
  }
  const double t_star = 1.0 / mirror_ascent(four_good_instance(), SolveConfig{}).value;
  const double prop1 = proposition1_bound(t_star, 0.1);
  const double mean_tau = ctx.four_good->summaries[0].mean_tau;
  pass = pass && prop1 <= 1.1 * mean_tau;
  parts.push_back(fmt("prop1 %.0f vs mean tau %.0f", prop1, mean_tau));

  const double th3 = theorem3_bound(four_good_instance());
  pass = pass && std::abs(th3 - 1601.0 / 768.0) <= 1e-12;
  parts.push_back(fmt("theorem3 %.6f (want %.6f)", th3, 1601.0 / 768.0));

  std::string detail;
  for (const auto& p : parts) detail += (detail.empty() ? "" : "; ") + p;
  return {pass, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 10. Byte-identical CLI campaigns.
Outcome determinism(Context& ctx) {
  fs::create_directories(ctx.workdir);
  const auto instance = ctx.workdir / "determinism.json";
  std::ofstream(instance) << R"({"means": [0.9, 0.7, 0.5, 0.45], "epsilon": 0.1})";
  std::vector<std::string> trials;
  std::vector<std::string> summaries;
  for (int threads : {1, 1, 8, 8}) {
    const auto out = ctx.workdir / ("mc_" + std::to_string(trials.size()) + ".csv");
    const std::string cmd = "\"" + ctx.cli + "\" mc --instance \"" + instance.string() +
                            "\" --delta-grid 0.1,0.01 --trials 25 --seed 10 --threads " +
                            std::to_string(threads) + " --out \"" + out.string() + "\"";
    if (std::system(cmd.c_str()) != 0) return {false, "mc command failed: " + cmd};
    trials.push_back(slurp(out));
    summaries.push_back(slurp(out.string() + ".summary.csv"));
  }
  bool same = !trials[0].empty();
  for (std::size_t i = 1; i < trials.size(); ++i) {
    same = same && trials[i] == trials[0] && summaries[i] == summaries[0];
  }
  return {same, fmt("4 campaigns (threads 1,1,8,8), %zu bytes each, %s", trials[0].size(),
                    same ? "identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  ctx.workdir = fs::temp_directory_path() / "allgood_acceptance";
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      ctx.cli = argv[++i];
    } else if (arg == "--workdir" && i + 1 < argc) {
      ctx.workdir = argv[++i];
    } else {
      selected.push_back(std::atoi(arg.c_str()));
    }
  }
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  const std::map<int, std::pair<const char*, std::function<Outcome(Context&)>>> criteria{
      {1, {"two-arm closed form", two_arm}},
      {2, {"oracle vs brute force", oracle_brute_force}},
      {3, {"mirror-ascent certificate", certificate}},
      {4, {"closed-form bound on T*", closed_form_bound}},
      {5, {"delta-correctness", delta_correct}},
      {6, {"asymptotic ratio", asymptotic_ratio}},
      {7, {"tracking invariants", invariants}},
      {8, {"property suites", properties}},
      {9, {"bounds consistency", bounds_consistency}},
      {10, {"determinism", determinism}},
  };

  int failed = 0;
  for (int id : selected) {
    const auto it = criteria.find(id);
    if (it == criteria.end()) {
      std::cerr << "unknown criterion " << id << '\n';
      return 2;
    }
    if (id == 10 && ctx.cli.empty()) {
      std::cerr << "criterion 10 needs --cli\n";
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->second.second(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::cout << "criterion " << id << " [" << it->second.first << "]: "
              << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  (" << fmt("%.1f", secs)
              << "s)" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
