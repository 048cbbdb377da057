// allgood: command-line front end for the all-epsilon-good identification
// library. Every subcommand prints JSON or CSV on stdout.
//
// Exit status: 0 success, 2 invalid input or arguments, 3 I/O failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "allgood/bounds.hpp"
#include "allgood/error.hpp"
#include "allgood/harness.hpp"
#include "allgood/instance_io.hpp"
#include "allgood/oracle.hpp"
#include "allgood/solver.hpp"
#include "allgood/tracker.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct Options {
  std::string instance;
  std::optional<double> delta;
  std::vector<double> delta_grid;
  std::int64_t trials = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  std::string algorithm = "tas";
  std::int64_t budget = 0;
  std::int64_t stride = 1;
  std::int64_t lazy_period = 0;
  double accuracy = 1e-4;
  std::int64_t max_iters = 1'000'000;
  std::int64_t tau_max = 100'000'000;
  std::vector<double> weights;
  bool timing = false;
};

allgood::SolveConfig solve_config(const Options& o) {
  if (!(o.accuracy > 0.0)) {
    throw allgood::Error(allgood::Errc::invalid_argument, "--accuracy must be positive");
  }
  if (o.max_iters < 1) {
    throw allgood::Error(allgood::Errc::invalid_argument, "--max-iters must be at least 1");
  }
  allgood::SolveConfig c;
  c.target_accuracy = o.accuracy;
  c.max_iterations = o.max_iters;
  return c;
}

allgood::TrackerConfig tracker_config(const Options& o) {
  allgood::TrackerConfig c;
  if (o.algorithm == "tas") {
    c.rule = allgood::SamplingRule::CTracking;
  } else if (o.algorithm == "uniform") {
    c.rule = allgood::SamplingRule::RoundRobin;
  } else {
    throw allgood::Error(allgood::Errc::invalid_argument,
                         "--algorithm must be tas or uniform");
  }
  if (o.lazy_period < 0) {
    throw allgood::Error(allgood::Errc::invalid_argument, "--lazy-period must be >= 0");
  }
  c.lazy_period = o.lazy_period;
  c.tau_max = o.tau_max;
  // The tracker solves with accuracy 1/sqrt(t); only the iteration cap comes
  // from the command line.
  c.solve.max_iterations = o.max_iters;
  return c;
}

double require_delta(const Options& o) {
  if (!o.delta) throw allgood::Error(allgood::Errc::invalid_argument, "--delta is required");
  return *o.delta;
}

// Empty path means stdout.
template <class Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw allgood::Error(allgood::Errc::io, "cannot open " + path + " for writing");
  write(file);
  file.flush();
  if (!file) throw allgood::Error(allgood::Errc::io, "failed writing " + path);
}

int cmd_solve(const Options& o) {
  const auto instance = allgood::load_instance(o.instance);
  const auto result = allgood::mirror_ascent(instance, solve_config(o));
  std::cout << allgood::to_json(result) << '\n';
  return 0;
}

int cmd_oracle(const Options& o) {
  const auto instance = allgood::load_instance(o.instance);
  const auto w = o.weights.empty() ? allgood::SimplexWeights::uniform(instance.arms())
                                   : allgood::SimplexWeights(o.weights);
  std::cout << allgood::to_json(allgood::best_response(instance, w)) << '\n';
  return 0;
}

int cmd_run(const Options& o) {
  const auto instance = allgood::load_instance(o.instance);
  const auto record = allgood::run(instance, require_delta(o), tracker_config(o), o.seed);
  std::cout << allgood::to_json(record) << '\n';
  return 0;
}

int cmd_mc(const Options& o) {
  std::vector<double> deltas = o.delta_grid;
  if (o.delta) deltas.insert(deltas.begin(), *o.delta);
  if (deltas.empty()) {
    throw allgood::Error(allgood::Errc::invalid_argument, "--delta or --delta-grid is required");
  }
  if (o.threads < 1) throw allgood::Error(allgood::Errc::invalid_argument, "--threads must be >= 1");
  allgood::Campaign campaign{allgood::load_instance(o.instance), deltas, o.trials, o.seed,
                             o.threads, tracker_config(o)};
  const auto result = allgood::mc_campaign(campaign);
  const auto arms = campaign.instance.arms();
  if (o.out.empty()) {
    allgood::write_summary_csv(std::cout, result);
    return 0;
  }
  emit(o.out, [&](std::ostream& s) { allgood::write_trials_csv(s, result, arms, o.timing); });
  emit(o.out + ".summary.csv", [&](std::ostream& s) { allgood::write_summary_csv(s, result); });
  return 0;
}

int cmd_budget(const Options& o) {
  allgood::BudgetRun run{allgood::load_instance(o.instance), o.budget, o.stride, o.seed,
                         tracker_config(o)};
  const auto snapshots = allgood::budget_run(run);
  emit(o.out, [&](std::ostream& s) { allgood::write_budget_csv(s, snapshots); });
  return 0;
}

int cmd_bounds(const Options& o) {
  const auto instance = allgood::load_instance(o.instance);
  const auto report = allgood::compute_bounds(instance, require_delta(o), solve_config(o));
  std::cout << allgood::to_json(report) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identify all epsilon-good arms in Gaussian bandits"};
  app.require_subcommand(1);
  Options o;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("--instance", o.instance, "instance JSON file")->required();
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--accuracy", o.accuracy, "target suboptimality of the game value");
    sub->add_option("--max-iters", o.max_iters, "mirror-ascent iteration cap");
  };
  auto add_tracker = [&](CLI::App* sub) {
    sub->add_option("--algorithm", o.algorithm, "sampling rule: tas or uniform");
    sub->add_option("--lazy-period", o.lazy_period, "pulls between weight solves (0: 100 K)");
    sub->add_option("--tau-max", o.tau_max, "safety cap on the number of pulls");
    sub->add_option("--max-iters", o.max_iters, "iteration cap per weight solve");
    sub->add_option("--seed", o.seed, "reward RNG seed");
  };

  auto* solve = app.add_subcommand("solve", "optimal allocation and characteristic time");
  add_instance(solve);
  add_solver(solve);

  auto* oracle = app.add_subcommand("oracle", "best response to a fixed allocation");
  add_instance(oracle);
  oracle->add_option("--weights", o.weights, "allocation, comma separated (default uniform)")
      ->delimiter(',');

  auto* run = app.add_subcommand("run", "one Track-and-Stop trial");
  add_instance(run);
  run->add_option("--delta", o.delta, "confidence parameter");
  add_tracker(run);

  auto* mc = app.add_subcommand("mc", "Monte Carlo campaign over a delta grid");
  add_instance(mc);
  mc->add_option("--delta", o.delta, "single confidence parameter");
  mc->add_option("--delta-grid", o.delta_grid, "confidence parameters, comma separated")
      ->delimiter(',');
  mc->add_option("--trials", o.trials, "trials per delta");
  mc->add_option("--threads", o.threads, "worker threads");
  mc->add_option("--out", o.out, "trial CSV path; the summary goes to <out>.summary.csv");
  mc->add_flag("--timing", o.timing, "append a wall_ms column (not reproducible)");
  add_tracker(mc);

  auto* budget = app.add_subcommand("budget", "fixed-budget F1 trace, stopping disabled");
  add_instance(budget);
  budget->add_option("--budget", o.budget, "total number of pulls")->required();
  budget->add_option("--stride", o.stride, "record every this many pulls");
  budget->add_option("--out", o.out, "CSV path (default stdout)");
  add_tracker(budget);

  auto* bounds = app.add_subcommand("bounds", "lower bounds and diagnostics");
  add_instance(bounds);
  bounds->add_option("--delta", o.delta, "confidence parameter");
  add_solver(bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (solve->parsed()) return cmd_solve(o);
    if (oracle->parsed()) return cmd_oracle(o);
    if (run->parsed()) return cmd_run(o);
    if (mc->parsed()) return cmd_mc(o);
    if (budget->parsed()) return cmd_budget(o);
    if (bounds->parsed()) return cmd_bounds(o);
  } catch (const allgood::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == allgood::Errc::io ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
