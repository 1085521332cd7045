#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nsm/harness/records.hpp"
#include "nsm/optimizers.hpp"

namespace nsm::harness {

enum class Experiment { Toy, LinReg, Logistic, Custom };
enum class Problem { Toy, LinReg, Logistic };
enum class ScheduleRule { Theorem, InverseT, Constant };
enum class AdversaryRule { Default, WorstCaseDirectional, ScaledOpposite, NegateIterate, FixedVector };

std::string_view to_string(Experiment e) noexcept;
std::string_view to_string(Problem p) noexcept;
Problem parse_problem(std::string_view name);
ScheduleRule parse_schedule(std::string_view name);
AdversaryRule parse_adversary(std::string_view name);

/// Full description of a batch of runs. Presets fill it in for the three
/// reference experiments; everything stays overridable.
struct ExperimentConfig {
  Experiment experiment = Experiment::Custom;
  Problem problem = Problem::Toy;

  std::size_t dim = 10;      // toy/linreg: d; logistic: features per sample
  std::size_t samples = 0;   // N (linreg, logistic)
  std::size_t classes = 3;   // m (logistic)
  double radius = 10.0;      // toy: box bound; linreg: w_true ball and adversary scale
  std::optional<double> set_radius;  // linreg feasible ball; defaults to radius
  double lambda = 0.1;
  double separation = 10.0;
  std::optional<double> noise_sd;  // linreg; defaults to radius / 4

  /// One batch of runs per value. Empty means the linreg rule
  /// p = (1/2) / (1 + kappa), evaluated per data seed.
  std::vector<double> p_values;
  /// Design probability for the theorem schedule. Defaults to
  /// (3/4) * threshold, raised to p if that is smaller.
  std::optional<double> q;

  ScheduleRule schedule = ScheduleRule::InverseT;
  double gamma0 = 1.0;

  AdversaryRule adversary = AdversaryRule::Default;
  /// ScaledOpposite factor, or c in the fixed vector (-c, ..., -c).
  double adversary_scale = 15.0;

  std::vector<optimizers::Method> methods{optimizers::Method::NSM};
  optimizers::BaselineHyper hyper{};

  std::size_t iterations = 10000;
  std::vector<std::uint64_t> seeds{1};
  /// Constant initial point x1 = value * ones; otherwise the projection of 0.
  std::optional<double> x1_value;
  /// Empty selects the problem default: dist_sq_opt and objective when the
  /// optimum is known, objective otherwise.
  std::vector<Metric> metrics;
  /// 0 means one per hardware thread.
  std::size_t threads = 0;
  /// Deviations from the reference settings, echoed with the config.
  std::vector<std::string> notes;
};

/// Corruption probabilities {0.1, 0.2, thr - 0.01, thr, thr + 0.01, 0.4}
/// with thr = 1 / (1 + sqrt(d)).
std::vector<double> toy_p_sweep(std::size_t d);

/// d = 10, R = 10, gamma_t = 200/t, x1 = 5 * ones, negate-iterate adversary.
ExperimentConfig toy_preset();
/// d = 20, N = 200 (full_scale: d = 100, N = 1000), R = 10, theorem
/// schedule, worst-case directional adversary, all six methods.
ExperimentConfig linreg_preset(bool full_scale = false);
/// d = 10, m = 3, N = 300, separation 10, lambda = 0.1, p = 0.25,
/// gamma_t = 0.1/t, b_t = -15 g, all six methods.
ExperimentConfig logistic_preset();

/// Throws ConfigError describing the first invalid field.
void validate(const ExperimentConfig& cfg);

/// Human-readable echo of the configuration (one setting per line).
std::string describe(const ExperimentConfig& cfg);

/// 1 for T <= 10^4, else ceil(T / 10^4).
std::size_t metric_cadence(std::size_t iterations);

/// Data stream for a seed (stream 0) and channel streams (1 + p index).
std::uint64_t data_seed(std::uint64_t base_seed);
std::uint64_t channel_seed(std::uint64_t base_seed, std::size_t p_index);

struct RunInfo {
  std::string run_id;
  std::uint64_t seed;
  optimizers::Method method;
  double p;
  std::optional<double> q;
  double gamma0;
  std::optional<double> cos_phi;
  std::optional<double> kappa;
  std::optional<double> diameter;
  std::uint64_t channel_seed;
  std::uint64_t draws;
  std::uint64_t corruptions;
  optimizers::Trajectory trajectory;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  /// Sorted by (run_id, method, seed).
  std::vector<RunInfo> runs;
  std::size_t record_every;
};

/// Validates, builds every problem instance and step size (so configuration
/// errors surface before any run starts), then executes all
/// (p, method, seed) runs, possibly concurrently. The result does not depend
/// on the thread count. `on_ready` runs after preparation, before the first run.
ExperimentResult run_experiment_detailed(const ExperimentConfig& cfg,
                                         const std::function<void()>& on_ready = {});

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

/// One line per run: run id, method, seed, p, q, gamma, kappa, outcome.
std::string describe_runs(const ExperimentResult& result);

}  // namespace nsm::harness
