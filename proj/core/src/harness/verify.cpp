#include "nsm/harness/verify.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>

#include "nsm/analysis.hpp"
#include "nsm/corruption.hpp"
#include "nsm/feasible_set.hpp"
#include "nsm/harness/experiment.hpp"
#include "nsm/harness/records.hpp"
#include "nsm/problems.hpp"
#include "nsm/rng.hpp"

namespace nsm::harness {
namespace {

constexpr std::size_t kProjectionCases = 1000;

RealVector gaussian(std::size_t dim, double scale, Rng& rng) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> v(dim);
  for (double& e : v) e = normal(rng);
  return RealVector(std::move(v));
}

std::vector<FeasibleSet> sample_sets(Rng& rng) {
  std::uniform_int_distribution<std::size_t> dim_dist(1, 12);
  std::uniform_real_distribution<double> radius(0.5, 20.0);
  std::vector<FeasibleSet> sets;
  for (int i = 0; i < 4; ++i) {
    const std::size_t d = dim_dist(rng);
    sets.push_back(FeasibleSet::ball(gaussian(d, 3.0, rng), radius(rng)));
    sets.push_back(FeasibleSet::diag_box(radius(rng), dim_dist(rng)));
    sets.push_back(FeasibleSet::unconstrained(dim_dist(rng)));
  }
  return sets;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

SuiteResult projection_idempotent(Rng& rng) {
  double worst = 0.0;
  for (const auto& set : sample_sets(rng)) {
    for (std::size_t i = 0; i < kProjectionCases; ++i) {
      const RealVector x = gaussian(set.dim(), 30.0, rng);
      const RealVector once = set.project(x);
      worst = std::max(worst, distance_sq(set.project(once), once));
    }
  }
  return {"projection idempotence", worst <= 1e-20, "max ||P(P(x)) - P(x)||^2 = " + fmt(worst)};
}

SuiteResult projection_nonexpansive(Rng& rng) {
  double worst = 0.0;
  for (const auto& set : sample_sets(rng)) {
    for (std::size_t i = 0; i < kProjectionCases; ++i) {
      const RealVector x = gaussian(set.dim(), 30.0, rng);
      const RealVector y = gaussian(set.dim(), 30.0, rng);
      const double lhs = norm(set.project(x) - set.project(y));
      worst = std::max(worst, lhs - norm(x - y));
    }
  }
  return {"projection nonexpansive", worst <= 1e-9,
          "max ||P(x) - P(y)|| - ||x - y|| = " + fmt(worst)};
}

SuiteResult projection_feasible(Rng& rng) {
  std::size_t failures = 0;
  for (const auto& set : sample_sets(rng)) {
    for (std::size_t i = 0; i < kProjectionCases; ++i) {
      if (!set.contains(set.project(gaussian(set.dim(), 30.0, rng)), 1e-9)) ++failures;
    }
  }
  return {"projection feasibility", failures == 0, std::to_string(failures) + " infeasible"};
}

SuiteResult normalize_unit(Rng& rng) {
  double worst = 0.0;
  std::uniform_real_distribution<double> log_scale(-100.0, 100.0);
  for (std::size_t i = 0; i < kProjectionCases; ++i) {
    const RealVector v = gaussian(1 + i % 16, std::pow(10.0, log_scale(rng)), rng);
    const Direction d = normalize(v);
    if (d.is_zero) continue;
    worst = std::max(worst, std::abs(norm(d.direction) - 1.0));
  }
  return {"normalize unit norm", worst <= 1e-12, "max | ||v/||v|| || - 1 | = " + fmt(worst)};
}

SuiteResult gradient_check(const std::string& name, const problems::Objective& objective,
                           const FeasibleSet& sampling_set, Rng& rng) {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const RealVector x = analysis::sample_feasible(sampling_set, rng);
    worst = std::max(worst, analysis::finite_diff_check(objective, x, 1e-6));
  }
  return {"gradient check " + name, worst < 1e-5, "max relative error " + fmt(worst)};
}

SuiteResult toy_angle(Rng& rng) {
  const std::size_t d = 10;
  const auto objective = problems::toy_objective(d);
  const auto set = FeasibleSet::diag_box(10.0, d);
  const double expected = 1.0 / std::sqrt(static_cast<double>(d));
  double worst = 0.0;
  std::size_t used = 0;
  for (int i = 0; i < 1000; ++i) {
    const RealVector x = analysis::sample_feasible(set, rng);
    const RealVector g = objective.subgradient(x);
    const RealVector diff = x - *objective.optimum();
    const double denom = norm(g) * norm(diff);
    if (!(denom > 0.0)) continue;
    worst = std::max(worst, std::abs(dot(g, diff) / denom - expected));
    ++used;
  }
  return {"toy acute angle", used > 900 && worst <= 1e-9,
          "max |cos - 1/sqrt(d)| = " + fmt(worst) + " over " + std::to_string(used) + " points"};
}

SuiteResult curvature_bracket(Rng& rng) {
  Rng data_rng(rng());
  const auto data = problems::synth_linreg(10, 60, 10.0, 2.5, data_rng);
  const auto objective = problems::least_squares_objective(data);
  const auto hc = problems::hessian_constants(data.design());
  const auto set = FeasibleSet::ball(RealVector::zeros(10), 10.0);
  std::size_t violations = 0;
  for (int i = 0; i < 100; ++i) {
    const RealVector a = analysis::sample_feasible(set, rng);
    const RealVector b = analysis::sample_feasible(set, rng);
    const RealVector dx = a - b;
    const double sq = norm_sq(dx);
    const double inner = dot(objective.subgradient(a) - objective.subgradient(b), dx);
    const double slack = 1e-9 * hc.beta * sq;
    if (inner < hc.mu * sq - slack || inner > hc.beta * sq + slack) ++violations;
  }
  return {"strong convexity bracket", violations == 0,
          std::to_string(violations) + " of 100 pairs outside [mu, beta]"};
}

SuiteResult channel_frequency(Rng& rng) {
  constexpr std::uint64_t n = 100000;
  std::string detail;
  bool ok = true;
  const RealVector x{1.0, 2.0};
  const RealVector g{0.5, -0.5};
  for (double p : {0.05, 0.25, 0.5, 0.9}) {
    corruption::CorruptionChannel channel(p, corruption::ScaledOpposite(2.0), rng());
    for (std::uint64_t i = 0; i < n; ++i) channel.next({x, g, 1.0, nullptr, std::nullopt});
    const double mean = p * n;
    const double sigma = std::sqrt(n * p * (1.0 - p));
    const double dev = std::abs(static_cast<double>(channel.corruptions_made()) - mean) / sigma;
    ok = ok && dev <= 3.0;
    detail += (detail.empty() ? "" : ", ") + std::string("p=") + fmt(p) + ": " + fmt(dev) + " sigma";
  }
  return {"channel corruption frequency", ok, detail};
}

SuiteResult gamma_identity() {
  double worst = 0.0;
  for (double kappa : {1.0, 1.5, 3.0, 10.0, 40.0}) {
    const double thr = analysis::threshold_probability(1.0 / kappa);
    for (double frac : {0.0, 0.3, 0.75, 0.99}) {
      const double q = frac * thr;
      for (double diameter : {0.5, 20.0, 200.0}) {
        const double a = analysis::strongly_convex_gamma(diameter, kappa, q);
        const double b = analysis::theorem_gamma(diameter, 1.0 / kappa, q);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
      }
    }
  }
  return {"step-size identity", worst <= 1e-12, "max relative difference " + fmt(worst)};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

SuiteResult csv_determinism() {
  ExperimentConfig cfg = toy_preset();
  cfg.iterations = 300;
  cfg.seeds = {1, 2, 3};
  cfg.metrics = {Metric::DistSqOpt, Metric::Objective, Metric::CorruptFlag, Metric::GammaT};
  ExperimentConfig lin = linreg_preset();
  lin.iterations = 200;
  lin.seeds = {1, 2};

  const auto dir = std::filesystem::temp_directory_path();
  const auto tag = std::to_string(std::random_device{}());
  const auto first = dir / ("nsm_verify_" + tag + "_a.csv");
  const auto second = dir / ("nsm_verify_" + tag + "_b.csv");

  auto produce = [&](const std::filesystem::path& path, std::size_t threads) {
    cfg.threads = threads;
    lin.threads = threads;
    auto records = run_experiment(cfg);
    auto more = run_experiment(lin);
    records.insert(records.end(), more.begin(), more.end());
    sort_records(records);
    write_csv(records, path);
  };
  produce(first, 1);
  produce(second, 3);
  const std::string a = read_file(first);
  const std::string b = read_file(second);
  std::filesystem::remove(first);
  std::filesystem::remove(second);
  return {"CSV determinism", !a.empty() && a == b,
          std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

std::vector<SuiteResult> run_verify_suites(std::uint64_t seed) {
  std::vector<SuiteResult> out;
  Rng rng(derive_seed(seed, 0x7e71f));

  auto guarded = [&](const std::string& name, const std::function<SuiteResult()>& suite) {
    try {
      out.push_back(suite());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  };

  guarded("projection idempotence", [&] { return projection_idempotent(rng); });
  guarded("projection nonexpansive", [&] { return projection_nonexpansive(rng); });
  guarded("projection feasibility", [&] { return projection_feasible(rng); });
  guarded("normalize unit norm", [&] { return normalize_unit(rng); });
  guarded("gradient check toy", [&] {
    return gradient_check("toy", problems::toy_objective(10), FeasibleSet::diag_box(10.0, 10), rng);
  });
  guarded("gradient check linreg", [&] {
    Rng data_rng(rng());
    const auto data = problems::synth_linreg(20, 200, 10.0, 2.5, data_rng);
    return gradient_check("linreg", problems::least_squares_objective(data),
                          FeasibleSet::ball(RealVector::zeros(20), 10.0), rng);
  });
  guarded("gradient check logistic", [&] {
    Rng data_rng(rng());
    const auto data = problems::synth_classes(10, 300, 3, 10.0, 0.1, data_rng);
    return gradient_check("logistic", problems::logistic_objective(data),
                          FeasibleSet::unconstrained(data.param_dim(), 4.0), rng);
  });
  guarded("toy acute angle", [&] { return toy_angle(rng); });
  guarded("strong convexity bracket", [&] { return curvature_bracket(rng); });
  guarded("channel corruption frequency", [&] { return channel_frequency(rng); });
  guarded("step-size identity", [] { return gamma_identity(); });
  guarded("CSV determinism", [] { return csv_determinism(); });
  return out;
}

}  // namespace nsm::harness
