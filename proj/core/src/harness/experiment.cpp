#include "nsm/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "nsm/analysis.hpp"
#include "nsm/corruption.hpp"
#include "nsm/error.hpp"
#include "nsm/linalg.hpp"
#include "nsm/problems.hpp"
#include "nsm/rng.hpp"

namespace nsm::harness {

using optimizers::Method;

std::string_view to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::Toy: return "toy";
    case Experiment::LinReg: return "linreg";
    case Experiment::Logistic: return "logistic";
    case Experiment::Custom: return "custom";
  }
  return "unknown";
}

std::string_view to_string(Problem p) noexcept {
  switch (p) {
    case Problem::Toy: return "toy";
    case Problem::LinReg: return "linreg";
    case Problem::Logistic: return "logistic";
  }
  return "unknown";
}

Problem parse_problem(std::string_view name) {
  if (name == "toy") return Problem::Toy;
  if (name == "linreg") return Problem::LinReg;
  if (name == "logistic") return Problem::Logistic;
  throw ConfigError("unknown problem '" + std::string(name) + "' (expected toy, linreg, logistic)");
}

ScheduleRule parse_schedule(std::string_view name) {
  if (name == "theorem") return ScheduleRule::Theorem;
  if (name == "inverse-t") return ScheduleRule::InverseT;
  if (name == "const") return ScheduleRule::Constant;
  throw ConfigError("unknown schedule '" + std::string(name) +
                    "' (expected theorem, inverse-t, const)");
}

AdversaryRule parse_adversary(std::string_view name) {
  if (name == "default") return AdversaryRule::Default;
  if (name == "worst-case") return AdversaryRule::WorstCaseDirectional;
  if (name == "scaled-opposite") return AdversaryRule::ScaledOpposite;
  if (name == "negate-iterate") return AdversaryRule::NegateIterate;
  if (name == "fixed") return AdversaryRule::FixedVector;
  throw ConfigError("unknown adversary '" + std::string(name) +
                    "' (expected default, worst-case, scaled-opposite, negate-iterate, fixed)");
}

std::vector<double> toy_p_sweep(std::size_t d) {
  const double thr = analysis::threshold_probability(1.0 / std::sqrt(static_cast<double>(d)));
  return {0.1, 0.2, thr - 0.01, thr, thr + 0.01, 0.4};
}

ExperimentConfig toy_preset() {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::Toy;
  cfg.problem = Problem::Toy;
  cfg.dim = 10;
  cfg.radius = 10.0;
  cfg.p_values = toy_p_sweep(cfg.dim);
  cfg.schedule = ScheduleRule::InverseT;
  cfg.gamma0 = 200.0;
  cfg.adversary = AdversaryRule::NegateIterate;
  cfg.methods = {Method::NSM};
  cfg.iterations = 10000;
  cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  cfg.x1_value = 5.0;
  return cfg;
}

ExperimentConfig linreg_preset(bool full_scale) {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::LinReg;
  cfg.problem = Problem::LinReg;
  cfg.dim = full_scale ? 100 : 20;
  cfg.samples = full_scale ? 1000 : 200;
  cfg.radius = 10.0;
  cfg.schedule = ScheduleRule::Theorem;
  cfg.adversary = AdversaryRule::WorstCaseDirectional;
  cfg.methods = {Method::NSM, Method::GD, Method::NAG, Method::Adam, Method::RMSprop,
                 Method::AMSGrad};
  cfg.iterations = 10000;
  cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  if (!full_scale) cfg.notes.push_back("desk scale d=20, N=200 (reference scale is d=100, N=1000)");
  return cfg;
}

ExperimentConfig logistic_preset() {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::Logistic;
  cfg.problem = Problem::Logistic;
  cfg.dim = 10;
  cfg.samples = 300;
  cfg.classes = 3;
  cfg.separation = 10.0;
  cfg.lambda = 0.1;
  cfg.p_values = {0.25};
  cfg.schedule = ScheduleRule::InverseT;
  cfg.gamma0 = 0.1;
  cfg.adversary = AdversaryRule::ScaledOpposite;
  cfg.adversary_scale = 15.0;
  cfg.methods = {Method::NSM, Method::GD, Method::NAG, Method::Adam, Method::RMSprop,
                 Method::AMSGrad};
  cfg.iterations = 5000;
  cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  cfg.notes.push_back(
      "synthetic 3-class data (d=10, N=300) stands in for the 10-class image benchmark; "
      "lambda=0.1 instead of 100, which over-regularizes at this size");
  return cfg;
}

namespace {

bool has_optimum(Problem p) { return p != Problem::Logistic; }

std::vector<Metric> effective_metrics(const ExperimentConfig& cfg) {
  std::vector<Metric> metrics = cfg.metrics;
  if (metrics.empty()) {
    if (has_optimum(cfg.problem)) metrics.push_back(Metric::DistSqOpt);
    metrics.push_back(Metric::Objective);
  }
  std::sort(metrics.begin(), metrics.end());
  metrics.erase(std::unique(metrics.begin(), metrics.end()), metrics.end());
  return metrics;
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(v);
}

std::string make_run_id(const ExperimentConfig& cfg, std::optional<double> p) {
  std::string id(to_string(cfg.experiment));
  if (cfg.experiment == Experiment::Custom) id += "-" + std::string(to_string(cfg.problem));
  id += "/p=";
  id += p ? shortest(*p) : "auto";
  return id;
}

struct Instance {
  std::uint64_t seed;
  problems::Objective objective;
  FeasibleSet set;
  RealVector x1;
  corruption::Adversary adversary;
  std::optional<double> adversary_radius;
  std::optional<double> cos_phi;
  std::optional<double> kappa;
  std::optional<double> diameter;
};

corruption::Adversary make_adversary(const ExperimentConfig& cfg, std::size_t dim) {
  AdversaryRule rule = cfg.adversary;
  if (rule == AdversaryRule::Default) {
    switch (cfg.problem) {
      case Problem::Toy: rule = AdversaryRule::NegateIterate; break;
      case Problem::LinReg: rule = AdversaryRule::WorstCaseDirectional; break;
      case Problem::Logistic: rule = AdversaryRule::ScaledOpposite; break;
    }
  }
  switch (rule) {
    case AdversaryRule::WorstCaseDirectional:
      return corruption::WorstCaseDirectional{};
    case AdversaryRule::ScaledOpposite:
      return corruption::ScaledOpposite(cfg.adversary_scale);
    case AdversaryRule::NegateIterate:
      return corruption::NegateIterate(RealVector::filled(dim, 1.0));
    case AdversaryRule::FixedVector:
      return corruption::FixedVector(RealVector::filled(dim, -cfg.adversary_scale));
    case AdversaryRule::Default:
      break;
  }
  throw ConfigError("unresolved adversary");
}

Instance build_instance(const ExperimentConfig& cfg, std::uint64_t seed) {
  switch (cfg.problem) {
    case Problem::Toy: {
      FeasibleSet set = FeasibleSet::diag_box(cfg.radius, cfg.dim);
      RealVector x1 = set.project(
          cfg.x1_value ? RealVector::filled(cfg.dim, *cfg.x1_value) : RealVector::zeros(cfg.dim));
      const double cos_phi = 1.0 / std::sqrt(static_cast<double>(cfg.dim));
      const auto diameter = set.diameter();
      return Instance{seed,           problems::toy_objective(cfg.dim),
                      std::move(set), std::move(x1),
                      make_adversary(cfg, cfg.dim), cfg.radius,
                      cos_phi,        std::nullopt,
                      diameter};
    }
    case Problem::LinReg: {
      Rng rng(data_seed(seed));
      const problems::LinRegData data = problems::synth_linreg(
          cfg.dim, cfg.samples, cfg.radius, cfg.noise_sd.value_or(cfg.radius / 4.0), rng);
      const double kappa = problems::condition_number(data.design());
      const double set_radius = cfg.set_radius.value_or(cfg.radius);
      FeasibleSet set = FeasibleSet::ball(RealVector::zeros(cfg.dim), set_radius);
      // Minimizer over the feasible ball; the closed form whenever it is feasible.
      problems::Objective objective = problems::least_squares_objective(data).with_optimum(
          problems::ball_constrained_least_squares(data, RealVector::zeros(cfg.dim), set_radius));
      RealVector x1 = set.project(
          cfg.x1_value ? RealVector::filled(cfg.dim, *cfg.x1_value) : RealVector::zeros(cfg.dim));
      const auto diameter = set.diameter();
      return Instance{seed,           std::move(objective),
                      std::move(set), std::move(x1),
                      make_adversary(cfg, cfg.dim), cfg.radius,
                      1.0 / kappa,    kappa,
                      diameter};
    }
    case Problem::Logistic: {
      Rng rng(data_seed(seed));
      const problems::ClassData data = problems::synth_classes(
          cfg.dim, cfg.samples, cfg.classes, cfg.separation, cfg.lambda, rng);
      const std::size_t dim = data.param_dim();
      FeasibleSet set = FeasibleSet::unconstrained(dim);
      RealVector x1 =
          cfg.x1_value ? RealVector::filled(dim, *cfg.x1_value) : RealVector::zeros(dim);
      return Instance{seed,           problems::logistic_objective(data),
                      std::move(set), std::move(x1),
                      make_adversary(cfg, dim), std::nullopt,
                      std::nullopt,   std::nullopt,
                      std::nullopt};
    }
  }
  throw ConfigError("unknown problem");
}

struct RunPlan {
  std::size_t instance;
  std::size_t p_index;
  std::optional<double> p_config;
  double p;
  std::optional<double> q;
  Method method;
  optimizers::StepSchedule schedule;
  std::uint64_t channel_seed;
  std::string run_id;
};

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.iterations < 1) throw ConfigError("T must be at least 1");
  if (cfg.seeds.empty()) throw ConfigError("at least one seed is required");
  {
    auto sorted = cfg.seeds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ConfigError("seeds must be distinct");
    }
    if (sorted.back() > static_cast<std::uint64_t>(INT64_MAX)) {
      throw ConfigError("seeds must fit in a signed 64-bit integer");
    }
  }
  if (cfg.methods.empty()) throw ConfigError("at least one optimizer is required");
  {
    auto m = cfg.methods;
    std::sort(m.begin(), m.end());
    if (std::adjacent_find(m.begin(), m.end()) != m.end()) {
      throw ConfigError("optimizers must be distinct");
    }
  }
  for (double p : cfg.p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1], got " + shortest(p));
  }
  if (cfg.q && !(*cfg.q >= 0.0 && *cfg.q <= 1.0)) throw ConfigError("q must lie in [0, 1]");
  if (cfg.dim < 1) throw ConfigError("d must be at least 1");
  if (!(cfg.radius > 0.0)) throw ConfigError("R must be positive");
  if (cfg.set_radius && !(*cfg.set_radius > 0.0)) throw ConfigError("set radius must be positive");
  if (cfg.schedule != ScheduleRule::Theorem && !(cfg.gamma0 > 0.0)) {
    throw ConfigError("gamma0 must be positive");
  }
  switch (cfg.problem) {
    case Problem::Toy:
      if (cfg.p_values.empty()) throw ConfigError("toy: at least one p value is required");
      break;
    case Problem::LinReg:
      if (cfg.samples < cfg.dim) throw ConfigError("linreg: need N >= d");
      if (cfg.noise_sd && !(*cfg.noise_sd >= 0.0)) throw ConfigError("noise sd must be >= 0");
      break;
    case Problem::Logistic:
      if (cfg.p_values.empty()) throw ConfigError("logistic: at least one p value is required");
      if (cfg.classes < 1) throw ConfigError("logistic: m must be at least 1");
      if (cfg.samples < cfg.classes) throw ConfigError("logistic: need N >= m");
      if (!(cfg.lambda >= 0.0)) throw ConfigError("logistic: lambda must be >= 0");
      if (!(cfg.separation >= 0.0)) throw ConfigError("logistic: separation must be >= 0");
      if (cfg.schedule == ScheduleRule::Theorem) {
        throw ConfigError(
            "logistic: the theorem schedule needs a diameter and cos(phi), which an "
            "unconstrained logistic problem does not have; use inverse-t or const");
      }
      break;
  }
  const auto metrics = effective_metrics(cfg);
  for (Metric m : metrics) {
    if (m == Metric::Diverged) throw ConfigError("'diverged' is emitted automatically, not selectable");
    if (m == Metric::DistSqOpt && !has_optimum(cfg.problem)) {
      throw ConfigError("dist_sq_opt needs a known optimum, which this problem lacks");
    }
  }
  if (cfg.adversary == AdversaryRule::WorstCaseDirectional && !has_optimum(cfg.problem)) {
    throw ConfigError("worst-case adversary needs a known optimum, which this problem lacks");
  }
  if (cfg.adversary == AdversaryRule::ScaledOpposite && cfg.adversary_scale == 0.0) {
    throw ConfigError("scaled-opposite factor must be nonzero");
  }
}

std::size_t metric_cadence(std::size_t iterations) {
  constexpr std::size_t kMaxRecorded = 10000;
  return iterations <= kMaxRecorded ? 1 : (iterations + kMaxRecorded - 1) / kMaxRecorded;
}

std::uint64_t data_seed(std::uint64_t base_seed) { return derive_seed(base_seed, 0); }

std::uint64_t channel_seed(std::uint64_t base_seed, std::size_t p_index) {
  return derive_seed(base_seed, 1 + static_cast<std::uint64_t>(p_index));
}

std::string describe(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "experiment: " << to_string(cfg.experiment) << "\n";
  os << "problem: " << to_string(cfg.problem) << " d=" << cfg.dim;
  if (cfg.problem != Problem::Toy) os << " N=" << cfg.samples;
  if (cfg.problem == Problem::Logistic) {
    os << " m=" << cfg.classes << " lambda=" << cfg.lambda << " separation=" << cfg.separation;
  }
  os << " R=" << cfg.radius;
  if (cfg.problem == Problem::LinReg) {
    os << " set_radius=" << cfg.set_radius.value_or(cfg.radius)
       << " noise_sd=" << cfg.noise_sd.value_or(cfg.radius / 4.0);
  }
  os << "\n";
  os << "p: ";
  if (cfg.p_values.empty()) {
    os << "(1/2)/(1+kappa) per data seed";
  } else {
    for (std::size_t i = 0; i < cfg.p_values.size(); ++i) {
      os << (i ? "," : "") << shortest(cfg.p_values[i]);
    }
  }
  os << "\n";
  os << "schedule: ";
  switch (cfg.schedule) {
    case ScheduleRule::Theorem:
      os << "theorem (gamma/t, diameter of the feasible set as R";
      if (cfg.q) os << ", q=" << shortest(*cfg.q);
      else os << ", q=(3/4)*threshold";
      os << ")";
      break;
    case ScheduleRule::InverseT: os << shortest(cfg.gamma0) << "/t"; break;
    case ScheduleRule::Constant: os << "constant " << shortest(cfg.gamma0); break;
  }
  os << "\n";
  os << "adversary: ";
  switch (cfg.adversary) {
    case AdversaryRule::Default: os << "default for problem"; break;
    case AdversaryRule::WorstCaseDirectional: os << "worst-case directional (R/gamma_t scale)"; break;
    case AdversaryRule::ScaledOpposite: os << "scaled opposite, factor " << cfg.adversary_scale; break;
    case AdversaryRule::NegateIterate: os << "negate iterate, all-ones fallback"; break;
    case AdversaryRule::FixedVector: os << "fixed vector -" << cfg.adversary_scale << " * ones"; break;
  }
  os << "\n";
  os << "optimizers: ";
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    os << (i ? "," : "") << optimizers::to_string(cfg.methods[i]);
  }
  os << (cfg.hyper.project ? " (baselines projected)" : " (baselines unprojected)") << "\n";
  os << "T: " << cfg.iterations << " (metric cadence every " << metric_cadence(cfg.iterations)
     << " iterations)\n";
  os << "seeds: " << cfg.seeds.size() << " [";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) os << (i ? "," : "") << cfg.seeds[i];
  os << "]\n";
  os << "metrics: ";
  const auto metrics = effective_metrics(cfg);
  for (std::size_t i = 0; i < metrics.size(); ++i) os << (i ? "," : "") << to_string(metrics[i]);
  os << "\n";
  for (const auto& note : cfg.notes) os << "note: " << note << "\n";
  return os.str();
}

ExperimentResult run_experiment_detailed(const ExperimentConfig& cfg,
                                         const std::function<void()>& on_ready) {
  validate(cfg);
  const std::vector<Metric> metrics = effective_metrics(cfg);
  const std::size_t record_every = metric_cadence(cfg.iterations);

  std::vector<Instance> instances;
  instances.reserve(cfg.seeds.size());
  for (std::uint64_t seed : cfg.seeds) instances.push_back(build_instance(cfg, seed));

  // Resolve every (p, method, seed) run, including step sizes, up front.
  std::vector<RunPlan> plans;
  const std::size_t p_count = cfg.p_values.empty() ? 1 : cfg.p_values.size();
  for (std::size_t pi = 0; pi < p_count; ++pi) {
    const std::optional<double> p_config =
        cfg.p_values.empty() ? std::nullopt : std::optional<double>(cfg.p_values[pi]);
    const std::string run_id = make_run_id(cfg, p_config);
    for (std::size_t ii = 0; ii < instances.size(); ++ii) {
      const Instance& inst = instances[ii];
      double p = 0.0;
      if (p_config) {
        p = *p_config;
      } else if (inst.kappa) {
        p = 0.5 / (1.0 + *inst.kappa);
      } else {
        throw ConfigError("no p value given and no rule to derive one");
      }

      std::optional<double> q;
      std::optional<optimizers::StepSchedule> schedule;
      switch (cfg.schedule) {
        case ScheduleRule::Theorem: {
          if (!inst.cos_phi || !inst.diameter) {
            throw ConfigError("theorem schedule needs a diameter and cos(phi)");
          }
          const double thr = analysis::threshold_probability(*inst.cos_phi);
          q = std::max(cfg.q.value_or(0.75 * thr), p);
          if (cfg.q && *cfg.q < p) throw ConfigError("q must be at least p");
          if (*q >= thr) {
            throw ConfigError("theorem schedule: p=" + shortest(p) + " / q=" + shortest(*q) +
                              " is not below the threshold " + shortest(thr));
          }
          const double gamma = inst.kappa
                                   ? analysis::strongly_convex_gamma(*inst.diameter, *inst.kappa, *q)
                                   : analysis::theorem_gamma(*inst.diameter, *inst.cos_phi, *q);
          schedule = optimizers::StepSchedule::inverse_t(gamma);
          break;
        }
        case ScheduleRule::InverseT:
          schedule = optimizers::StepSchedule::inverse_t(cfg.gamma0);
          break;
        case ScheduleRule::Constant:
          schedule = optimizers::StepSchedule::constant(cfg.gamma0);
          break;
      }
      for (Method method : cfg.methods) {
        plans.push_back(RunPlan{ii, pi, p_config, p, q, method, *schedule,
                                channel_seed(inst.seed, pi), run_id});
      }
    }
  }

  if (on_ready) on_ready();

  std::vector<std::optional<RunInfo>> runs(plans.size());
  std::vector<std::vector<RunRecord>> per_run(plans.size());

  auto execute = [&](std::size_t k) {
    const RunPlan& plan = plans[k];
    const Instance& inst = instances[plan.instance];
    corruption::CorruptionChannel channel(plan.p, inst.adversary, plan.channel_seed);

    optimizers::MetricSelection selection{false, false, false, false};
    for (Metric m : metrics) {
      if (m == Metric::DistSqOpt) selection.dist_sq_opt = true;
      if (m == Metric::Objective) selection.objective = true;
      if (m == Metric::CorruptFlag) selection.corrupt_flag = true;
      if (m == Metric::GammaT) selection.gamma_t = true;
    }
    const optimizers::RunSpec spec{.objective = inst.objective,
                                   .set = inst.set,
                                   .method = plan.method,
                                   .hyper = cfg.hyper,
                                   .schedule = plan.schedule,
                                   .x1 = inst.x1,
                                   .iterations = cfg.iterations,
                                   .metrics = selection,
                                   .record_every = record_every,
                                   .adversary_radius = inst.adversary_radius,
                                   .on_step = {}};
    optimizers::Trajectory traj = optimizers::run(spec, channel);

    const std::string method(optimizers::to_string(plan.method));
    const auto seed = static_cast<std::int64_t>(inst.seed);
    auto& out = per_run[k];
    out.reserve(traj.records.size() * metrics.size() + 1);
    for (const auto& rec : traj.records) {
      for (Metric m : metrics) {
        double value = 0.0;
        switch (m) {
          case Metric::DistSqOpt: value = rec.dist_sq_opt.value_or(0.0); break;
          case Metric::Objective: value = rec.objective.value_or(0.0); break;
          case Metric::CorruptFlag: value = rec.corrupted ? 1.0 : 0.0; break;
          case Metric::GammaT: value = rec.gamma; break;
          case Metric::Diverged: continue;
        }
        out.push_back({plan.run_id, seed, method, rec.iter, m, value});
      }
    }
    if (traj.diverged_at) {
      out.push_back({plan.run_id, seed, method, *traj.diverged_at, Metric::Diverged, 1.0});
    }

    runs[k].emplace(RunInfo{plan.run_id,
                      inst.seed,
                      plan.method,
                      plan.p,
                      plan.q,
                      plan.schedule.gamma0(),
                      inst.cos_phi,
                      inst.kappa,
                      inst.diameter,
                      plan.channel_seed,
                      channel.draws_made(),
                      channel.corruptions_made(),
                      std::move(traj)});
  };

  std::size_t threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(plans.size(), 1));
  if (threads == 1) {
    for (std::size_t k = 0; k < plans.size(); ++k) execute(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < plans.size(); k = next++) {
          try {
            execute(k);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  ExperimentResult result{{}, {}, record_every};
  std::size_t total = 0;
  for (const auto& r : per_run) total += r.size();
  result.records.reserve(total);
  for (auto& r : per_run) {
    result.records.insert(result.records.end(), std::make_move_iterator(r.begin()),
                          std::make_move_iterator(r.end()));
  }
  sort_records(result.records);

  std::vector<std::size_t> order(runs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ka = std::make_tuple(runs[a]->run_id, optimizers::to_string(runs[a]->method), runs[a]->seed);
    const auto kb = std::make_tuple(runs[b]->run_id, optimizers::to_string(runs[b]->method), runs[b]->seed);
    return ka < kb;
  });
  result.runs.reserve(runs.size());
  for (std::size_t i : order) result.runs.push_back(std::move(*runs[i]));
  return result;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
  return run_experiment_detailed(cfg).records;
}

std::string describe_runs(const ExperimentResult& result) {
  std::ostringstream os;
  os.precision(6);
  for (const auto& r : result.runs) {
    os << r.run_id << " " << optimizers::to_string(r.method) << " seed=" << r.seed
       << " p=" << r.p;
    if (r.q) os << " q=" << *r.q;
    os << " gamma0=" << r.gamma0;
    if (r.kappa) os << " kappa=" << *r.kappa;
    os << " corrupted=" << r.corruptions << "/" << r.draws;
    if (r.trajectory.diverged_at) {
      os << " diverged@" << *r.trajectory.diverged_at << " (" << r.trajectory.divergence_reason
         << ")";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace nsm::harness
