#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nsm/error.hpp"
#include "nsm/harness/experiment.hpp"
#include "nsm/harness/records.hpp"
#include "nsm/harness/verify.hpp"

namespace nsm::cli {
namespace {

using harness::ExperimentConfig;

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

template <class T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string("invalid ") + what + " '" + text + "'");
  }
  return value;
}

std::vector<double> parse_reals(const std::string& text, const char* what) {
  std::vector<double> values;
  for (const auto& part : split(text)) {
    if (part.empty()) throw ConfigError(std::string("empty entry in ") + what + " list");
    values.push_back(parse_number<double>(part, what));
  }
  return values;
}

// "N" means base seeds 1..N; a comma list (or a single value with a trailing
// comma) names the seeds explicitly.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  if (text.find(',') == std::string::npos) {
    const auto count = parse_number<std::uint64_t>(text, "seed count");
    if (count == 0) throw ConfigError("--seeds must be at least 1");
    std::vector<std::uint64_t> seeds(count);
    for (std::uint64_t i = 0; i < count; ++i) seeds[i] = i + 1;
    return seeds;
  }
  std::vector<std::uint64_t> seeds;
  for (const auto& part : split(text)) {
    if (part.empty()) continue;
    seeds.push_back(parse_number<std::uint64_t>(part, "seed"));
  }
  return seeds;
}

struct Options {
  std::optional<std::string> p;
  std::optional<double> q;
  std::optional<std::size_t> iterations;
  std::optional<std::string> seeds;
  std::optional<double> gamma0;
  std::optional<std::string> schedule;
  std::optional<std::string> adversary;
  std::optional<double> adversary_scale;
  std::optional<std::string> optimizers;
  std::optional<std::string> out;
  std::string aggregate = "none";
  std::optional<std::string> metrics;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> classes;
  std::optional<double> radius;
  std::optional<double> set_radius;
  std::optional<double> lambda;
  std::optional<double> separation;
  std::optional<double> noise_sd;
  std::optional<double> x1;
  std::optional<double> beta1;
  std::optional<double> beta2;
  std::optional<double> eps;
  std::optional<double> rms_decay;
  std::optional<double> momentum;
  bool no_project_baselines = false;
  bool full_scale = false;
  bool quiet = false;
  bool summary = false;
  std::size_t threads = 0;
  std::string problem = "toy";
  std::uint64_t verify_seed = 1;
};

void add_run_options(CLI::App& app, Options& o) {
  app.add_option("--p", o.p, "corruption probabilities, comma separated");
  app.add_option("--q", o.q, "design probability for the theorem step size");
  app.add_option("--T", o.iterations, "iterations")->check(CLI::PositiveNumber);
  app.add_option("--seeds", o.seeds, "seed count N (seeds 1..N) or comma list");
  app.add_option("--gamma0", o.gamma0, "step-size constant for inverse-t / const");
  app.add_option("--schedule", o.schedule, "theorem, inverse-t or const")
      ->check(CLI::IsMember({"theorem", "inverse-t", "const"}));
  app.add_option("--adversary", o.adversary,
                 "default, worst-case, scaled-opposite, negate-iterate or fixed")
      ->check(CLI::IsMember({"default", "worst-case", "scaled-opposite", "negate-iterate", "fixed"}));
  app.add_option("--adversary-scale", o.adversary_scale,
                 "factor c for scaled-opposite (-c g) and fixed (-c ones)");
  app.add_option("--optimizers", o.optimizers, "nsm,gd,nag,adam,rmsprop,amsgrad");
  app.add_option("--out", o.out, "CSV path (stdout when omitted)");
  app.add_option("--aggregate", o.aggregate, "none, mean, median or last")
      ->check(CLI::IsMember({"none", "mean", "median", "last"}));
  app.add_option("--metrics", o.metrics, "dist_sq_opt,objective,corrupt_flag,gamma_t");
  app.add_option("--d", o.dim, "dimension (features per sample for logistic)");
  app.add_option("--N", o.samples, "samples");
  app.add_option("--m", o.classes, "classes");
  app.add_option("--R", o.radius, "radius R");
  app.add_option("--set-radius", o.set_radius, "linreg feasible ball radius");
  app.add_option("--lambda", o.lambda, "logistic L2 weight");
  app.add_option("--separation", o.separation, "logistic class-mean separation");
  app.add_option("--noise-sd", o.noise_sd, "linreg noise standard deviation");
  app.add_option("--x1", o.x1, "initial point x1 = value * ones");
  app.add_option("--beta1", o.beta1, "Adam/AMSGrad first-moment decay");
  app.add_option("--beta2", o.beta2, "Adam/AMSGrad second-moment decay");
  app.add_option("--eps", o.eps, "Adam/AMSGrad/RMSprop epsilon");
  app.add_option("--rms-decay", o.rms_decay, "RMSprop decay");
  app.add_option("--momentum", o.momentum, "NAG momentum");
  app.add_flag("--no-project-baselines", o.no_project_baselines,
               "let baselines leave the feasible set");
  app.add_option("--threads", o.threads, "worker threads (0 = hardware)");
  app.add_flag("--quiet", o.quiet, "no config echo");
  app.add_flag("--summary", o.summary, "per-run summary on stderr");
}

void apply(const Options& o, ExperimentConfig& cfg) {
  if (o.dim) cfg.dim = *o.dim;
  if (o.samples) cfg.samples = *o.samples;
  if (o.classes) cfg.classes = *o.classes;
  if (o.radius) cfg.radius = *o.radius;
  if (o.set_radius) cfg.set_radius = *o.set_radius;
  if (o.lambda) cfg.lambda = *o.lambda;
  if (o.separation) cfg.separation = *o.separation;
  if (o.noise_sd) cfg.noise_sd = *o.noise_sd;
  if (o.x1) cfg.x1_value = *o.x1;
  if (o.p) {
    cfg.p_values = (*o.p == "auto") ? std::vector<double>{} : parse_reals(*o.p, "p");
  } else if (cfg.problem == harness::Problem::Toy && o.dim) {
    cfg.p_values = harness::toy_p_sweep(cfg.dim);
  }
  if (o.q) cfg.q = *o.q;
  if (o.iterations) cfg.iterations = *o.iterations;
  if (o.seeds) cfg.seeds = parse_seeds(*o.seeds);
  if (o.schedule) cfg.schedule = harness::parse_schedule(*o.schedule);
  if (o.gamma0) {
    cfg.gamma0 = *o.gamma0;
    if (!o.schedule && cfg.schedule == harness::ScheduleRule::Theorem) {
      cfg.schedule = harness::ScheduleRule::InverseT;
    }
  }
  if (o.adversary) cfg.adversary = harness::parse_adversary(*o.adversary);
  if (o.adversary_scale) cfg.adversary_scale = *o.adversary_scale;
  if (o.optimizers) {
    cfg.methods.clear();
    for (const auto& name : split(*o.optimizers)) {
      cfg.methods.push_back(optimizers::parse_method(name));
    }
  }
  if (o.metrics) {
    cfg.metrics.clear();
    for (const auto& name : split(*o.metrics)) cfg.metrics.push_back(harness::parse_metric(name));
  }
  if (o.beta1) cfg.hyper.beta1 = *o.beta1;
  if (o.beta2) cfg.hyper.beta2 = *o.beta2;
  if (o.eps) cfg.hyper.epsilon = *o.eps;
  if (o.rms_decay) cfg.hyper.rms_decay = *o.rms_decay;
  if (o.momentum) cfg.hyper.momentum = *o.momentum;
  if (o.no_project_baselines) cfg.hyper.project = false;
  cfg.threads = o.threads;
}

ExperimentConfig preset_for(harness::Problem problem, bool full_scale) {
  switch (problem) {
    case harness::Problem::Toy: return harness::toy_preset();
    case harness::Problem::LinReg: return harness::linreg_preset(full_scale);
    case harness::Problem::Logistic: return harness::logistic_preset();
  }
  throw ConfigError("unknown problem");
}

int execute(ExperimentConfig cfg, const Options& o, std::ostream& out, std::ostream& err) {
  apply(o, cfg);
  harness::validate(cfg);
  auto result = harness::run_experiment_detailed(cfg, [&] {
    if (!o.quiet) err << harness::describe(cfg) << std::flush;
  });
  if (o.summary) err << harness::describe_runs(result);
  std::vector<harness::RunRecord> records = std::move(result.records);
  if (o.aggregate != "none") {
    records = harness::aggregate(records, harness::parse_statistic(o.aggregate));
  }
  if (o.out) {
    harness::write_csv(records, *o.out);
    if (!o.quiet) err << "wrote " << records.size() << " rows to " << *o.out << "\n";
  } else {
    out << harness::to_csv(records);
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normalized subgradient method under corrupted feedback"};
  app.require_subcommand(1);
  Options o;

  auto* toy = app.add_subcommand("toy", "d-dimensional quartic on the box diagonal");
  add_run_options(*toy, o);
  auto* linreg = app.add_subcommand("linreg", "ball-constrained least squares");
  add_run_options(*linreg, o);
  linreg->add_flag("--full-scale", o.full_scale, "d = 100, N = 1000");
  auto* logistic = app.add_subcommand("logistic", "softmax regression on synthetic classes");
  add_run_options(*logistic, o);
  auto* custom = app.add_subcommand("custom", "any problem with every setting overridable");
  add_run_options(*custom, o);
  custom->add_option("--problem", o.problem, "toy, linreg or logistic")
      ->check(CLI::IsMember({"toy", "linreg", "logistic"}));
  custom->add_flag("--full-scale", o.full_scale, "linreg defaults d = 100, N = 1000");
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--seed", o.verify_seed, "seed for the random cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out;
    std::ostringstream help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code;
  }

  try {
    if (*verify) {
      bool all = true;
      for (const auto& suite : harness::run_verify_suites(o.verify_seed)) {
        out << (suite.passed ? "PASS " : "FAIL ") << suite.name << ": " << suite.detail << "\n";
        all = all && suite.passed;
      }
      return all ? 0 : 1;
    }
    if (*toy) return execute(harness::toy_preset(), o, out, err);
    if (*linreg) return execute(harness::linreg_preset(o.full_scale), o, out, err);
    if (*logistic) return execute(harness::logistic_preset(), o, out, err);
    ExperimentConfig cfg = preset_for(harness::parse_problem(o.problem), o.full_scale);
    cfg.experiment = harness::Experiment::Custom;
    return execute(std::move(cfg), o, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace nsm::cli
