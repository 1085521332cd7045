#include "nsm/optimizers.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "nsm/error.hpp"

namespace nsm::optimizers {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 6> kMethodNames{{
    {Method::NSM, "nsm"},
    {Method::GD, "gd"},
    {Method::NAG, "nag"},
    {Method::Adam, "adam"},
    {Method::RMSprop, "rmsprop"},
    {Method::AMSGrad, "amsgrad"},
}};

RealVector finite_or_throw(std::vector<double> x, Method method, std::size_t t) {
  if (!all_finite(x)) {
    std::ostringstream os;
    os << to_string(method) << ": non-finite iterate at step " << t;
    throw NonFiniteError(os.str());
  }
  return RealVector(std::move(x));
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (const auto& [m, n] : kMethodNames) {
    if (n == name) return m;
  }
  throw ConfigError("unknown optimizer '" + std::string(name) +
                    "' (expected nsm, gd, nag, adam, rmsprop or amsgrad)");
}

StepSchedule StepSchedule::inverse_t(double gamma0) {
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
    throw ConfigError("StepSchedule: gamma0 must be positive and finite");
  }
  return StepSchedule(Kind::InverseT, gamma0);
}

StepSchedule StepSchedule::constant(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ConfigError("StepSchedule: gamma must be positive and finite");
  }
  return StepSchedule(Kind::Constant, gamma);
}

double StepSchedule::at(std::size_t t) const {
  if (t == 0) throw ConfigError("StepSchedule: iterations are counted from 1");
  return kind_ == Kind::InverseT ? gamma0_ / static_cast<double>(t) : gamma0_;
}

std::string StepSchedule::describe() const {
  std::ostringstream os;
  os.precision(10);
  if (kind_ == Kind::InverseT) {
    os << gamma0_ << "/t";
  } else {
    os << "constant " << gamma0_;
  }
  return os.str();
}

OptimizerState OptimizerState::init(Method method, RealVector x) {
  OptimizerState s{method, std::move(x), 1, {}, {}, {}, {}};
  const std::size_t d = s.x.dim();
  switch (method) {
    case Method::NAG:
      s.velocity.assign(d, 0.0);
      break;
    case Method::Adam:
      s.first_moment.assign(d, 0.0);
      s.second_moment.assign(d, 0.0);
      break;
    case Method::AMSGrad:
      s.first_moment.assign(d, 0.0);
      s.second_moment.assign(d, 0.0);
      s.max_second_moment.assign(d, 0.0);
      break;
    case Method::RMSprop:
      s.second_moment.assign(d, 0.0);
      break;
    case Method::NSM:
    case Method::GD:
      break;
  }
  return s;
}

RealVector nsm_step(const RealVector& x, const RealVector& h, double gamma, const FeasibleSet& set,
                    double zero_tol) {
  require_same_dim(x.dim(), h.dim(), "nsm_step");
  if (!(gamma > 0.0)) throw ConfigError("nsm_step: gamma_t must be positive");
  const Direction dir = normalize(h, zero_tol);
  if (dir.is_zero) return x;
  return set.project(x - gamma * dir.direction);
}

OptimizerState baseline_step(OptimizerState state, const RealVector& h, double gamma,
                             const FeasibleSet& set, const BaselineHyper& hyper) {
  require_same_dim(state.x.dim(), h.dim(), "baseline_step");
  if (!(gamma > 0.0)) throw ConfigError("baseline_step: gamma_t must be positive");

  const std::size_t d = h.dim();
  const double t = static_cast<double>(state.t);
  std::vector<double> x = state.x.to_std();

  switch (state.method) {
    case Method::NSM:
      throw ConfigError("baseline_step: NSM is not a baseline; use nsm_step");
    case Method::GD:
      for (std::size_t i = 0; i < d; ++i) x[i] -= gamma * h[i];
      break;
    case Method::NAG:
      // Nesterov momentum with the gradient taken at the current iterate:
      // v <- mu v + h, x <- x - gamma (h + mu v).
      for (std::size_t i = 0; i < d; ++i) {
        state.velocity[i] = hyper.momentum * state.velocity[i] + h[i];
        x[i] -= gamma * (h[i] + hyper.momentum * state.velocity[i]);
      }
      break;
    case Method::Adam:
    case Method::AMSGrad: {
      const bool ams = state.method == Method::AMSGrad;
      const double c1 = 1.0 - std::pow(hyper.beta1, t);
      const double c2 = 1.0 - std::pow(hyper.beta2, t);
      for (std::size_t i = 0; i < d; ++i) {
        state.first_moment[i] = hyper.beta1 * state.first_moment[i] + (1.0 - hyper.beta1) * h[i];
        state.second_moment[i] =
            hyper.beta2 * state.second_moment[i] + (1.0 - hyper.beta2) * h[i] * h[i];
        double second = state.second_moment[i];
        if (ams) {
          state.max_second_moment[i] = std::max(state.max_second_moment[i], second);
          second = state.max_second_moment[i];
        }
        const double m_hat = state.first_moment[i] / c1;
        const double v_hat = second / c2;
        x[i] -= gamma * m_hat / (std::sqrt(v_hat) + hyper.epsilon);
      }
      break;
    }
    case Method::RMSprop:
      for (std::size_t i = 0; i < d; ++i) {
        state.second_moment[i] =
            hyper.rms_decay * state.second_moment[i] + (1.0 - hyper.rms_decay) * h[i] * h[i];
        x[i] -= gamma * h[i] / (std::sqrt(state.second_moment[i]) + hyper.epsilon);
      }
      break;
  }

  RealVector next = finite_or_throw(std::move(x), state.method, state.t);
  state.x = hyper.project ? set.project(next) : std::move(next);
  ++state.t;
  return state;
}

Trajectory run(const RunSpec& spec, corruption::CorruptionChannel& channel) {
  if (spec.iterations == 0) throw ConfigError("run: T must be at least 1");
  if (spec.record_every == 0) throw ConfigError("run: record_every must be at least 1");
  require_same_dim(spec.objective.dim(), spec.set.dim(), "run objective/set");
  require_same_dim(spec.x1.dim(), spec.set.dim(), "run x1");

  const RealVector* optimum = spec.objective.optimum() ? &*spec.objective.optimum() : nullptr;
  const std::size_t last_iter = spec.iterations + 1;

  Trajectory traj{{}, spec.set.project(spec.x1), std::nullopt, {}};
  OptimizerState state = OptimizerState::init(spec.method, traj.final_x);

  // Returns false when a requested metric is not finite.
  auto record = [&](std::size_t iter, const RealVector& x, bool corrupted, double gamma) {
    const bool due = iter == 1 || iter == last_iter || (iter - 1) % spec.record_every == 0;
    if (!due) return true;
    IterationRecord rec{iter, std::nullopt, std::nullopt, corrupted, gamma};
    if (spec.metrics.dist_sq_opt && optimum != nullptr) {
      rec.dist_sq_opt = distance_sq(x, *optimum);
      if (!std::isfinite(*rec.dist_sq_opt)) return false;
    }
    if (spec.metrics.objective) {
      rec.objective = spec.objective.value(x);
      if (!std::isfinite(*rec.objective)) return false;
    }
    traj.records.push_back(rec);
    return true;
  };

  if (!record(1, traj.final_x, false, 0.0)) {
    traj.diverged_at = 1;
    traj.divergence_reason = "non-finite metric at the initial iterate";
    return traj;
  }

  for (std::size_t t = 1; t <= spec.iterations; ++t) {
    const RealVector& x = traj.final_x;
    const double gamma = spec.schedule.at(t);
    try {
      const RealVector g = spec.objective.subgradient(x);
      const corruption::Feedback fb =
          channel.next({x, g, gamma, optimum, spec.adversary_radius});

      std::optional<RealVector> pre_projection;
      RealVector next = x;
      if (spec.method == Method::NSM) {
        const Direction dir = normalize(fb.h);
        if (!dir.is_zero) {
          pre_projection = x - gamma * dir.direction;
          next = spec.set.project(*pre_projection);
        }
      } else {
        state = baseline_step(std::move(state), fb.h, gamma, spec.set, spec.hyper);
        next = state.x;
      }

      if (spec.on_step) {
        spec.on_step(StepEvent{t, x, fb.h, fb.corrupted, gamma, next, pre_projection});
      }
      traj.final_x = std::move(next);
      if (!record(t + 1, traj.final_x, fb.corrupted, gamma)) {
        traj.diverged_at = t + 1;
        traj.divergence_reason = "non-finite metric at iterate " + std::to_string(t + 1);
        return traj;
      }
    } catch (const NonFiniteError& e) {
      traj.diverged_at = t + 1;
      traj.divergence_reason = e.what();
      return traj;
    }
  }
  return traj;
}

}  // namespace nsm::optimizers
