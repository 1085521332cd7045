#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsm/corruption.hpp"
#include "nsm/feasible_set.hpp"
#include "nsm/problems.hpp"
#include "nsm/vector.hpp"

namespace nsm::optimizers {

enum class Method { NSM, GD, NAG, Adam, RMSprop, AMSGrad };

std::string_view to_string(Method method) noexcept;
/// Accepts the lowercase names printed by to_string ("nsm", "gd", ...).
Method parse_method(std::string_view name);

/// gamma_t = gamma0 / t (t counted from 1) or a constant.
class StepSchedule {
 public:
  enum class Kind { InverseT, Constant };

  static StepSchedule inverse_t(double gamma0);
  static StepSchedule constant(double gamma);

  double at(std::size_t t) const;
  Kind kind() const noexcept { return kind_; }
  double gamma0() const noexcept { return gamma0_; }
  std::string describe() const;

 private:
  StepSchedule(Kind kind, double gamma0) : kind_(kind), gamma0_(gamma0) {}
  Kind kind_;
  double gamma0_;
};

/// Baseline hyperparameters. Defaults are the customary ones.
struct BaselineHyper {
  double beta1 = 0.9;       // Adam / AMSGrad first moment
  double beta2 = 0.999;     // Adam / AMSGrad second moment
  double epsilon = 1e-8;    // Adam / AMSGrad / RMSprop
  double rms_decay = 0.9;   // RMSprop second moment
  double momentum = 0.9;    // NAG
  bool project = true;      // project baselines onto the feasible set
};

/// Iterate plus method-specific accumulators. Accumulator vectors are empty
/// for methods that do not use them and sized like x otherwise.
struct OptimizerState {
  static OptimizerState init(Method method, RealVector x);

  Method method;
  RealVector x;
  std::size_t t = 1;
  std::vector<double> velocity;           // NAG
  std::vector<double> first_moment;       // Adam, AMSGrad
  std::vector<double> second_moment;      // Adam, AMSGrad, RMSprop
  std::vector<double> max_second_moment;  // AMSGrad
};

/// One projected normalized step: x_t unchanged if h_t is (numerically)
/// zero, else project(x_t - gamma_t h_t / ||h_t||).
RealVector nsm_step(const RealVector& x, const RealVector& h, double gamma, const FeasibleSet& set,
                    double zero_tol = kDefaultZeroTol);

/// One step of a non-normalized baseline. Throws NonFiniteError when the
/// update overflows; ConfigError for Method::NSM.
OptimizerState baseline_step(OptimizerState state, const RealVector& h, double gamma,
                             const FeasibleSet& set, const BaselineHyper& hyper);

struct MetricSelection {
  bool dist_sq_opt = true;
  bool objective = true;
  bool corrupt_flag = true;
  bool gamma_t = true;
};

/// Metrics for iterate x_iter. `corrupted` and `gamma` describe the step
/// that produced x_iter, so the record for iter = 1 carries false and 0.
struct IterationRecord {
  std::size_t iter;
  std::optional<double> dist_sq_opt;
  std::optional<double> objective;
  bool corrupted;
  double gamma;
};

struct Trajectory {
  std::vector<IterationRecord> records;
  RealVector final_x;
  /// Index of the first iterate that could not be formed (non-finite).
  std::optional<std::size_t> diverged_at;
  std::string divergence_reason;
};

/// Everything a step observer sees; pre_projection is x_t - gamma_t h_t/||h_t||
/// for NSM steps with non-zero feedback.
struct StepEvent {
  std::size_t t;
  const RealVector& x;
  const RealVector& h;
  bool corrupted;
  double gamma;
  const RealVector& next_x;
  std::optional<RealVector> pre_projection;
};

struct RunSpec {
  const problems::Objective& objective;
  const FeasibleSet& set;
  Method method = Method::NSM;
  BaselineHyper hyper{};
  StepSchedule schedule = StepSchedule::inverse_t(1.0);
  RealVector x1;
  std::size_t iterations = 1;
  MetricSelection metrics{};
  /// Record every k-th iterate (plus the final one). 1 records everything.
  std::size_t record_every = 1;
  /// Scale R handed to adversaries that need it.
  std::optional<double> adversary_radius;
  std::function<void(const StepEvent&)> on_step;
};

/// Runs iterations t = 1..T. x1 is projected onto the set first. Returns
/// T+1 records (fewer when record_every > 1) unless the run diverges, in
/// which case the trajectory stops at the first non-finite iterate.
Trajectory run(const RunSpec& spec, corruption::CorruptionChannel& channel);

}  // namespace nsm::optimizers
