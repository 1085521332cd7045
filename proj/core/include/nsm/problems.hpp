#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nsm/matrix.hpp"
#include "nsm/rng.hpp"
#include "nsm/vector.hpp"

namespace nsm::problems {

/// Value and subgradient oracle for one problem instance.
///
/// Immutable once built; copies share the underlying data. `optimum`, when
/// present, is the minimizer used for distance metrics and by adversaries
/// that need to know where the solution is.
class Objective {
 public:
  using ValueFn = std::function<double(const RealVector&)>;
  using SubgradientFn = std::function<RealVector(const RealVector&)>;

  Objective(std::string name, std::size_t dim, ValueFn value, SubgradientFn subgradient,
            std::optional<RealVector> optimum = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::optional<RealVector>& optimum() const noexcept { return optimum_; }

  double value(const RealVector& x) const;
  RealVector subgradient(const RealVector& x) const;

  /// Same oracle with a different known minimizer.
  Objective with_optimum(RealVector optimum) const;

 private:
  std::string name_;
  std::size_t dim_;
  ValueFn value_;
  SubgradientFn subgradient_;
  std::optional<RealVector> optimum_;
};

/// Linear-regression data y = A w + noise.
class LinRegData {
 public:
  /// Throws ConfigError unless N >= d and sigma_min(A) > 1e-10.
  LinRegData(Matrix design, std::vector<double> targets,
             std::optional<RealVector> w_true = std::nullopt, double noise_sd = 0.0);

  const Matrix& design() const noexcept { return design_; }
  const std::vector<double>& targets() const noexcept { return targets_; }
  const std::optional<RealVector>& w_true() const noexcept { return w_true_; }
  double noise_sd() const noexcept { return noise_sd_; }
  std::size_t samples() const noexcept { return design_.rows(); }
  std::size_t dim() const noexcept { return design_.cols(); }

 private:
  Matrix design_;
  std::vector<double> targets_;
  std::optional<RealVector> w_true_;
  double noise_sd_;
};

/// Labelled features for m-class softmax regression with L2 weight lambda.
class ClassData {
 public:
  /// Throws ConfigError if a label is out of range or a class is empty.
  ClassData(Matrix features, std::vector<std::size_t> labels, std::size_t classes, double lambda);

  const Matrix& features() const noexcept { return features_; }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }
  std::size_t classes() const noexcept { return classes_; }
  double lambda() const noexcept { return lambda_; }
  std::size_t samples() const noexcept { return features_.rows(); }
  std::size_t feature_dim() const noexcept { return features_.cols(); }
  /// Length of the flattened decision variable, classes * feature_dim.
  std::size_t param_dim() const noexcept { return classes_ * features_.cols(); }

 private:
  Matrix features_;
  std::vector<std::size_t> labels_;
  std::size_t classes_;
  double lambda_;
};

/// f(x) = x_{d-1}^4 with gradient (0, ..., 0, 4 x_{d-1}^3); minimizer at 0.
/// Meant to be paired with FeasibleSet::diag_box.
Objective toy_objective(std::size_t d);

/// f(x) = ||y - A x||^2, gradient 2 A^T (A x - y). Optimum from the normal
/// equations.
Objective least_squares_objective(const LinRegData& data);

/// Mean softmax cross-entropy plus lambda ||x||^2 over the flattened
/// (class-major) weight matrix. No known optimum.
Objective logistic_objective(const ClassData& data);

/// Solves (A^T A) x = A^T y by Cholesky and checks the residual
/// ||A^T A x - A^T y|| <= 1e-8 ||A^T y||.
RealVector least_squares_optimum(const LinRegData& data);

/// argmin ||y - A x||^2 subject to ||x - center|| <= radius. Equals
/// least_squares_optimum when that point is feasible; otherwise the
/// Lagrange multiplier of the ball constraint is found by bisection.
RealVector ball_constrained_least_squares(const LinRegData& data, const RealVector& center,
                                          double radius);

/// Strong-convexity and smoothness constants of ||y - A x||^2:
/// mu = 2 sigma_min(A)^2, beta = 2 sigma_max(A)^2.
struct HessianConstants {
  double mu;
  double beta;
};
HessianConstants hessian_constants(const Matrix& a);

/// Gaussian design, w_true uniform in the radius-R ball, Gaussian noise.
LinRegData synth_linreg(std::size_t d, std::size_t n, double radius, double noise_sd, Rng& rng);

/// Gaussian clusters around m well-separated means, labels assigned
/// round-robin. Means are separation times orthonormal directions when
/// m <= d, otherwise separation times independent random unit vectors.
ClassData synth_classes(std::size_t d, std::size_t n, std::size_t classes, double separation,
                        double lambda, Rng& rng);

}  // namespace nsm::problems
