#include "nsm/problems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsm/error.hpp"
#include "nsm/linalg.hpp"

namespace nsm::problems {

Objective::Objective(std::string name, std::size_t dim, ValueFn value, SubgradientFn subgradient,
                     std::optional<RealVector> optimum)
    : name_(std::move(name)),
      dim_(dim),
      value_(std::move(value)),
      subgradient_(std::move(subgradient)),
      optimum_(std::move(optimum)) {
  if (dim_ == 0) throw DimensionError("Objective: dimension must be at least 1");
  if (optimum_) require_same_dim(optimum_->dim(), dim_, "Objective optimum");
}

double Objective::value(const RealVector& x) const {
  require_same_dim(x.dim(), dim_, name_ + " value");
  return value_(x);
}

RealVector Objective::subgradient(const RealVector& x) const {
  require_same_dim(x.dim(), dim_, name_ + " subgradient");
  return subgradient_(x);
}

Objective Objective::with_optimum(RealVector optimum) const {
  return Objective(name_, dim_, value_, subgradient_, std::move(optimum));
}

LinRegData::LinRegData(Matrix design, std::vector<double> targets,
                       std::optional<RealVector> w_true, double noise_sd)
    : design_(std::move(design)),
      targets_(std::move(targets)),
      w_true_(std::move(w_true)),
      noise_sd_(noise_sd) {
  if (design_.cols() == 0) throw ConfigError("LinRegData: design matrix has no columns");
  if (design_.rows() < design_.cols()) {
    throw ConfigError("LinRegData: need N >= d (N=" + std::to_string(design_.rows()) +
                      ", d=" + std::to_string(design_.cols()) + ")");
  }
  require_same_dim(targets_.size(), design_.rows(), "LinRegData targets");
  if (w_true_) require_same_dim(w_true_->dim(), design_.cols(), "LinRegData w_true");
  if (!(noise_sd_ >= 0.0)) throw ConfigError("LinRegData: noise_sd must be nonnegative");
  if (!all_finite(design_.data()) || !all_finite(targets_)) {
    throw NonFiniteError("LinRegData: non-finite data");
  }
  double sigma_min = 0.0;
  try {
    sigma_min = singular_value_extremes(design_).sigma_min;
  } catch (const NumericalError& e) {
    throw ConfigError(std::string("LinRegData: design is not full column rank: ") + e.what());
  }
  if (!(sigma_min > 1e-10)) {
    std::ostringstream os;
    os << "LinRegData: design is not full column rank (sigma_min=" << sigma_min << ")";
    throw ConfigError(os.str());
  }
}

ClassData::ClassData(Matrix features, std::vector<std::size_t> labels, std::size_t classes,
                     double lambda)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      classes_(classes),
      lambda_(lambda) {
  if (classes_ < 1) throw ConfigError("ClassData: need at least one class");
  if (features_.cols() == 0 || features_.rows() == 0) throw ConfigError("ClassData: empty features");
  require_same_dim(labels_.size(), features_.rows(), "ClassData labels");
  if (!(lambda_ >= 0.0)) throw ConfigError("ClassData: lambda must be nonnegative");
  std::vector<std::size_t> counts(classes_, 0);
  for (std::size_t label : labels_) {
    if (label >= classes_) {
      throw ConfigError("ClassData: label " + std::to_string(label) + " out of range");
    }
    ++counts[label];
  }
  for (std::size_t j = 0; j < classes_; ++j) {
    if (counts[j] == 0) throw ConfigError("ClassData: class " + std::to_string(j) + " is empty");
  }
  if (!all_finite(features_.data())) throw NonFiniteError("ClassData: non-finite features");
}

Objective toy_objective(std::size_t d) {
  if (d == 0) throw DimensionError("toy_objective: d must be at least 1");
  auto value = [](const RealVector& x) {
    const double s = x[x.dim() - 1];
    return (s * s) * (s * s);
  };
  auto subgradient = [](const RealVector& x) {
    const double s = x[x.dim() - 1];
    return RealVector::basis(x.dim(), x.dim() - 1, 4.0 * s * s * s);
  };
  return Objective("toy", d, value, subgradient, RealVector::zeros(d));
}

namespace {

struct LeastSquaresCache {
  Matrix design;
  std::vector<double> targets;
  Matrix gram;
  std::vector<double> at_y;
};

}  // namespace

Objective least_squares_objective(const LinRegData& data) {
  auto cache = std::make_shared<const LeastSquaresCache>(
      LeastSquaresCache{data.design(), data.targets(), data.design().gram(),
                        data.design().multiply_transposed(data.targets())});

  auto value = [cache](const RealVector& x) {
    const std::vector<double> ax = cache->design.multiply(x.entries());
    double sum = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i) {
      const double r = cache->targets[i] - ax[i];
      sum += r * r;
    }
    return sum;
  };
  auto subgradient = [cache](const RealVector& x) {
    std::vector<double> g = cache->gram.multiply(x.entries());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = 2.0 * (g[i] - cache->at_y[i]);
    return RealVector(std::move(g));
  };
  return Objective("least-squares", data.dim(), value, subgradient, least_squares_optimum(data));
}

Objective logistic_objective(const ClassData& data) {
  auto shared = std::make_shared<const ClassData>(data);
  const std::size_t dim = data.param_dim();

  // Per-sample class scores z_ij = x_j . A_i.
  auto scores = [](const ClassData& cd, const RealVector& x, std::size_t i,
                   std::vector<double>& z) {
    const std::size_t d = cd.feature_dim();
    const auto row = cd.features().row(i);
    for (std::size_t j = 0; j < cd.classes(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += x[j * d + k] * row[k];
      z[j] = s;
    }
  };

  auto value = [shared, scores](const RealVector& x) {
    const ClassData& cd = *shared;
    std::vector<double> z(cd.classes());
    double loss = 0.0;
    for (std::size_t i = 0; i < cd.samples(); ++i) {
      scores(cd, x, i, z);
      const double zmax = *std::max_element(z.begin(), z.end());
      double sum = 0.0;
      for (double zj : z) sum += std::exp(zj - zmax);
      loss += zmax + std::log(sum) - z[cd.labels()[i]];
    }
    return loss / static_cast<double>(cd.samples()) + cd.lambda() * norm_sq(x);
  };

  auto subgradient = [shared, scores](const RealVector& x) {
    const ClassData& cd = *shared;
    const std::size_t d = cd.feature_dim();
    const double inv_n = 1.0 / static_cast<double>(cd.samples());
    std::vector<double> g(x.dim(), 0.0);
    std::vector<double> z(cd.classes());
    for (std::size_t i = 0; i < cd.samples(); ++i) {
      scores(cd, x, i, z);
      const double zmax = *std::max_element(z.begin(), z.end());
      double sum = 0.0;
      for (double& zj : z) {
        zj = std::exp(zj - zmax);
        sum += zj;
      }
      const auto row = cd.features().row(i);
      for (std::size_t j = 0; j < cd.classes(); ++j) {
        const double coeff = (z[j] / sum - (j == cd.labels()[i] ? 1.0 : 0.0)) * inv_n;
        for (std::size_t k = 0; k < d; ++k) g[j * d + k] += coeff * row[k];
      }
    }
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += 2.0 * cd.lambda() * x[k];
    return RealVector(std::move(g));
  };

  return Objective("logistic", dim, value, subgradient);
}

RealVector least_squares_optimum(const LinRegData& data) {
  const Matrix gram = data.design().gram();
  const std::vector<double> rhs = data.design().multiply_transposed(data.targets());
  const Cholesky chol = Cholesky::factor(gram);
  std::vector<double> x = chol.solve(rhs);

  const std::vector<double> gx = gram.multiply(x);
  double res = 0.0;
  double rhs_norm = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    res += (gx[i] - rhs[i]) * (gx[i] - rhs[i]);
    rhs_norm += rhs[i] * rhs[i];
  }
  if (std::sqrt(res) > 1e-8 * std::sqrt(rhs_norm)) {
    std::ostringstream os;
    os << "least_squares_optimum: normal-equation residual " << std::sqrt(res)
       << " exceeds tolerance";
    throw NumericalError(os.str());
  }
  return RealVector(std::move(x));
}

RealVector ball_constrained_least_squares(const LinRegData& data, const RealVector& center,
                                          double radius) {
  require_same_dim(center.dim(), data.dim(), "ball_constrained_least_squares");
  if (!(radius > 0.0)) throw ConfigError("ball_constrained_least_squares: radius must be positive");

  const RealVector unconstrained = least_squares_optimum(data);
  if (norm(unconstrained - center) <= radius) return unconstrained;

  // Shift to z = x - center: minimize ||(y - A c) - A z||^2, ||z|| <= radius.
  const Matrix& a = data.design();
  const std::vector<double> ac = a.multiply(center.entries());
  std::vector<double> shifted = data.targets();
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] -= ac[i];
  const std::vector<double> b = a.multiply_transposed(shifted);
  const Matrix gram = a.gram();
  const std::size_t d = gram.rows();

  auto solve_at = [&](double multiplier) {
    Matrix shifted_gram = gram;
    for (std::size_t i = 0; i < d; ++i) shifted_gram(i, i) += multiplier;
    return RealVector(Cholesky::factor(shifted_gram).solve(b));
  };

  // ||z(lambda)|| decreases in lambda and is at most ||b|| / lambda.
  double lo = 0.0;
  double hi = norm(RealVector(b)) / radius;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (norm(solve_at(mid)) > radius) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const RealVector z = solve_at(hi);
  return center + (radius / norm(z)) * z;
}

HessianConstants hessian_constants(const Matrix& a) {
  const auto sv = singular_value_extremes(a);
  return {2.0 * sv.sigma_min * sv.sigma_min, 2.0 * sv.sigma_max * sv.sigma_max};
}

LinRegData synth_linreg(std::size_t d, std::size_t n, double radius, double noise_sd, Rng& rng) {
  if (d == 0) throw ConfigError("synth_linreg: d must be at least 1");
  if (n < d) throw ConfigError("synth_linreg: need N >= d");
  if (!(radius > 0.0)) throw ConfigError("synth_linreg: radius must be positive");
  if (!(noise_sd >= 0.0)) throw ConfigError("synth_linreg: noise_sd must be nonnegative");

  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  std::vector<double> entries(n * d);
  for (double& v : entries) v = normal(rng);
  Matrix design(n, d, std::move(entries));

  // Uniform in the open ball: Gaussian direction, radius R u^{1/d}.
  std::vector<double> dir(d);
  for (double& v : dir) v = normal(rng);
  const RealVector direction = normalize(RealVector(dir)).direction;
  const double r = radius * std::pow(uniform(rng), 1.0 / static_cast<double>(d));
  const RealVector w = r * direction;

  std::vector<double> y = design.multiply(w.entries());
  if (noise_sd > 0.0) {
    for (double& v : y) v += noise_sd * normal(rng);
  }
  return LinRegData(std::move(design), std::move(y), w, noise_sd);
}

ClassData synth_classes(std::size_t d, std::size_t n, std::size_t classes, double separation,
                        double lambda, Rng& rng) {
  if (d == 0 || classes == 0) throw ConfigError("synth_classes: d and m must be at least 1");
  if (n < classes) throw ConfigError("synth_classes: need N >= m");
  if (!(separation >= 0.0)) throw ConfigError("synth_classes: separation must be nonnegative");

  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<std::vector<double>> means(classes, std::vector<double>(d));
  for (std::size_t j = 0; j < classes; ++j) {
    auto& mu = means[j];
    double len = 0.0;
    do {
      for (double& v : mu) v = normal(rng);
      if (classes <= d) {
        // Gram-Schmidt against the previous means.
        for (std::size_t k = 0; k < j; ++k) {
          double proj = 0.0;
          for (std::size_t c = 0; c < d; ++c) proj += mu[c] * means[k][c];
          for (std::size_t c = 0; c < d; ++c) mu[c] -= proj * means[k][c];
        }
      }
      len = 0.0;
      for (double v : mu) len += v * v;
      len = std::sqrt(len);
    } while (!(len > 1e-8));
    for (double& v : mu) v /= len;
  }
  for (auto& mu : means) {
    for (double& v : mu) v *= separation;
  }

  std::vector<double> features(n * d);
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = i % classes;
    for (std::size_t c = 0; c < d; ++c) features[i * d + c] = means[labels[i]][c] + normal(rng);
  }
  return ClassData(Matrix(n, d, std::move(features)), std::move(labels), classes, lambda);
}

}  // namespace nsm::problems
