#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include "nsm/rng.hpp"
#include "nsm/vector.hpp"

namespace nsm::corruption {

/// b_t = (R / gamma_t) (x* - x_t) / ||x* - x_t||: a huge push toward the
/// optimum, so that an update subtracting it moves away from x*.
/// At x_t == x* (within 1e-12) the push is along the first basis vector.
struct WorstCaseDirectional {};

/// b_t = -factor * g_t. The factor must be nonzero.
struct ScaledOpposite {
  explicit ScaledOpposite(double factor);
  double factor;
};

/// b_t = -x_t when x_{t,0} != 0 (exact test), otherwise `fallback`.
struct NegateIterate {
  explicit NegateIterate(RealVector fallback);
  RealVector fallback;
};

/// b_t = value, independent of the iterate.
struct FixedVector {
  explicit FixedVector(RealVector value);
  RealVector value;
};

using Adversary = std::variant<WorstCaseDirectional, ScaledOpposite, NegateIterate, FixedVector>;

std::string describe(const Adversary& adversary);

/// What an adversary may look at when producing b_t.
struct FeedbackContext {
  const RealVector& x;
  const RealVector& gradient;
  double gamma;
  const RealVector* optimum = nullptr;
  std::optional<double> radius;
};

/// The corrupt feedback b_t. Throws ConfigError when the strategy needs
/// context that is missing (optimum or radius for WorstCaseDirectional) and
/// DimensionError when a stored vector does not match x.
RealVector corrupt_vector(const Adversary& adversary, const FeedbackContext& ctx);

struct Feedback {
  RealVector h;
  bool corrupted;
};

/// Bernoulli(p) corruption gate in front of an adversary.
///
/// Each call to next() consumes exactly one uniform draw from the channel's
/// own engine, before and independently of the iterate, so a channel's
/// corruption pattern depends only on its seed and the number of calls.
/// Single-owner mutable state; give each concurrent run its own channel.
class CorruptionChannel {
 public:
  CorruptionChannel(double p, Adversary adversary, std::uint64_t seed);

  Feedback next(const FeedbackContext& ctx);

  double p() const noexcept { return p_; }
  const Adversary& adversary() const noexcept { return adversary_; }
  std::uint64_t draws_made() const noexcept { return draws_made_; }
  std::uint64_t corruptions_made() const noexcept { return corruptions_made_; }

 private:
  double p_;
  Adversary adversary_;
  Rng rng_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::uint64_t draws_made_ = 0;
  std::uint64_t corruptions_made_ = 0;
};

}  // namespace nsm::corruption
