#include "nsm/corruption.hpp"

#include <cmath>
#include <sstream>

#include "nsm/error.hpp"
#include "overloaded.hpp"

namespace nsm::corruption {

using detail::overloaded;

ScaledOpposite::ScaledOpposite(double f) : factor(f) {
  if (f == 0.0 || !std::isfinite(f)) {
    throw ConfigError("ScaledOpposite: factor must be finite and nonzero");
  }
}

NegateIterate::NegateIterate(RealVector fb) : fallback(std::move(fb)) {}

FixedVector::FixedVector(RealVector v) : value(std::move(v)) {}

std::string describe(const Adversary& adversary) {
  std::ostringstream os;
  std::visit(overloaded{[&](const WorstCaseDirectional&) { os << "worst-case-directional"; },
                        [&](const ScaledOpposite& a) { os << "scaled-opposite(" << a.factor << ")"; },
                        [&](const NegateIterate&) { os << "negate-iterate"; },
                        [&](const FixedVector& a) {
                          os << "fixed-vector(dim=" << a.value.dim() << ")";
                        }},
             adversary);
  return os.str();
}

RealVector corrupt_vector(const Adversary& adversary, const FeedbackContext& ctx) {
  require_same_dim(ctx.gradient.dim(), ctx.x.dim(), "corrupt_vector gradient");
  return std::visit(
      overloaded{
          [&](const WorstCaseDirectional&) -> RealVector {
            if (ctx.optimum == nullptr || !ctx.radius) {
              throw ConfigError("worst-case-directional adversary needs the optimum and R");
            }
            if (!(ctx.gamma > 0.0)) throw ConfigError("worst-case-directional: gamma_t must be > 0");
            const double scale = *ctx.radius / ctx.gamma;
            const RealVector toward = *ctx.optimum - ctx.x;
            const double dist = norm(toward);
            if (dist <= 1e-12) return RealVector::basis(ctx.x.dim(), 0, scale);
            return (scale / dist) * toward;
          },
          [&](const ScaledOpposite& a) -> RealVector { return (-a.factor) * ctx.gradient; },
          [&](const NegateIterate& a) -> RealVector {
            if (ctx.x[0] != 0.0) return -ctx.x;
            require_same_dim(a.fallback.dim(), ctx.x.dim(), "negate-iterate fallback");
            return a.fallback;
          },
          [&](const FixedVector& a) -> RealVector {
            require_same_dim(a.value.dim(), ctx.x.dim(), "fixed-vector adversary");
            return a.value;
          }},
      adversary);
}

CorruptionChannel::CorruptionChannel(double p, Adversary adversary, std::uint64_t seed)
    : p_(p), adversary_(std::move(adversary)), rng_(seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("CorruptionChannel: p must lie in [0, 1]");
}

Feedback CorruptionChannel::next(const FeedbackContext& ctx) {
  const double u = uniform_(rng_);
  ++draws_made_;
  if (u < p_) {
    RealVector b = corrupt_vector(adversary_, ctx);
    ++corruptions_made_;
    return {std::move(b), true};
  }
  return {ctx.gradient, false};
}

}  // namespace nsm::corruption
