#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "maxvol/error.hpp"

namespace maxvol {

/// Closed-form constants of the soundness argument for the l-fold
/// reduction, evaluated in double precision.
struct SoundnessParameters {
  unsigned ell = 0;
  double alpha = 0.0;
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
  double c = 0.0;
  /// Empty when 1 - 2 eps1 - 2 eps2 - 2^(1 - alpha l) <= 0.
  std::optional<double> t;
  double t_denominator = 0.0;
  double ell_prime = 0.0;
  std::size_t k = 0;
  double log2_volume_bound = 0.0;  // -c k
  double volume_bound = 0.0;       // 2^(-c k)
};

/// Default for the parallel-repetition decay constant.
inline constexpr double kDefaultAlpha = 0.01;

inline SoundnessParameters compute_soundness_parameters(unsigned ell, double alpha, std::size_t k) {
  if (ell < 1) throw InvalidArgument("compute_soundness_parameters: ell must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidArgument("compute_soundness_parameters: alpha must be positive and finite");
  SoundnessParameters p;
  p.ell = ell;
  p.alpha = alpha;
  p.k = k;
  const double l = ell;
  const double r = std::pow(3.0 / 5.0, l);
  const double inv3 = std::pow(3.0, -(l + 1.0));
  p.epsilon1 = inv3 * (r + r * r);
  p.epsilon2 = inv3 * (r + 1.0);
  p.c = 1.0 / (3.0 * std::pow(5.0, l + 1.0));
  p.t_denominator = 1.0 - 2.0 * p.epsilon1 - 2.0 * p.epsilon2 - std::pow(2.0, -alpha * l + 1.0);
  if (p.t_denominator > 0.0) p.t = 4.0 * std::pow(5.0, l) / p.t_denominator;
  p.ell_prime = std::ceil(std::log2(54.0 / 11.0) / alpha);
  p.log2_volume_bound = -p.c * static_cast<double>(k);
  p.volume_bound = std::exp2(p.log2_volume_bound);
  return p;
}

}  // namespace maxvol
