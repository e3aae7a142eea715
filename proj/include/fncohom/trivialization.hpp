#pragma once

#include <complex>
#include <vector>

#include "fncohom/context.hpp"

namespace fncohom {

using Point = std::complex<double>;

/// Ordered points of the plane, pairwise distinct.
struct PlanarConfiguration {
  std::vector<Point> points;
};

inline constexpr double kDistinctThreshold = 1e-12;

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Throws ConfigurationError if two points are within the threshold.
void require_distinct(const PlanarConfiguration& cfg, double threshold = kDistinctThreshold);

struct Trivialized {
  PlanarConfiguration fiber;  // ((y_k - y_1)/(y_2 - y_1))_{k >= 3}, avoids 0 and 1
  PlanarConfiguration base;   // (y_1, y_2)
};

/// (y_1, ..., y_l) -> ((y_3-y_1)/(y_2-y_1), ..., (y_l-y_1)/(y_2-y_1)), (y_1, y_2).
Trivialized trivialize(const PlanarConfiguration& cfg, double threshold = kDistinctThreshold);

/// Inverse map: y_k = y_1 + w_{k-2} (y_2 - y_1).
PlanarConfiguration untrivialize(const PlanarConfiguration& fiber, const PlanarConfiguration& base,
                                 double threshold = kDistinctThreshold);

/// max |a_k - b_k| / max(1, max |a_k|).
double relative_error(const PlanarConfiguration& a, const PlanarConfiguration& b);

struct RoundtripStats {
  int samples = 0;
  double max_forward_error = 0;  // untrivialize(trivialize(y)) vs y
  double max_inverse_error = 0;  // trivialize(untrivialize(w, b)) vs (w, b)
};

/// Seeded random configurations with |y| <= magnitude and pairwise separation
/// >= separation, pushed through both roundtrips.
RoundtripStats roundtrip_experiment(int samples, int points, std::uint64_t seed, double magnitude = 1e3,
                                    double separation = 1e-3);

}  // namespace fncohom
