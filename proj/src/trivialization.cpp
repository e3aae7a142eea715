#include "fncohom/trivialization.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

namespace fncohom {

void require_distinct(const PlanarConfiguration& cfg, double threshold) {
  const auto& y = cfg.points;
  for (std::size_t a = 0; a < y.size(); ++a)
    for (std::size_t b = a + 1; b < y.size(); ++b)
      if (std::abs(y[a] - y[b]) <= threshold)
        throw ConfigurationError(fmt::format("points {} and {} coincide (distance {:.3g} <= {:.3g})", a + 1, b + 1,
                                             std::abs(y[a] - y[b]), threshold));
}

Trivialized trivialize(const PlanarConfiguration& cfg, double threshold) {
  const auto& y = cfg.points;
  if (y.size() < 3) throw ConfigurationError(fmt::format("trivialize needs at least 3 points (got {})", y.size()));
  require_distinct(cfg, threshold);
  Trivialized out;
  const Point scale = y[1] - y[0];
  for (std::size_t k = 2; k < y.size(); ++k) {
    const Point w = (y[k] - y[0]) / scale;
    if (w == Point(0.0) || w == Point(1.0)) throw ConfigurationError("trivialized point hit 0 or 1");
    out.fiber.points.push_back(w);
  }
  out.base.points = {y[0], y[1]};
  return out;
}

PlanarConfiguration untrivialize(const PlanarConfiguration& fiber, const PlanarConfiguration& base, double threshold) {
  if (base.points.size() != 2)
    throw ConfigurationError(fmt::format("base must have exactly 2 points (got {})", base.points.size()));
  require_distinct(base, threshold);
  require_distinct(fiber, threshold);
  for (std::size_t k = 0; k < fiber.points.size(); ++k) {
    const Point w = fiber.points[k];
    if (std::abs(w) <= threshold || std::abs(w - 1.0) <= threshold)
      throw ConfigurationError(fmt::format("fiber point {} must avoid 0 and 1", k + 1));
  }
  const Point y1 = base.points[0];
  const Point y2 = base.points[1];
  PlanarConfiguration out;
  out.points = {y1, y2};
  for (const Point& w : fiber.points) out.points.push_back(y1 + w * (y2 - y1));
  return out;
}

double relative_error(const PlanarConfiguration& a, const PlanarConfiguration& b) {
  if (a.points.size() != b.points.size()) throw ConfigurationError("configurations differ in length");
  double diff = 0;
  double mag = 1;
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    diff = std::max(diff, std::abs(a.points[k] - b.points[k]));
    mag = std::max(mag, std::abs(a.points[k]));
  }
  return diff / mag;
}

RoundtripStats roundtrip_experiment(int samples, int points, std::uint64_t seed, double magnitude, double separation) {
  if (points < 3) throw ConfigurationError("roundtrip needs at least 3 points");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  auto draw = [&] { return std::polar(magnitude * std::sqrt(radius(rng)), angle(rng)); };

  RoundtripStats stats;
  for (int s = 0; s < samples; ++s) {
    PlanarConfiguration cfg;
    while (static_cast<int>(cfg.points.size()) < points) {
      const Point p = draw();
      const bool far = std::all_of(cfg.points.begin(), cfg.points.end(),
                                   [&](const Point& q) { return std::abs(p - q) >= separation; });
      if (far) cfg.points.push_back(p);
    }
    const Trivialized t = trivialize(cfg);
    stats.max_forward_error = std::max(stats.max_forward_error, relative_error(untrivialize(t.fiber, t.base), cfg));

    const Trivialized back = trivialize(untrivialize(t.fiber, t.base));
    stats.max_inverse_error = std::max(
        {stats.max_inverse_error, relative_error(back.fiber, t.fiber), relative_error(back.base, t.base)});
    ++stats.samples;
  }
  return stats;
}

}  // namespace fncohom
