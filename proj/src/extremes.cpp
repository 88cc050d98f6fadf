#include "cuelab/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cuelab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

MaxResult field_max(const FieldGrid& grid) {
  if (grid.values.empty())
    throw std::invalid_argument("field_max: empty grid");
  MaxResult r;
  r.n = grid.n;
  r.m = grid.m;
  r.part = grid.part;
  r.max_value = -std::numeric_limits<double>::infinity();
  r.argmax_index = -1;
  for (int t = 0; t < grid.m; ++t) {
    const double v = grid.values[static_cast<std::size_t>(t)];
    if (std::isfinite(v) && v > r.max_value) {
      r.max_value = v;
      r.argmax_index = t;
    }
  }
  if (r.argmax_index < 0)
    throw std::domain_error("field_max: degenerate grid (all entries -inf)");
  return r;
}

HighPointResult high_points(const FieldGrid& grid, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::range_error("high_points: gamma must lie in (0, 1)");
  if (grid.part != FieldPart::real || grid.truncated)
    throw std::invalid_argument("high_points: requires the real-part full field");
  if (grid.values.empty() || grid.n < 2)
    throw std::invalid_argument("high_points: grid must carry n >= 2");
  const double level = gamma * std::log(static_cast<double>(grid.n));
  long long pass = 0;
  for (double v : grid.values)
    if (v >= level) ++pass;
  HighPointResult r;
  r.gamma = gamma;
  r.leb = kTwoPi * static_cast<double>(pass) / static_cast<double>(grid.m);
  return r;
}

FreeEnergyResult free_energy(const FieldGrid& grid, double beta) {
  if (beta < 0.0)
    throw std::invalid_argument(
        "free_energy: beta < 0 unsupported (integrand non-integrable near "
        "eigenangles)");
  if (grid.part != FieldPart::real || grid.truncated)
    throw std::invalid_argument("free_energy: requires the real-part full field");
  if (grid.n < 2 || grid.m < 4 * grid.n)
    throw std::invalid_argument("free_energy: grid must have m >= 4n, n >= 2");
  FreeEnergyResult r;
  r.beta = beta;
  if (beta == 0.0) {
    // Constant integrand: (n/2pi) * 2pi = n, so f = log n / log n = 1.
    r.f = 1.0;
    r.top_cell_fraction = 1.0 / static_cast<double>(grid.m);
    return r;
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : grid.values)
    if (std::isfinite(v)) peak = std::max(peak, v);
  if (!std::isfinite(peak))
    throw std::domain_error("free_energy: degenerate grid (all entries -inf)");
  double s = 0.0;
  for (double v : grid.values)
    if (std::isfinite(v)) s += std::exp(beta * (v - peak));
  // f = (1/log n) [ log(n/m) + beta*peak + log s ].
  r.f = (std::log(static_cast<double>(grid.n) / static_cast<double>(grid.m)) +
         beta * peak + std::log(s)) /
        std::log(static_cast<double>(grid.n));
  r.top_cell_fraction = 1.0 / s;  // the peak cell contributes exp(0) = 1
  return r;
}

RigidityResult rigidity(const EigenangleSample& sample, int m) {
  if (sample.n < 1 || sample.angles.size() != static_cast<std::size_t>(sample.n))
    throw std::invalid_argument("rigidity: malformed sample");
  if (m < 1) throw std::invalid_argument("rigidity: grid size must be >= 1");
  RigidityResult r;
  r.n = sample.n;
  const double n = static_cast<double>(sample.n);
  for (int k = 1; k <= sample.n; ++k) {
    const double dev =
        std::fabs(sample.angles[static_cast<std::size_t>(k) - 1] -
                  kTwoPi * static_cast<double>(k) / n);
    r.sup_dev = std::max(r.sup_dev, dev);
  }
  r.normalized = n * r.sup_dev / std::log(n);
  // Counting surplus at midpoints h_t = 2 pi (t + 1/2) / m: one sweep over
  // the sorted angles, counting theta in the open interval (0, h_t).
  r.count_max = -std::numeric_limits<double>::infinity();
  std::size_t idx = 0;
  const std::size_t nn = sample.angles.size();
  while (idx < nn && sample.angles[idx] <= 0.0) ++idx;  // exclude theta = 0
  long long below = 0;
  for (int t = 0; t < m; ++t) {
    const double h = kTwoPi * (static_cast<double>(t) + 0.5) / static_cast<double>(m);
    while (idx < nn && sample.angles[idx] < h) {
      ++idx;
      ++below;
    }
    const double surplus = static_cast<double>(below) - n * h / kTwoPi;
    r.count_max = std::max(r.count_max, surplus);
  }
  return r;
}

}  // namespace cuelab
