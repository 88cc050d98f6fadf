#pragma once
// Headline statistics of one realization: field maximum, Lebesgue measure of
// high points, free energy, and eigenangle rigidity / counting fluctuations.

#include <vector>

#include "cuelab/field.hpp"
#include "cuelab/sampler.hpp"

namespace cuelab {

struct MaxResult {
  int n = 0;
  int m = 0;
  double max_value = 0.0;
  int argmax_index = 0;
  FieldPart part = FieldPart::real;
};

/// Maximum finite grid value and its first attaining index; -inf entries are
/// skipped.  Throws if the grid is empty or all entries are -inf.
MaxResult field_max(const FieldGrid& grid);

struct HighPointResult {
  double gamma = 0.0;
  double leb = 0.0;  // 2*pi * (passing grid points) / m, in [0, 2*pi]
};

/// Lebesgue-measure estimate of {h : field(h) >= gamma * log n} on the grid.
/// Requires 0 < gamma < 1 and a real-part full field.
HighPointResult high_points(const FieldGrid& grid, double gamma);

struct FreeEnergyResult {
  double beta = 0.0;
  double f = 0.0;
  // Share of the Riemann sum carried by the single largest grid cell; values
  // near 1 mean the quadrature is dominated by the argmax neighborhood.
  double top_cell_fraction = 0.0;
};

/// Free energy f = (1/log n) * log((n/2pi) * (2pi/m) * sum_t exp(beta v_t))
/// by overflow-guarded log-sum-exp; -inf entries contribute 0 for beta > 0,
/// and beta = 0 returns exactly 1.  Requires beta >= 0, a real-part full
/// field, and m >= 4n.
FreeEnergyResult free_energy(const FieldGrid& grid, double beta);

struct RigidityResult {
  int n = 0;
  double sup_dev = 0.0;     // max_k |theta_(k) - 2 pi k / n|, k = 1..n
  double normalized = 0.0;  // n * sup_dev / log n
  double count_max = 0.0;   // max_h (#{theta in (0,h)} - n h / (2 pi))
};

/// Rigidity of the sorted eigenangles against the lattice 2 pi k / n, plus
/// the maximal counting-function surplus over m grid midpoints
/// h_t = 2 pi (t + 1/2) / m (midpoints avoid ties with eigenangles).
RigidityResult rigidity(const EigenangleSample& sample, int m);

}  // namespace cuelab
