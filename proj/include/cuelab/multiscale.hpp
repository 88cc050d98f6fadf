#pragma once
// Multiscale decomposition of the real log field into frequency blocks.
//
// Fine (log-spaced) blocks:   W_l(h)  sums j with ceil(e^{l-1}) <= j < ceil(e^l),
//                             so l = 1 covers {1, 2}, l = 2 covers {3..7}, ...
// Coarse (power-law) blocks:  Y_m(h)  sums j in (b_{m-1}, b_m] with
//                             b_m = floor(n^{m/K}), except m = 1 which starts
//                             at j = 1 so that the K blocks exactly partition
//                             {1..n} (b_K = n).
// Each block B contributes  sum_{j in B} -Re(e^{-ijh} p_j)/j  and is an exact
// refolding of the truncated field: summing consecutive blocks reproduces the
// corresponding truncation bit-for-bit up to FFT rounding.
//
// Gaussian-model variances and covariances of the blocks are available in
// closed form:  Var W_l = (1/2) sum_{j in B} 1/j  and
//               Cov(W_l(h), W_l(h+delta)) = (1/2) sum_{j in B} cos(j delta)/j.

#include <cstdint>
#include <vector>

#include "cuelab/field.hpp"

namespace cuelab {

struct ScaleRange {
  long long lo = 0;  // first j in the block (inclusive)
  long long hi = 0;  // last j in the block (inclusive); empty if hi < lo
};

/// Fine block l >= 1: ceil(e^{l-1}) <= j < ceil(e^l).
ScaleRange w_range(int l);

/// Coarse block m = 1..K for dimension n: (floor(n^{(m-1)/K}), floor(n^{m/K})],
/// with the m = 1 block widened to start at j = 1.
ScaleRange y_range(int m, int K, int n);

struct ScaleDecomposition {
  int n = 0;
  int m_grid = 0;  // grid size
  int K = 0;
  int l_max = 0;   // number of complete fine blocks within j <= min(j_max, n)
  // w[l-1][t] = W_l(h_t), l = 1..l_max
  std::vector<std::vector<double>> w;
  // y[m-1][t] = Y_m(h_t), m = 1..K
  std::vector<std::vector<double>> y;
  // sigma2[m-1] = (1/2) sum_{j in Y_m} 1/j, accumulated in ascending j order
  std::vector<double> sigma2;
};

/// Decompose the real part of the truncated field into fine and coarse
/// blocks on the m-grid.  Requires traces.j_max >= traces.n (the coarse
/// blocks reach j = n).  Fine blocks are included only when complete.
ScaleDecomposition decompose(const TraceVector& traces, int K, int m_grid);

/// Exact Gaussian covariance of the fine block: (1/2) sum_{j in W_l} cos(j*delta)/j.
/// delta = 0 gives the variance.  Accumulated in long double, ascending j.
double exact_cov_w(int l, double delta);

/// Exact Gaussian covariance of the coarse block Y_m for dimension n.
double exact_cov_y(int m, int K, int n, double delta);

struct ExceedanceCount {
  int K = 0;
  double epsilon = 0.0;
  double threshold = 0.0;     // x = (1 - epsilon/2) * log(n) / K
  long long z_count = 0;      // grid points where Y_m >= x for all m = 2..K-1
  std::vector<std::uint8_t> mask;  // per grid point, 1 if it counted
};

/// Count grid points exceeding the per-scale threshold at every intermediate
/// coarse scale m = 2..K-1.  Requires dec.m_grid == dec.n and K >= 3.
ExceedanceCount count_exceedances(const ScaleDecomposition& dec, double epsilon);

/// (mean Z)^2 / (mean Z^2) across replicates; throws if all counts are zero.
double second_moment_ratio(const std::vector<ExceedanceCount>& counts);

}  // namespace cuelab
