#include "cuelab/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cuelab/fft.hpp"

namespace cuelab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// floor(n^{t/K}) with protection against powl landing just below an exact
// integer (e.g. n = 1024, K = 10 gives exact powers of two).
long long floor_power(int n, int t, int K) {
  if (t <= 0) return 0;
  if (t >= K) return n;
  const long double y =
      expl(static_cast<long double>(t) * logl(static_cast<long double>(n)) /
           static_cast<long double>(K));
  return static_cast<long long>(floorl(y + 1e-9L));
}

// sum_{j=lo..hi} cos(j*delta)/j accumulated in long double, ascending j.
// Uses an incremental rotation re-anchored every 8192 steps with an exactly
// reduced angle, so the cost is one complex multiply per term.
long double block_cos_sum(long long lo, long long hi, double delta) {
  if (hi < lo) return 0.0L;
  if (delta == 0.0) {
    long double acc = 0.0L;
    for (long long j = lo; j <= hi; ++j)
      acc += 1.0L / static_cast<long double>(j);
    return acc;
  }
  double t = delta / kTwoPi;
  t -= std::floor(t);
  const double step = kTwoPi * t;
  const double cr = std::cos(step), sr = std::sin(step);
  constexpr long long kChunk = 8192;
  long double acc = 0.0L;
  for (long long j0 = lo; j0 <= hi; j0 += kChunk) {
    const long long jend = std::min(hi, j0 + kChunk - 1);
    const double a0 = kTwoPi * frac_mul(j0, t);
    double c = std::cos(a0), s = std::sin(a0);
    for (long long j = j0; j <= jend; ++j) {
      acc += static_cast<long double>(c) / static_cast<long double>(j);
      const double cn = c * cr - s * sr;
      s = c * sr + s * cr;
      c = cn;
    }
  }
  return acc;
}

// Fold -p_j/j for j in [lo, hi] into m bins, FFT, take the real part.
std::vector<double> block_row(const TraceVector& traces, long long lo,
                              long long hi, int m) {
  std::vector<cplx> buf(static_cast<std::size_t>(m), cplx(0.0, 0.0));
  for (long long j = lo; j <= hi; ++j)
    buf[static_cast<std::size_t>(j % m)] +=
        -traces.at(static_cast<int>(j)) / static_cast<double>(j);
  fft_inplace(buf, -1);
  std::vector<double> row(static_cast<std::size_t>(m));
  for (int tt = 0; tt < m; ++tt)
    row[static_cast<std::size_t>(tt)] = buf[static_cast<std::size_t>(tt)].real();
  return row;
}

}  // namespace

ScaleRange w_range(int l) {
  if (l < 1) throw std::invalid_argument("w_range: l must be >= 1");
  const long long lo = static_cast<long long>(
      ceill(expl(static_cast<long double>(l) - 1.0L)));
  const long long hi =
      static_cast<long long>(ceill(expl(static_cast<long double>(l)))) - 1;
  return {lo, hi};
}

ScaleRange y_range(int m, int K, int n) {
  if (K < 1 || m < 1 || m > K || n < 1)
    throw std::invalid_argument("y_range: need 1 <= m <= K and n >= 1");
  const long long lo = m == 1 ? 1 : floor_power(n, m - 1, K) + 1;
  const long long hi = floor_power(n, m, K);
  return {lo, hi};
}

ScaleDecomposition decompose(const TraceVector& traces, int K, int m_grid) {
  if (K < 3)
    throw std::invalid_argument(
        "decompose: K must be >= 3 (the exceedance statistic drops the first "
        "and last coarse scales)");
  if (m_grid < 1) throw std::invalid_argument("decompose: grid size must be >= 1");
  if (traces.j_max < traces.n)
    throw std::invalid_argument("decompose: traces must reach j = n");
  ScaleDecomposition dec;
  dec.n = traces.n;
  dec.m_grid = m_grid;
  dec.K = K;
  int l = 1;
  while (w_range(l + 1).hi <= traces.n) ++l;
  if (w_range(l).hi > traces.n) l = 0;  // n too small for even the first block
  dec.l_max = l;
  dec.w.reserve(static_cast<std::size_t>(dec.l_max));
  for (int li = 1; li <= dec.l_max; ++li) {
    const ScaleRange r = w_range(li);
    dec.w.push_back(block_row(traces, r.lo, r.hi, m_grid));
  }
  dec.y.reserve(static_cast<std::size_t>(K));
  dec.sigma2.reserve(static_cast<std::size_t>(K));
  for (int mi = 1; mi <= K; ++mi) {
    const ScaleRange r = y_range(mi, K, traces.n);
    if (r.hi < r.lo) {
      dec.y.emplace_back(static_cast<std::size_t>(m_grid), 0.0);
      dec.sigma2.push_back(0.0);
      continue;
    }
    dec.y.push_back(block_row(traces, r.lo, r.hi, m_grid));
    long double s = 0.0L;
    for (long long j = r.lo; j <= r.hi; ++j)
      s += 0.5L / static_cast<long double>(j);
    dec.sigma2.push_back(static_cast<double>(s));
  }
  return dec;
}

double exact_cov_w(int l, double delta) {
  const ScaleRange r = w_range(l);
  return static_cast<double>(0.5L * block_cos_sum(r.lo, r.hi, delta));
}

double exact_cov_y(int m, int K, int n, double delta) {
  const ScaleRange r = y_range(m, K, n);
  return static_cast<double>(0.5L * block_cos_sum(r.lo, r.hi, delta));
}

ExceedanceCount count_exceedances(const ScaleDecomposition& dec,
                                  double epsilon) {
  if (dec.K < 3)
    throw std::invalid_argument("count_exceedances: need K >= 3");
  if (dec.m_grid != dec.n)
    throw std::invalid_argument(
        "count_exceedances: grid size must equal the matrix dimension");
  ExceedanceCount ec;
  ec.K = dec.K;
  ec.epsilon = epsilon;
  ec.threshold = (1.0 - epsilon / 2.0) * std::log(static_cast<double>(dec.n)) /
                 static_cast<double>(dec.K);
  ec.mask.assign(static_cast<std::size_t>(dec.m_grid), 0);
  for (int t = 0; t < dec.m_grid; ++t) {
    bool pass = true;
    for (int mi = 2; mi <= dec.K - 1 && pass; ++mi)
      pass = dec.y[static_cast<std::size_t>(mi) - 1][static_cast<std::size_t>(t)] >=
             ec.threshold;
    if (pass) {
      ec.mask[static_cast<std::size_t>(t)] = 1;
      ++ec.z_count;
    }
  }
  return ec;
}

double second_moment_ratio(const std::vector<ExceedanceCount>& counts) {
  if (counts.empty())
    throw std::invalid_argument("second_moment_ratio: no replicates");
  long double m1 = 0.0L, m2 = 0.0L;
  for (const auto& c : counts) {
    const long double z = static_cast<long double>(c.z_count);
    m1 += z;
    m2 += z * z;
  }
  m1 /= static_cast<long double>(counts.size());
  m2 /= static_cast<long double>(counts.size());
  if (m2 == 0.0L)
    throw std::domain_error(
        "second_moment_ratio: all exceedance counts are zero");
  return static_cast<double>(m1 * m1 / m2);
}

}  // namespace cuelab
