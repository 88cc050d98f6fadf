#include "cuelab/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cuelab/fft.hpp"

namespace cuelab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Split x into hi + lo where hi carries the top ~26 bits of the mantissa.
inline void veltkamp_split(double x, double& hi, double& lo) {
  const double c = 134217729.0 * x;  // 2^27 + 1
  hi = c - (c - x);
  lo = x - hi;
}

}  // namespace

double frac_mul(long long j, double t) {
  if (j >= (1LL << 27)) {
    // Digit-split the index: j = j1 * 2^27 + j0, and
    //   frac(j t) = frac(frac(j1 * frac(2^27 t)) + frac(j0 t))
    // exactly (2^27 t is an exact double scaling, dropped parts are integers).
    const long long j1 = j >> 27;
    const long long j0 = j & ((1LL << 27) - 1);
    const double u = 134217728.0 * t;
    double f = frac_mul(j1, u - std::floor(u)) + frac_mul(j0, t);
    if (f >= 1.0) f -= 1.0;
    return f;
  }
  // j * t = j*hi + j*lo with j*hi exact for j < 2^27 (hi has <= 26 mantissa
  // bits); reduce each product separately and recombine.
  double hi, lo;
  veltkamp_split(t, hi, lo);
  const double jd = static_cast<double>(j);
  double f = jd * hi;
  f -= std::floor(f);
  f += jd * lo;
  f -= std::floor(f);
  if (f >= 1.0) f -= 1.0;  // guard against rounding to 1.0
  return f;
}

TraceVector compute_traces(const EigenangleSample& sample, int j_max) {
  if (j_max < 1) throw std::invalid_argument("compute_traces: j_max must be >= 1");
  TraceVector tv;
  tv.n = sample.n;
  tv.j_max = j_max;
  tv.p.assign(static_cast<std::size_t>(j_max), cplx(0.0, 0.0));
  for (double theta : sample.angles) {
    const double t = theta / kTwoPi;  // in [0, 1)
    for (int j = 1; j <= j_max; ++j) {
      const double a = kTwoPi * frac_mul(j, t);
      tv.p[static_cast<std::size_t>(j) - 1] += cplx(std::cos(a), std::sin(a));
    }
  }
  return tv;
}

TraceVector traces_from_coeffs(const std::vector<cplx>& coeffs, int n,
                               int j_max) {
  if (j_max < 1) throw std::invalid_argument("traces_from_coeffs: j_max must be >= 1");
  // j <= n only touches c_1..c_j, so a leading window of the coefficients is
  // enough when j_max <= n; the closed recursion past the degree needs all.
  const std::size_t need =
      j_max > n ? static_cast<std::size_t>(n) + 1
                : static_cast<std::size_t>(std::min(j_max, n)) + 1;
  if (n < 1 || coeffs.size() < need)
    throw std::invalid_argument("traces_from_coeffs: too few coefficients");
  TraceVector tv;
  tv.n = n;
  tv.j_max = j_max;
  tv.p.assign(static_cast<std::size_t>(j_max), cplx(0.0, 0.0));
  // Newton's identities for the monic polynomial z^n + c_1 z^{n-1} + .. + c_n:
  //   j <= n:  p_j = -j c_j - sum_{i=1}^{j-1} c_i p_{j-i}
  //   j >  n:  p_j = -sum_{i=1}^{n} c_i p_{j-i}
  for (int j = 1; j <= j_max; ++j) {
    cplx acc(0.0, 0.0);
    const int imax = std::min(j - 1, n);
    for (int i = 1; i <= imax; ++i)
      acc += coeffs[static_cast<std::size_t>(i)] * tv.p[static_cast<std::size_t>(j - i) - 1];
    if (j <= n) acc += static_cast<double>(j) * coeffs[static_cast<std::size_t>(j)];
    tv.p[static_cast<std::size_t>(j) - 1] = -acc;
  }
  return tv;
}

FieldGrid eval_truncated_field(const TraceVector& traces, int J, int m,
                               FieldPart part) {
  if (J < 1 || J > traces.j_max)
    throw std::invalid_argument("eval_truncated_field: J out of range");
  if (m < 1) throw std::invalid_argument("eval_truncated_field: m must be >= 1");
  std::vector<cplx> buf(static_cast<std::size_t>(m), cplx(0.0, 0.0));
  for (int j = 1; j <= J; ++j)
    buf[static_cast<std::size_t>(j % m)] += -traces.at(j) / static_cast<double>(j);
  fft_inplace(buf, -1);  // X_t = sum_idx buf[idx] e^{-2pi i idx t / m}
  FieldGrid g;
  g.n = traces.n;
  g.m = m;
  g.part = part;
  g.truncated = true;
  g.values.resize(static_cast<std::size_t>(m));
  for (int t = 0; t < m; ++t)
    g.values[static_cast<std::size_t>(t)] =
        part == FieldPart::real ? buf[static_cast<std::size_t>(t)].real()
                                : buf[static_cast<std::size_t>(t)].imag();
  return g;
}

FieldGrid eval_truncated_field_direct(const TraceVector& traces, int J, int m,
                                      FieldPart part) {
  if (J < 1 || J > traces.j_max)
    throw std::invalid_argument("eval_truncated_field_direct: J out of range");
  if (m < 1) throw std::invalid_argument("eval_truncated_field_direct: m must be >= 1");
  FieldGrid g;
  g.n = traces.n;
  g.m = m;
  g.part = part;
  g.truncated = true;
  g.values.assign(static_cast<std::size_t>(m), 0.0);
  for (int t = 0; t < m; ++t) {
    const double h = kTwoPi * static_cast<double>(t) / static_cast<double>(m);
    double acc = 0.0;
    for (int j = 1; j <= J; ++j) {
      const cplx w(std::cos(j * h), -std::sin(j * h));
      const cplx term = w * traces.at(j) / static_cast<double>(j);
      acc -= part == FieldPart::real ? term.real() : term.imag();
    }
    g.values[static_cast<std::size_t>(t)] = acc;
  }
  return g;
}

namespace {

// One summand of the full field at offset x = theta - h.
inline double full_field_term(double x, FieldPart part, bool& hit) {
  // Reduce x into [0, 2pi).
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (part == FieldPart::real) {
    const double s = 2.0 * std::fabs(std::sin(0.5 * r));
    if (s == 0.0) {
      hit = true;
      return -std::numeric_limits<double>::infinity();
    }
    return std::log(s);
  }
  // Im log(1 - e^{ix}) = (x - pi)/2 on (0, 2pi); at the jump take 0.
  if (r == 0.0) {
    hit = true;
    return 0.0;
  }
  return 0.5 * (r - 3.141592653589793238462643383279);
}

}  // namespace

FieldGrid eval_full_field(const EigenangleSample& sample, int m,
                          FieldPart part) {
  if (m < 1) throw std::invalid_argument("eval_full_field: m must be >= 1");
  FieldGrid g;
  g.n = sample.n;
  g.m = m;
  g.part = part;
  g.truncated = false;
  g.values.assign(static_cast<std::size_t>(m), 0.0);
  for (int t = 0; t < m; ++t) {
    const double h = kTwoPi * static_cast<double>(t) / static_cast<double>(m);
    double acc = 0.0;
    bool hit = false;
    for (double theta : sample.angles) {
      acc += full_field_term(theta - h, part, hit);
      if (part == FieldPart::real && hit) break;
    }
    if (part == FieldPart::real && hit) {
      g.values[static_cast<std::size_t>(t)] =
          -std::numeric_limits<double>::infinity();
      ++g.neg_inf_count;
    } else {
      g.values[static_cast<std::size_t>(t)] = acc;
    }
  }
  return g;
}

double eval_full_field_at(const EigenangleSample& sample, double h,
                          FieldPart part) {
  double acc = 0.0;
  bool hit = false;
  for (double theta : sample.angles) {
    acc += full_field_term(theta - h, part, hit);
    if (part == FieldPart::real && hit)
      return -std::numeric_limits<double>::infinity();
  }
  return acc;
}

FieldGrid field_from_coeffs(const std::vector<cplx>& coeffs, int n, int m) {
  if (n < 1 || coeffs.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("field_from_coeffs: need n+1 coefficients");
  if (m < 1) throw std::invalid_argument("field_from_coeffs: m must be >= 1");
  // |Phi(e^{ih})| = |sum_i c_i e^{-i i h}| since the leading e^{inh} factor
  // has modulus one; fold indices mod m and evaluate by one forward FFT.
  std::vector<cplx> buf(static_cast<std::size_t>(m), cplx(0.0, 0.0));
  for (int i = 0; i <= n; ++i)
    buf[static_cast<std::size_t>(i % m)] += coeffs[static_cast<std::size_t>(i)];
  fft_inplace(buf, -1);
  FieldGrid g;
  g.n = n;
  g.m = m;
  g.part = FieldPart::real;
  g.truncated = false;
  g.values.resize(static_cast<std::size_t>(m));
  for (int t = 0; t < m; ++t) {
    const double a = std::abs(buf[static_cast<std::size_t>(t)]);
    if (a == 0.0) {
      g.values[static_cast<std::size_t>(t)] =
          -std::numeric_limits<double>::infinity();
      ++g.neg_inf_count;
    } else {
      g.values[static_cast<std::size_t>(t)] = std::log(a);
    }
  }
  return g;
}

}  // namespace cuelab
