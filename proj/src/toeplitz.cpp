#include "cuelab/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuelab/fft.hpp"
#include "cuelab/field.hpp"
#include "cuelab/linalg.hpp"
#include "cuelab/parallel.hpp"

namespace cuelab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;
// zeta'(-1) = 1/12 - log A (Glaisher), validated against the Barnes
// recurrence in the test suite.
constexpr long double kZetaPrimeMinusOne = -0.16542114370045092921391906539193L;

int next_pow2(long long x) {
  int q = 1;
  while (q < x) q <<= 1;
  return q;
}

bool is_pow2(int q) { return q > 0 && (q & (q - 1)) == 0; }

// sin(pi*y) with exact argument reduction (accurate for large |y|).
double sinpi(double y) {
  const double m = std::floor(y);
  const double r = y - m;
  const double s = std::sin(kPi * r);
  const bool odd = std::fmod(std::fabs(m), 2.0) == 1.0;
  return odd ? -s : s;
}

}  // namespace

bool SymbolSpec::hermitian(double tol) const {
  for (const auto& [j, v] : v_coeffs) {
    cplx w(0.0, 0.0);
    const auto it = v_coeffs.find(-j);
    if (it != v_coeffs.end()) w = it->second;
    if (std::abs(w - std::conj(v)) > tol * std::max(1.0, std::abs(v)))
      return false;
  }
  return true;
}

int SymbolSpec::support_radius() const {
  int r = 0;
  for (const auto& [j, v] : v_coeffs) r = std::max(r, std::abs(j));
  return r;
}

std::vector<cplx> symbol_fourier(const SymbolSpec& spec, int q, int b) {
  if (spec.alpha <= -0.5)
    throw std::domain_error("symbol_fourier: non-integrable symbol (alpha <= -1/2)");
  if (b < 0) throw std::invalid_argument("symbol_fourier: bandwidth must be >= 0");
  if (!is_pow2(q) || q <= 2 * b)
    throw std::invalid_argument("symbol_fourier: q must be a power of two > 2b");
  // Potential on the half-shifted grid theta_t = 2*pi*(t + 1/2)/q:
  // V(theta_t) = sum_j V_j e^{i j theta_t}; premultiplying V_j by e^{i pi j/q}
  // turns this into a plain backward DFT.
  std::vector<cplx> v(static_cast<std::size_t>(q), cplx(0.0, 0.0));
  v[0] += spec.v0;
  for (const auto& [j, vj] : spec.v_coeffs) {
    const std::size_t idx = static_cast<std::size_t>(((j % q) + q) % q);
    const double ph = kPi * static_cast<double>(j) / static_cast<double>(q);
    v[idx] += vj * cplx(std::cos(ph), std::sin(ph));
  }
  fft_inplace(v, +1);
  // Symbol values f_t = exp(V_t) * (2 sin(theta_t/2))^{2 alpha}; the shifted
  // grid never hits theta = 0, so negative alpha stays finite.
  for (int t = 0; t < q; ++t) {
    const double half = kPi * (static_cast<double>(t) + 0.5) / static_cast<double>(q);
    const double sing = spec.alpha == 0.0
                            ? 1.0
                            : std::pow(2.0 * std::sin(half), 2.0 * spec.alpha);
    v[static_cast<std::size_t>(t)] = std::exp(v[static_cast<std::size_t>(t)]) * sing;
  }
  fft_inplace(v, -1);
  std::vector<cplx> out(2 * static_cast<std::size_t>(b) + 1);
  for (int k = -b; k <= b; ++k) {
    const std::size_t idx = static_cast<std::size_t>(((k % q) + q) % q);
    const double ph = -kPi * static_cast<double>(k) / static_cast<double>(q);
    out[static_cast<std::size_t>(b + k)] =
        v[idx] * cplx(std::cos(ph), std::sin(ph)) / static_cast<double>(q);
  }
  return out;
}

double fh_coeff_exact(double alpha, int k) {
  if (alpha <= -0.5)
    throw std::domain_error("fh_coeff_exact: non-integrable symbol (alpha <= -1/2)");
  const int kk = std::abs(k);
  const double sign = kk % 2 == 0 ? 1.0 : -1.0;
  const long double num = lgammal(2.0L * alpha + 1.0L);
  const long double d1 = lgammal(static_cast<long double>(alpha) + 1.0L + kk);
  const long double y = static_cast<long double>(alpha) + 1.0L - kk;
  if (y > 0.5L) {
    return sign * static_cast<double>(expl(num - d1 - lgammal(y)));
  }
  // 1/Gamma(y) = sin(pi y) Gamma(1-y) / pi; zero at non-positive integers.
  const double s = sinpi(static_cast<double>(y));
  if (s == 0.0) return 0.0;
  return sign * s / kPi *
         static_cast<double>(expl(num - d1 + lgammal(1.0L - y)));
}

std::vector<double> levinson_logdets(const std::vector<cplx>& t, int nmax) {
  if (nmax < 1 || t.size() < static_cast<std::size_t>(nmax))
    throw std::invalid_argument("levinson_logdets: need nmax coefficients");
  std::vector<double> out(static_cast<std::size_t>(nmax));
  double e = t[0].real();
  if (!(e > 0.0) || !std::isfinite(e))
    throw ConditioningError("levinson_logdets: non-positive pivot at minor 1", 0);
  double logdet = std::log(e);
  out[0] = logdet;
  std::vector<cplx> a(static_cast<std::size_t>(nmax), cplx(0.0, 0.0));
  std::vector<cplx> a_prev(static_cast<std::size_t>(nmax), cplx(0.0, 0.0));
  for (int k = 1; k < nmax; ++k) {
    cplx acc = t[static_cast<std::size_t>(k)];
    for (int i = 1; i < k; ++i)
      acc -= a[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(k - i)];
    const cplx kappa = acc / e;
    std::copy(a.begin() + 1, a.begin() + k, a_prev.begin() + 1);
    a[static_cast<std::size_t>(k)] = kappa;
    for (int i = 1; i < k; ++i)
      a[static_cast<std::size_t>(i)] =
          a_prev[static_cast<std::size_t>(i)] -
          kappa * std::conj(a_prev[static_cast<std::size_t>(k - i)]);
    e *= 1.0 - std::norm(kappa);
    if (!(e > 0.0) || !std::isfinite(e))
      throw ConditioningError(
          "levinson_logdets: non-positive pivot at minor " + std::to_string(k + 1),
          k);
    logdet += std::log(e);
    out[static_cast<std::size_t>(k)] = logdet;
  }
  return out;
}

namespace {

double logdet_from_coeffs(const std::vector<cplx>& coeffs, int b, int n,
                          bool hermitian_symbol) {
  if (hermitian_symbol) {
    std::vector<cplx> col(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      col[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(b + k)];
    return levinson_logdets(col, n).back();
  }
  std::vector<cplx> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      m[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
        static_cast<std::size_t>(i)] = coeffs[static_cast<std::size_t>(b + i - j)];
  const double ld = lu_log_abs_det(std::move(m), n);
  if (!std::isfinite(ld))
    throw std::runtime_error("toeplitz_logdet: singular matrix in LU path");
  return ld;
}

}  // namespace

ToeplitzResult toeplitz_logdet(const SymbolSpec& spec, int n,
                               const ToeplitzOptions& opts) {
  if (n < 1) throw std::invalid_argument("toeplitz_logdet: n must be >= 1");
  if (spec.alpha <= -0.5)
    throw std::domain_error("toeplitz_logdet: non-integrable symbol (alpha <= -1/2)");
  ToeplitzResult res;
  res.n = n;
  if (spec.v_coeffs.empty() && spec.v0 == 0.0) {
    // Pure singular symbol: the coefficients have a closed Gamma-ratio form,
    // so no sampling error enters at all.
    std::vector<cplx> col(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      col[static_cast<std::size_t>(k)] = fh_coeff_exact(spec.alpha, k);
    res.logdet = levinson_logdets(col, n).back();
    res.method = "exact-LDL";
    res.converged = true;
    res.q_used = 0;
    return res;
  }
  const bool herm = spec.hermitian();
  const int b = n - 1;
  if (opts.q > 0) {
    const auto coeffs = symbol_fourier(spec, opts.q, b);
    res.logdet = logdet_from_coeffs(coeffs, b, n, herm);
    res.method = herm ? "exact-LDL" : "exact-LU";
    res.q_used = opts.q;
    res.converged = true;
    return res;
  }
  int q = next_pow2(std::max<long long>(4LL * (n + b), 4096));
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (;;) {
    const auto coeffs = symbol_fourier(spec, q, b);
    const double ld = logdet_from_coeffs(coeffs, b, n, herm);
    if (std::isfinite(prev) &&
        std::fabs(ld - prev) < opts.q_tol * std::max(1.0, std::fabs(ld))) {
      res.logdet = ld;
      res.converged = true;
      res.q_used = q;
      break;
    }
    prev = ld;
    if (q >= opts.q_max) {
      res.logdet = ld;
      res.converged = false;
      res.q_used = q;
      break;
    }
    q <<= 1;
  }
  res.method = herm ? "exact-LDL" : "exact-LU";
  return res;
}

double selberg_logdet(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("selberg_logdet: n must be >= 1");
  if (alpha <= -0.5)
    throw std::domain_error("selberg_logdet: Gamma pole (alpha <= -1/2)");
  long double acc = 0.0L;
  const long double a = alpha;
  for (int k = 1; k <= n; ++k) {
    const long double kl = k;
    acc += lgammal(kl) + lgammal(kl + 2.0L * a) - 2.0L * lgammal(kl + a);
  }
  return static_cast<double>(acc);
}

namespace {

// Asymptotic expansion of log G(1+z), valid for z >= 20.
long double barnes_asymptotic(long double z) {
  const long double lz = logl(z);
  const long double z2 = z * z;
  long double acc = 0.5L * z2 * lz - 0.75L * z2 +
                    0.5L * z * logl(2.0L * 3.14159265358979323846264338328L) -
                    lz / 12.0L + kZetaPrimeMinusOne;
  // Residual coefficients for THIS fully expanded form (z log Gamma(z+1)
  // absorbed via Stirling): -1/240, +1/1008, -1/1440.  They differ from the
  // -1/720, +1/5040, ... sequence that accompanies the unexpanded
  // z log Gamma(z+1) form; mixing the two forms costs (1/360)/z^2.
  const long double iz2 = 1.0L / z2;
  acc += iz2 * (-1.0L / 240.0L + iz2 * (1.0L / 1008.0L - iz2 / 1440.0L));
  return acc;
}

}  // namespace

double barnes_log_g(double z) {
  if (!(z > 0.0)) throw std::domain_error("barnes_log_g: z must be > 0");
  if (z >= 20.0) return static_cast<double>(barnes_asymptotic(z));
  const int steps = static_cast<int>(std::ceil(20.0 - z));
  long double acc = barnes_asymptotic(static_cast<long double>(z) + steps);
  // log G(1+z) = log G(2+z) - lgamma(1+z), applied upward `steps` times.
  for (int i = 0; i < steps; ++i)
    acc -= lgammal(static_cast<long double>(z) + 1.0L + i);
  return static_cast<double>(acc);
}

cplx sigma2_v(const SymbolSpec& spec) {
  cplx acc(0.0, 0.0);
  for (const auto& [j, vj] : spec.v_coeffs) {
    if (j < 1) continue;
    const auto it = spec.v_coeffs.find(-j);
    if (it == spec.v_coeffs.end()) continue;
    acc += static_cast<double>(j) * vj * it->second;
  }
  return acc;
}

namespace {

void check_support(const SymbolSpec& spec, int n, double delta,
                   const char* who) {
  if (delta <= 0.0) return;
  const double limit = std::pow(static_cast<double>(n), 1.0 - delta);
  if (static_cast<double>(spec.support_radius()) > limit + 1e-9)
    throw std::invalid_argument(std::string(who) +
                                ": coefficient support exceeds n^{1-delta}");
}

}  // namespace

GaussianLaplaceResult gaussian_laplace_check(const SymbolSpec& spec, int n,
                                             double delta) {
  if (spec.alpha != 0.0)
    throw std::invalid_argument("gaussian_laplace_check: requires alpha = 0");
  if (!spec.hermitian())
    throw std::invalid_argument("gaussian_laplace_check: requires a real-valued potential");
  if (!(delta > 0.0))
    throw std::invalid_argument("gaussian_laplace_check: requires delta > 0");
  check_support(spec, n, delta, "gaussian_laplace_check");
  GaussianLaplaceResult r;
  r.logdet = toeplitz_logdet(spec, n).logdet;
  r.sigma2 = sigma2_v(spec).real();
  r.gap = std::fabs(r.logdet - r.sigma2);
  return r;
}

std::pair<cplx, cplx> wiener_hopf_b(const SymbolSpec& spec) {
  cplx plus(0.0, 0.0), minus(0.0, 0.0);
  for (const auto& [j, vj] : spec.v_coeffs) {
    if (j >= 1)
      plus += vj;
    else
      minus += vj;
  }
  return {plus, minus};
}

double fh_prediction(const SymbolSpec& spec, int n, double delta) {
  if (n < 1) throw std::invalid_argument("fh_prediction: n must be >= 1");
  if (!spec.hermitian())
    throw std::invalid_argument("fh_prediction: requires a real-valued potential");
  check_support(spec, n, delta, "fh_prediction");
  cplx quad(0.0, 0.0);
  for (const auto& [j, vj] : spec.v_coeffs) {
    if (j < 1) continue;
    const auto it = spec.v_coeffs.find(-j);
    if (it == spec.v_coeffs.end()) continue;
    quad += static_cast<double>(j) * vj * it->second;
  }
  const auto [bp, bm] = wiener_hopf_b(spec);
  return static_cast<double>(n) * spec.v0 + quad.real() -
         spec.alpha * (bp + bm).real() + selberg_logdet(n, spec.alpha);
}

SymbolSpec fh_symbol(double alpha) {
  SymbolSpec s;
  s.alpha = alpha;
  return s;
}

SymbolSpec uext_symbol(double lambda, int n0) {
  if (n0 < 0) throw std::invalid_argument("uext_symbol: n0 must be >= 0");
  SymbolSpec s;
  for (int j = 1; j <= n0; ++j) {
    s.v_coeffs[j] = lambda / static_cast<double>(j);
    s.v_coeffs[-j] = lambda / static_cast<double>(j);
  }
  return s;
}

void add_window(SymbolSpec& spec, double xi, double h, int j_min, int j_max) {
  if (j_min < 1 || j_max < j_min)
    throw std::invalid_argument("add_window: need 1 <= j_min <= j_max");
  for (int j = j_min; j <= j_max; ++j) {
    const double c = xi / (2.0 * static_cast<double>(j));
    const cplx w(std::cos(j * h), -std::sin(j * h));
    spec.v_coeffs[j] += c * w;
    spec.v_coeffs[-j] += c * std::conj(w);
  }
}

TailMomentResult tail_exp_moment_mc(int n, double delta, double a,
                                    int replicates, std::uint64_t seed,
                                    int threads) {
  if (n < 2) throw std::invalid_argument("tail_exp_moment_mc: n must be >= 2");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("tail_exp_moment_mc: delta must lie in (0,1)");
  if (std::fabs(a) > 3.0)
    throw std::invalid_argument("tail_exp_moment_mc: |a| must be <= 3");
  if (replicates < 1000)
    throw std::invalid_argument("tail_exp_moment_mc: need >= 1000 replicates");
  TailMomentResult res;
  res.n = n;
  res.a = a;
  // The tail starts at j >= n^{1-delta}; the removed prefix is j < n^{1-delta}.
  const double cut = std::pow(static_cast<double>(n), 1.0 - delta);
  res.j_cut = std::max(0, static_cast<int>(std::floor(cut - 1e-9)));
  res.values.assign(static_cast<std::size_t>(replicates), 0.0);
  const int j_cut = res.j_cut;
  parallel_for_index(replicates, threads, [&](long long r) {
    RngStream rng = derive_stream(seed, ExperimentId::tailmoment,
                                  static_cast<std::uint64_t>(r));
    const VerblunskyCoeffs vc = sample_haar_cmv(n, rng);
    const double full0 = charpoly_log_abs(vc, cplx(1.0, 0.0));
    double trunc0 = 0.0;
    if (j_cut >= 1) {
      const auto top = charpoly_top_bottom(vc, j_cut + 1).first;
      const TraceVector tv = traces_from_coeffs(top, n, j_cut);
      for (int j = 1; j <= j_cut; ++j)
        trunc0 -= tv.at(j).real() / static_cast<double>(j);
    }
    res.values[static_cast<std::size_t>(r)] = full0 - trunc0;
  });
  // Overflow-guarded log-sum-exp in replicate order.
  double m = -std::numeric_limits<double>::infinity();
  for (double t : res.values) m = std::max(m, 2.0 * a * t);
  if (!std::isfinite(m) && a != 0.0)
    throw std::runtime_error("tail_exp_moment_mc: degenerate tail values");
  if (a == 0.0) m = 0.0;
  double s = 0.0;
  for (double t : res.values) s += std::exp(2.0 * a * t - m);
  res.estimate = m + std::log(s) - std::log(static_cast<double>(replicates));
  if (!std::isfinite(res.estimate))
    throw std::runtime_error("tail_exp_moment_mc: log-sum-exp overflow");
  return res;
}

}  // namespace cuelab
