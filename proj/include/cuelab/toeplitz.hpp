#pragma once
// Toeplitz determinants of circle symbols f(e^{i theta}) = e^{V} |e^{i theta}-1|^{2 alpha},
// their exact evaluation (Levinson / LU on Fourier coefficients), the Selberg
// closed form for the pure singular symbol, Barnes-G asymptotics, and the
// Gaussian / Wiener-Hopf main-term predictions for the smooth part.
//
// The determinant convention is the n x n matrix (\hat f_{i-j})_{0<=i,j<=n-1}
// for the n-dimensional unitary group; the Selberg anchors D_2 = 3 and
// D_3 = 4 at alpha = 1 pin this size convention.

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuelab/sampler.hpp"

namespace cuelab {

/// Symbol f(e^{i theta}) = exp(V(theta)) * |e^{i theta} - 1|^{2 alpha} with
/// V(theta) = v0 + sum_{j != 0} V_j e^{i j theta} over the finite support.
struct SymbolSpec {
  double alpha = 0.0;            // singular exponent; requires alpha > -1/2
  double v0 = 0.0;               // constant Fourier coefficient of V
  std::map<int, cplx> v_coeffs;  // j -> V_j, j != 0

  /// True when V_{-j} = conj(V_j) for all stored j (real-valued potential).
  bool hermitian(double tol = 1e-12) const;
  /// Largest |j| in the support (0 if empty).
  int support_radius() const;
};

struct ToeplitzResult {
  int n = 0;
  double logdet = 0.0;
  std::string method;   // "exact-LDL" or "exact-LU"
  bool converged = true;
  int q_used = 0;       // sampling count of the final Fourier pass (0 = closed form)
};

struct ToeplitzOptions {
  int q = 0;                  // fixed sampling count (power of two); 0 = automatic
  double q_tol = 1e-8;        // doubling-stability tolerance for automatic q
  int q_max = 1 << 24;        // cap for the automatic doubling
};

/// Thrown when a declared-positive symbol produces a non-positive Levinson
/// pivot; `pivot_index` is the offending minor size.
struct ConditioningError : std::runtime_error {
  int pivot_index;
  ConditioningError(const std::string& what, int index)
      : std::runtime_error(what), pivot_index(index) {}
};

/// Fourier coefficients \hat f_{-b..b} (returned as out[b + k] = \hat f_k)
/// by FFT of f sampled at q half-shifted circle points theta_t = 2pi(t+1/2)/q
/// (the shift dodges the z = 1 singularity for alpha < 0 and costs nothing
/// otherwise).  q must be a power of two with q > 2b.
std::vector<cplx> symbol_fourier(const SymbolSpec& spec, int q, int b);

/// Exact Fourier coefficient of the pure singular symbol |z-1|^{2 alpha}:
/// \hat f_k = (-1)^k Gamma(2 alpha + 1) / (Gamma(alpha+1+k) Gamma(alpha+1-k)).
double fh_coeff_exact(double alpha, int k);

/// Log-determinants of all leading principal minors of the Hermitian Toeplitz
/// matrix with first column t[0..nmax-1], via one Levinson-Durbin pass:
/// out[s-1] = log det T_s.  Throws ConditioningError on a non-positive pivot.
std::vector<double> levinson_logdets(const std::vector<cplx>& t, int nmax);

/// log det of the n x n Toeplitz matrix of the symbol.  Real Hermitian
/// symbols go through Levinson; complex symbols through pivoted LU (then
/// logdet is log |det|).  A pure singular symbol (empty V) uses the exact
/// coefficient formula; otherwise coefficients are sampled with q doubling
/// until the result is stable to opts.q_tol.
ToeplitzResult toeplitz_logdet(const SymbolSpec& spec, int n,
                               const ToeplitzOptions& opts = {});

/// Selberg closed form: sum_{k=1}^{n} [lgamma(k) + lgamma(k+2a) - 2 lgamma(k+a)].
double selberg_logdet(int n, double alpha);

/// log G(1+z) for the Barnes G-function, z > 0: asymptotic expansion for
/// z >= 20, upward recurrence log G(1+z) = log G(2+z) - lgamma(1+z) below.
double barnes_log_g(double z);

/// sigma^2(V) = sum_{j>=1} j V_j V_{-j} (exact finite sum; real for real V).
cplx sigma2_v(const SymbolSpec& spec);

struct GaussianLaplaceResult {
  double logdet = 0.0;
  double sigma2 = 0.0;
  double gap = 0.0;
};

/// Compare log E exp(sum_k V(theta_k)) = toeplitz_logdet against the Gaussian
/// prediction sigma^2(V).  Requires alpha = 0, real V, and support within
/// n^{1-delta}.
GaussianLaplaceResult gaussian_laplace_check(const SymbolSpec& spec, int n,
                                             double delta);

/// (log b_+(1), log b_-(1)) = (sum_{k>=1} V_k, sum_{k<=-1} V_k).
std::pair<cplx, cplx> wiener_hopf_b(const SymbolSpec& spec);

/// Main-term prediction for log D_n(f):
///   n V_0 + sum_{k>=1} k V_k V_{-k} - alpha (log b_+(1) + log b_-(1))
///   + selberg_logdet(n, alpha).
/// delta > 0 additionally enforces support within n^{1-delta}.
double fh_prediction(const SymbolSpec& spec, int n, double delta = 0.0);

// --- Spec builders ------------------------------------------------------

/// Pure singular symbol |z-1|^{2 alpha}.
SymbolSpec fh_symbol(double alpha);

/// Logarithmic potential V_j = lambda/|j| for 1 <= |j| <= n0 (alpha = 0).
SymbolSpec uext_symbol(double lambda, int n0);

/// Add a truncated log-kernel window V_j += (xi/(2j)) e^{-i j h} (and the
/// Hermitian mirror) for j_min <= j <= j_max; the potential equals xi times
/// the truncated real log field evaluated near angle h.
void add_window(SymbolSpec& spec, double xi, double h, int j_min, int j_max);

// --- Tail moment Monte Carlo ---------------------------------------------

struct TailMomentResult {
  int n = 0;
  double a = 0.0;
  int j_cut = 0;            // removed prefix: j = 1..j_cut (j_cut < n^{1-delta})
  double estimate = 0.0;    // log mean exp(2 a T_r)
  std::vector<double> values;  // per-replicate tails T_r
};

/// Monte Carlo estimate of log E exp(2a sum_{j >= n^{1-delta}} -Re p_j / j),
/// computed per replicate as (full field at h=0) - (truncated field at h=0).
/// Deterministic for fixed seed regardless of thread count.
TailMomentResult tail_exp_moment_mc(int n, double delta, double a,
                                    int replicates, std::uint64_t seed,
                                    int threads = 1);

}  // namespace cuelab
