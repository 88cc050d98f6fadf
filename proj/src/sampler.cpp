#include "cuelab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cuelab/linalg.hpp"

namespace cuelab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kRenormAt = 1e150;
}  // namespace

EigenangleSample sample_haar_qr(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_haar_qr: n must be >= 1");
  std::vector<cplx> u = haar_unitary(n, rng);
  EigenangleSample s;
  s.n = n;
  s.angles = unitary_eigenangles(std::move(u), n);
  std::sort(s.angles.begin(), s.angles.end());
  s.seed_tag.method = "qr";
  return s;
}

VerblunskyCoeffs sample_haar_cmv(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_haar_cmv: n must be >= 1");
  VerblunskyCoeffs v;
  v.n = n;
  v.alpha.resize(n);
  for (int k = 0; k + 1 < n; ++k) {
    const double phase = kTwoPi * rng.uniform();
    const double b = static_cast<double>(n - k - 1);
    // |alpha_k|^2 ~ Beta(1, b) by inverse CDF; uniform_pos() keeps it < 1.
    const double r2 = 1.0 - std::pow(rng.uniform_pos(), 1.0 / b);
    const double r = std::sqrt(r2);
    v.alpha[k] = cplx(r * std::cos(phase), r * std::sin(phase));
  }
  const double phase = kTwoPi * rng.uniform();
  v.alpha[n - 1] = cplx(std::cos(phase), std::sin(phase));
  return v;
}

cplx charpoly_eval(const VerblunskyCoeffs& coeffs, cplx z) {
  cplx phi = 1.0, phis = 1.0;
  double log_scale = 0.0;
  for (const cplx a : coeffs.alpha) {
    const cplx nphi = z * phi - std::conj(a) * phis;
    const cplx nphis = phis - a * z * phi;
    phi = nphi;
    phis = nphis;
    if (std::abs(phi) > kRenormAt || std::abs(phis) > kRenormAt) {
      const double s = std::max(std::abs(phi), std::abs(phis));
      phi /= s;
      phis /= s;
      log_scale += std::log(s);
    }
  }
  return phi * std::exp(log_scale);
}

double charpoly_log_abs(const VerblunskyCoeffs& coeffs, cplx z) {
  cplx phi = 1.0, phis = 1.0;
  double log_scale = 0.0;
  for (const cplx a : coeffs.alpha) {
    const cplx nphi = z * phi - std::conj(a) * phis;
    const cplx nphis = phis - a * z * phi;
    phi = nphi;
    phis = nphis;
    const double m = std::max(std::abs(phi), std::abs(phis));
    if (m > kRenormAt || (m > 0.0 && m < 1e-150)) {
      phi /= m;
      phis /= m;
      log_scale += std::log(m);
    }
  }
  return std::log(std::abs(phi)) + log_scale;
}

std::vector<cplx> charpoly_coeffs(const VerblunskyCoeffs& coeffs) {
  const int n = coeffs.n;
  // Descending-order coefficients: after step k the polynomial has degree k+1
  // and c[i] multiplies z^{k+1-i}.  Phi*_k has descending coefficients equal
  // to conj(c) reversed, which is why only one array is carried.
  std::vector<cplx> c(n + 1, cplx(0.0)), prev(n + 1);
  c[0] = 1.0;
  for (int k = 0; k < n; ++k) {
    const cplx a = std::conj(coeffs.alpha[k]);
    std::copy(c.begin(), c.begin() + k + 1, prev.begin());
    // z*Phi_k leaves descending coefficients in place and appends a zero.
    c[k + 1] = 0.0;
    for (int i = 1; i <= k + 1; ++i) c[i] -= a * std::conj(prev[k + 1 - i]);
  }
  return c;
}

std::pair<std::vector<cplx>, std::vector<cplx>> charpoly_top_bottom(
    const VerblunskyCoeffs& coeffs, int k) {
  const int n = coeffs.n;
  if (k < 1 || k > n) throw std::invalid_argument("charpoly_top_bottom: bad k");
  if (n <= 2 * k + 2) {
    const std::vector<cplx> c = charpoly_coeffs(coeffs);
    return {std::vector<cplx>(c.begin(), c.begin() + k),
            std::vector<cplx>(c.end() - k, c.end())};
  }
  // Run the full recursion until the two windows separate, then update only
  // the top k and bottom k descending coefficients: the Szego step couples
  // each window to the conjugate-reverse of the other and to nothing else.
  std::vector<cplx> c(2 * k + 3, cplx(0.0)), scratch(2 * k + 3);
  c[0] = 1.0;
  int d = 0;  // current degree
  for (; d < 2 * k + 2; ++d) {
    const cplx a = std::conj(coeffs.alpha[d]);
    std::copy(c.begin(), c.begin() + d + 1, scratch.begin());
    c[d + 1] = 0.0;
    for (int i = 1; i <= d + 1; ++i) c[i] -= a * std::conj(scratch[d + 1 - i]);
  }
  std::vector<cplx> top(c.begin(), c.begin() + k);
  std::vector<cplx> bot(k);  // bot[j] = c_{d-k+1+j}, j = 0..k-1
  for (int j = 0; j < k; ++j) bot[j] = c[d - k + 1 + j];
  std::vector<cplx> ntop(k), nbot(k);
  for (; d < n; ++d) {
    const cplx a = std::conj(coeffs.alpha[d]);
    // new c_i = old c_i - a * conj(old c_{d+1-i})   (old c_{d+1} := 0)
    ntop[0] = top[0];
    for (int i = 1; i < k; ++i) {
      // d+1-i lies in the old bottom window: bot index (d+1-i)-(d-k+1) = k-i.
      ntop[i] = top[i] - a * std::conj(bot[k - i]);
    }
    // New bottom window holds c_{d-k+2} .. c_{d+1}.
    for (int j = 0; j < k; ++j) {
      const int i = d - k + 2 + j;
      const cplx old = (j + 1 < k) ? bot[j + 1] : cplx(0.0);  // old c_i
      nbot[j] = old - a * std::conj(top[d + 1 - i]);          // d+1-i = k-1-j
    }
    top.swap(ntop);
    bot.swap(nbot);
  }
  return {std::move(top), std::move(bot)};
}

EigenangleSample angles_from_verblunsky(const VerblunskyCoeffs& coeffs) {
  const int n = coeffs.n;
  const std::vector<cplx> c = charpoly_coeffs(coeffs);
  // Companion matrix of the monic polynomial z^n + c_1 z^{n-1} + ... + c_n:
  // ones on the subdiagonal, -c_{n-i} in column n-1.
  std::vector<cplx> m(static_cast<std::size_t>(n) * n, cplx(0.0));
  for (int i = 0; i + 1 < n; ++i)
    m[static_cast<std::size_t>(i) * n + i + 1] = 1.0;  // column i, row i+1
  for (int i = 0; i < n; ++i)
    m[static_cast<std::size_t>(n - 1) * n + i] = -c[n - i];
  EigenangleSample s;
  s.n = n;
  s.angles = unitary_eigenangles(std::move(m), n);
  std::sort(s.angles.begin(), s.angles.end());
  s.seed_tag.method = "cmv";
  return s;
}

}  // namespace cuelab
