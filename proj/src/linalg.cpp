#include "cuelab/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

namespace cuelab {

namespace {
lapack_complex_double* lp(std::vector<cplx>& v) {
  return reinterpret_cast<lapack_complex_double*>(v.data());
}
}  // namespace

std::vector<cplx> haar_unitary(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("haar_unitary: n must be >= 1");
  std::vector<cplx> a(static_cast<std::size_t>(n) * n);
  for (auto& e : a) e = rng.complex_gaussian();

  std::vector<cplx> tau(n);
  lapack_int info = LAPACKE_zgeqrf(LAPACK_COL_MAJOR, n, n, lp(a), n,
                                   reinterpret_cast<lapack_complex_double*>(tau.data()));
  if (info != 0) throw std::runtime_error("haar_unitary: zgeqrf failed");

  // Phases of diag(R) before R is overwritten by the Q-assembly.
  std::vector<cplx> phase(n);
  for (int k = 0; k < n; ++k) {
    const cplx r = a[static_cast<std::size_t>(k) * n + k];
    const double m = std::abs(r);
    phase[k] = m > 0 ? r / m : cplx(1.0, 0.0);
  }

  info = LAPACKE_zungqr(LAPACK_COL_MAJOR, n, n, n, lp(a), n,
                        reinterpret_cast<lapack_complex_double*>(tau.data()));
  if (info != 0) throw std::runtime_error("haar_unitary: zungqr failed");

  for (int k = 0; k < n; ++k) {
    cplx* col = a.data() + static_cast<std::size_t>(k) * n;
    for (int i = 0; i < n; ++i) col[i] *= phase[k];
  }
  return a;
}

std::vector<double> unitary_eigenangles(std::vector<cplx> a, int n) {
  if (n < 1) throw std::invalid_argument("unitary_eigenangles: n must be >= 1");
  std::vector<cplx> w(n);
  lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, lp(a), n,
                                  reinterpret_cast<lapack_complex_double*>(w.data()),
                                  nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("unitary_eigenangles: zgeev failed");
  std::vector<double> angles(n);
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (int i = 0; i < n; ++i) {
    double t = std::arg(w[i]);  // (-pi, pi]
    if (t < 0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    angles[i] = t;
  }
  return angles;
}

double lu_log_abs_det(std::vector<cplx> a, int n) {
  if (n < 1) throw std::invalid_argument("lu_log_abs_det: n must be >= 1");
  std::vector<lapack_int> ipiv(n);
  lapack_int info =
      LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, lp(a), n, ipiv.data());
  if (info < 0) throw std::runtime_error("lu_log_abs_det: zgetrf failed");
  if (info > 0) return -std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    s += std::log(std::abs(a[static_cast<std::size_t>(i) * n + i]));
  return s;
}

}  // namespace cuelab
