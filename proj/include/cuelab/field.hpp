#pragma once
// The log-characteristic-polynomial field on circle grids.
//
// For eigenangles theta_1..theta_n and p_j = sum_k exp(i j theta_k):
//   real part:      X(h) = sum_j -Re(e^{-ijh} p_j)/j = sum_k log|1 - e^{i(theta_k - h)}|
//   imaginary part: Y(h) = sum_j -Im(e^{-ijh} p_j)/j
//                        = sum_k (((theta_k - h) mod 2pi) - pi)/2
// with the principal branch of Im log(1 - e^{i x}) on (0, 2pi).
//
// Grid convention shared by every module: h_t = 2*pi*t/m, t = 0..m-1.
//
// Truncated fields are evaluated by an exact folding trick: e^{-ijh_t} only
// depends on j mod m, so the coefficient vector c_j = -p_j/j is folded into m
// bins and one forward FFT evaluates all grid points at once; this equals
// direct summation to rounding error.

#include <complex>
#include <vector>

#include "cuelab/sampler.hpp"

namespace cuelab {

enum class FieldPart { real, imaginary };

struct TraceVector {
  int n = 0;      // matrix dimension
  int j_max = 0;  // highest power computed
  std::vector<cplx> p;  // p[j-1] = Tr U^j, j = 1..j_max

  cplx at(int j) const { return p.at(static_cast<std::size_t>(j) - 1); }
};

struct FieldGrid {
  int n = 0;  // matrix dimension behind the field (0 if not applicable)
  int m = 0;  // grid size
  FieldPart part = FieldPart::real;
  bool truncated = false;
  std::vector<double> values;   // values[t] at h_t = 2*pi*t/m
  int neg_inf_count = 0;        // grid points coinciding with eigenangles
};

/// Fractional part of j*t for t in [0,1), exact to ~2^-53 even for j up to
/// ~2^30, via a Dekker split of t.  Used for per-term reduction of j*theta
/// mod 2*pi: iterated multiplication would drift by O(j) ulps.
double frac_mul(long long j, double t);

/// Traces p_j = sum_k exp(i j theta_k), j = 1..j_max, by direct summation
/// with per-term angle reduction.  O(n * j_max).
TraceVector compute_traces(const EigenangleSample& sample, int j_max);

/// Traces from the monic characteristic polynomial (descending coefficients,
/// c[0] = 1) via Newton's identities.  Valid for j_max up to any value; for
/// j > degree the closed recursion over all coefficients is used.  When
/// j_max <= n only the leading j_max + 1 coefficients are required, so a
/// truncated window (e.g. from charpoly_top_bottom) is accepted.
TraceVector traces_from_coeffs(const std::vector<cplx>& coeffs, int n, int j_max);

/// Truncated field (real or imaginary part) on the m-grid from traces,
/// j = 1..J, by folding + FFT.  J must satisfy 1 <= J <= traces.j_max.
FieldGrid eval_truncated_field(const TraceVector& traces, int J, int m,
                               FieldPart part);

/// Reference direct summation, used to validate the FFT path.
FieldGrid eval_truncated_field_direct(const TraceVector& traces, int J, int m,
                                      FieldPart part);

/// Full field on the m-grid by direct summation over eigenangles. O(n*m).
/// Real-part values at grid points that coincide with an eigenangle are -inf
/// and counted in neg_inf_count (they are excluded from maxima and contribute
/// zero Boltzmann weight downstream).  An imaginary-part term at an exact
/// coincidence contributes 0 (the midpoint of the +-pi/2 branch jump).
FieldGrid eval_full_field(const EigenangleSample& sample, int m, FieldPart part);

/// Full field at a single point h.
double eval_full_field_at(const EigenangleSample& sample, double h,
                          FieldPart part);

/// Real part of the full field on the m-grid from the monic characteristic
/// polynomial coefficients (descending, length n+1): values are
/// log |sum_i c_i e^{-i i h_t}|, evaluated by folding + FFT.  This is exact
/// (the e^{inh_t} prefactor has modulus one) and is the fast Monte Carlo path.
FieldGrid field_from_coeffs(const std::vector<cplx>& coeffs, int n, int m);

}  // namespace cuelab
