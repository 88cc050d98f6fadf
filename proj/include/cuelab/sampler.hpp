#pragma once
// Haar (CUE) spectrum sampling by two independent routes:
//
//  * QR route: QR of a complex Ginibre matrix with diagonal phase correction,
//    then a dense eigensolve.  Produces eigenangles directly.
//  * CMV/Verblunsky route: the spectral-measure construction samples
//    recurrence coefficients alpha_k with |alpha_k|^2 ~ Beta(1, n-k-1) and
//    uniform phases (|alpha_{n-1}| = 1 uniform), from which the Szego
//    recursion builds the characteristic polynomial
//        Phi_{k+1}(z) = z Phi_k(z) - conj(alpha_k) Phi*_k(z)
//    in O(n) per evaluation point or O(n^2) for all coefficients.  This route
//    never forms a matrix and is the fast path for field evaluation; it is
//    validated distributionally against the QR route, never trusted alone.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cuelab/rng.hpp"

namespace cuelab {

using cplx = std::complex<double>;

struct SeedTag {
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  std::string method;  // "qr" or "cmv"
};

struct EigenangleSample {
  int n = 0;
  std::vector<double> angles;  // sorted ascending, in [0, 2*pi)
  SeedTag seed_tag;
};

struct VerblunskyCoeffs {
  int n = 0;
  std::vector<cplx> alpha;  // |alpha_k| < 1 for k < n-1, |alpha_{n-1}| = 1
};

/// Haar-unitary eigenangles via Ginibre QR + dense eigensolve.
/// Draw order: n*n complex Gaussians, column-major.
EigenangleSample sample_haar_qr(int n, RngStream& rng);

/// Verblunsky coefficients of a Haar-unitary spectral measure.
/// Draw order per k = 0..n-2: one uniform for the phase, one uniform for the
/// modulus (Beta(1, n-k-1) via inverse CDF); then one uniform for the phase of
/// alpha_{n-1}.
VerblunskyCoeffs sample_haar_cmv(int n, RngStream& rng);

/// Phi_n(z) = prod_k (z - e^{i theta_k}) via the Szego recursion, O(n).
/// (Phi, Phi*) are renormalized jointly whenever either modulus exceeds 1e150,
/// with the factored-out scale tracked in log space, so the recursion cannot
/// overflow; the reassembled value may still be +-inf if the true magnitude
/// exceeds double range.
cplx charpoly_eval(const VerblunskyCoeffs& coeffs, cplx z);

/// log |Phi_n(z)|, same recursion with the scale kept in log space throughout.
double charpoly_log_abs(const VerblunskyCoeffs& coeffs, cplx z);

/// All monic coefficients of Phi_n in descending-degree order:
/// c[0] = 1, and Phi_n(z) = sum_i c[i] z^{n-i}.  O(n^2).
std::vector<cplx> charpoly_coeffs(const VerblunskyCoeffs& coeffs);

/// Only the top `k` and bottom `k` descending-order coefficients of Phi_n,
/// in O(n*k): first = (c_0..c_{k-1}), second = (c_{n-k+1}..c_n).
/// Requires 1 <= k <= n.  Used when only low-order traces are needed.
std::pair<std::vector<cplx>, std::vector<cplx>> charpoly_top_bottom(
    const VerblunskyCoeffs& coeffs, int k);

/// Eigenangles of the unitary associated with Verblunsky coefficients, i.e.
/// the roots of Phi_n, via the companion-matrix eigensolve.  O(n^3); intended
/// for cross-validation at small n, not the fast path.
EigenangleSample angles_from_verblunsky(const VerblunskyCoeffs& coeffs);

}  // namespace cuelab
