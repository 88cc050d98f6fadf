#pragma once
// Dense complex linear algebra via LAPACK: Haar unitary construction,
// unitary eigenvalues, and pivoted-LU log-determinants.

#include <complex>
#include <cstdint>
#include <vector>

#include "cuelab/rng.hpp"

namespace cuelab {

using cplx = std::complex<double>;

/// Column-major n x n Haar-distributed unitary matrix.
/// Construction: QR of an n x n standard complex Ginibre matrix, with each
/// column of Q multiplied by the phase of the corresponding diagonal entry of
/// R.  Without the phase correction the QR factor is not Haar distributed.
/// Draw order: the Ginibre entries are filled column-major, one
/// complex_gaussian() per entry.
std::vector<cplx> haar_unitary(int n, RngStream& rng);

/// Eigenvalue phases of a (numerically) unitary matrix, in [0, 2*pi),
/// unsorted.  Dense nonsymmetric eigensolver (ZGEEV, eigenvalues only).
std::vector<double> unitary_eigenangles(std::vector<cplx> a, int n);

/// log |det A| of a general complex matrix via pivoted LU (ZGETRF).
/// Returns -inf for an exactly singular factorization.
double lu_log_abs_det(std::vector<cplx> a, int n);

}  // namespace cuelab
