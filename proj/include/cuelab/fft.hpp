#pragma once
// Thin thread-safe wrapper around FFTW3 complex transforms.
//
// FFTW's planner is not thread-safe, so plan creation/destruction is guarded
// by a global mutex; execution runs unlocked on per-call buffers.  All
// transforms are unnormalized, matching the usual DFT conventions:
//   sign = -1 (forward):  X_t = sum_i x_i exp(-2*pi*i*I*t/len)
//   sign = +1 (backward): X_t = sum_i x_i exp(+2*pi*i*I*t/len)

#include <complex>
#include <vector>

namespace cuelab {

/// In-place unnormalized DFT of `data` with the given sign (-1 or +1).
void fft_inplace(std::vector<std::complex<double>>& data, int sign);

/// Convenience: forward DFT returning a new vector.
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x,
                                      int sign);

}  // namespace cuelab
