#include "cuelab/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace cuelab {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void fft_inplace(std::vector<std::complex<double>>& data, int sign) {
  if (data.empty()) return;
  if (sign != -1 && sign != 1) throw std::invalid_argument("fft: sign must be +-1");
  const int n = static_cast<int>(data.size());
  // FFTW guarantees std::complex<double> layout compatibility.
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, buf, buf, sign == -1 ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fft: planner failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x,
                                      int sign) {
  std::vector<std::complex<double>> out(x);
  fft_inplace(out, sign);
  return out;
}

}  // namespace cuelab
