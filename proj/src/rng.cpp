#include "cuelab/rng.hpp"

namespace cuelab {

bool validate_stream_layout() {
  // SplitMix64 reference outputs for initial state 0.
  std::uint64_t x = 0;
  if (splitmix64(x) != 0xe220a8397b1dcdafULL) return false;
  if (splitmix64(x) != 0x6e789e6aa1b965f4ULL) return false;
  if (splitmix64(x) != 0x06c45d188009454fULL) return false;
  // The 10000th draw of a default-constructed mt19937_64 is pinned by the
  // language standard; it fails if the engine is ever swapped out.
  std::mt19937_64 eng;
  for (int i = 0; i < 9999; ++i) eng();
  if (eng() != 9981545732273789042ULL) return false;
  // End-to-end: first output of the (seed 1, experiment max, replicate 0)
  // stream, frozen when the layout version was set to "1".
  RngStream s = derive_stream(1, ExperimentId::max, 0);
  return s.next_u64() == 0x39714bd8041cf2d4ULL;
}

}  // namespace cuelab
