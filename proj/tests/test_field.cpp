// Unit tests for trace computation and the log-field evaluators: exact
// small-case values, the fold/FFT evaluation against direct summation, tail
// behavior of the truncated log kernel, branch conventions of the imaginary
// part, and the eigenvalue-counting identity.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

#include "cuelab/field.hpp"
#include "cuelab/rng.hpp"
#include "cuelab/sampler.hpp"

using namespace cuelab;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

EigenangleSample make_sample(std::vector<double> angles) {
  EigenangleSample s;
  s.n = static_cast<int>(angles.size());
  s.angles = std::move(angles);
  std::sort(s.angles.begin(), s.angles.end());
  return s;
}

double circ_dist(double a, double b) {
  double d = std::fabs(a - b);
  d = std::fmod(d, kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

TEST_CASE("traces of the one-point configuration at zero") {
  const EigenangleSample s = make_sample({0.0});
  const TraceVector tv = compute_traces(s, 3);
  REQUIRE(tv.j_max == 3);
  for (int j = 1; j <= 3; ++j) {
    CHECK(tv.at(j).real() == 1.0);
    CHECK(tv.at(j).imag() == 0.0);
  }
}

TEST_CASE("traces of the two-point configuration alternate") {
  const EigenangleSample s = make_sample({0.0, kPi});
  const TraceVector tv = compute_traces(s, 4);
  for (int j = 1; j <= 4; ++j) {
    const double expect = 1.0 + ((j % 2 == 0) ? 1.0 : -1.0);
    CHECK(std::abs(tv.at(j) - cplx(expect, 0.0)) <= 1e-12);
  }
}

TEST_CASE("low traces decorrelate at n = 64") {
  const int n = 64;
  const int reps = 10000;
  cplx cross(0.0, 0.0);
  double p2sq = 0.0;
  for (int r = 0; r < reps; ++r) {
    RngStream rng = derive_stream(103, ExperimentId::generic, r);
    const VerblunskyCoeffs vc = sample_haar_cmv(n, rng);
    const auto top = charpoly_top_bottom(vc, 4).first;
    const TraceVector tv = traces_from_coeffs(top, n, 3);
    cross += tv.at(2) * std::conj(tv.at(3));
    p2sq += std::norm(tv.at(2));
  }
  CHECK(std::abs(cross) / reps < 0.1);
  const double mean2 = p2sq / reps;
  CAPTURE(mean2);
  CHECK(mean2 > 1.85);
  CHECK(mean2 < 2.15);
}

TEST_CASE("truncated field approximates the one-point log kernel") {
  // One eigenvalue at pi, J = 10^4 terms on a 64-point grid.  The Abel tail
  // bound for sum_{j>J} cos(j x)/j is ~ 1/(2 J sin(x/2)); at the two grid
  // points nearest the singularity (x = pi/32) that bound is ~1.02e-3, so the
  // uniform 1e-3 band holds only away from those neighbors.  The singular
  // point itself (t = 32) has an infinite reference value and is excluded.
  const EigenangleSample s = make_sample({kPi});
  const TraceVector tv = compute_traces(s, 10000);
  const FieldGrid g = eval_truncated_field(tv, 10000, 64, FieldPart::real);
  for (int t = 0; t < 64; ++t) {
    if (t == 32) continue;
    const double h = kTwoPi * t / 64.0;
    const double ref = std::log(2.0 * std::fabs(std::sin(0.5 * (kPi - h))));
    const double err = std::fabs(g.values[static_cast<std::size_t>(t)] - ref);
    CAPTURE(t);
    if (t == 31 || t == 33)
      CHECK(err <= 1.25e-3);
    else
      CHECK(err <= 1e-3);
  }
}

TEST_CASE("truncated field within 1e-3 of the log kernel at every "
          "off-singularity point (documented discrepancy)" *
          doctest::should_fail()) {
  // Records that the literal uniform 1e-3 claim fails: the series tail at the
  // two points adjacent to the singularity is ~1.0177e-3.
  const EigenangleSample s = make_sample({kPi});
  const TraceVector tv = compute_traces(s, 10000);
  const FieldGrid g = eval_truncated_field(tv, 10000, 64, FieldPart::real);
  for (int t = 0; t < 64; ++t) {
    if (t == 32) continue;
    const double h = kTwoPi * t / 64.0;
    const double ref = std::log(2.0 * std::fabs(std::sin(0.5 * (kPi - h))));
    CHECK(std::fabs(g.values[static_cast<std::size_t>(t)] - ref) <= 1e-3);
  }
}

TEST_CASE("truncation bounds are enforced") {
  const EigenangleSample s = make_sample({1.0, 2.0});
  const TraceVector tv = compute_traces(s, 8);
  CHECK_THROWS_AS(eval_truncated_field(tv, 0, 16, FieldPart::real),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_truncated_field(tv, 9, 16, FieldPart::real),
                  std::invalid_argument);
}

TEST_CASE("single-term truncation matches the hand formula") {
  const EigenangleSample s = make_sample({kPi / 3.0});
  const TraceVector tv = compute_traces(s, 1);
  const FieldGrid g = eval_truncated_field(tv, 1, 4, FieldPart::real);
  for (int t = 0; t < 4; ++t) {
    const double h = kTwoPi * t / 4.0;
    const cplx w(std::cos(h), -std::sin(h));
    const double expect = -(w * tv.at(1)).real();
    CHECK(std::fabs(g.values[static_cast<std::size_t>(t)] - expect) <= 1e-14);
  }
}

TEST_CASE("imaginary truncated field at the quarter point") {
  // One eigenvalue at 0: the series sum_j sin(j h)/j converges to (pi - h)/2
  // on (0, 2pi), so the value at h = pi/2 is +pi/4.
  const EigenangleSample s = make_sample({0.0});
  const TraceVector tv = compute_traces(s, 100000);
  const FieldGrid g = eval_truncated_field(tv, 100000, 4, FieldPart::imaginary);
  CHECK(std::fabs(g.values[1] - kPi / 4.0) <= 1e-3);
}

TEST_CASE("imaginary truncated field equals minus pi over four at the quarter "
          "point (documented discrepancy)" *
          doctest::should_fail()) {
  // Records a sign error in the stated closed form: the series evaluates to
  // (pi - h)/2 = +pi/4 at h = pi/2, not (h - pi)/2 = -pi/4.  The positive
  // value also matches the full-field branch convention.
  const EigenangleSample s = make_sample({0.0});
  const TraceVector tv = compute_traces(s, 100000);
  const FieldGrid g = eval_truncated_field(tv, 100000, 4, FieldPart::imaginary);
  CHECK(std::fabs(g.values[1] - (-kPi / 4.0)) <= 1e-3);
}

TEST_CASE("full-field values at hand-checkable points") {
  const EigenangleSample one = make_sample({kPi});
  CHECK(std::fabs(eval_full_field_at(one, 0.0, FieldPart::real) -
                  std::log(2.0)) <= 1e-12);
  const EigenangleSample two = make_sample({0.0, kPi});
  CHECK(std::fabs(eval_full_field_at(two, kPi / 2.0, FieldPart::real) -
                  std::log(2.0)) <= 1e-12);
  // Grid version agrees with the pointwise version.
  const FieldGrid g = eval_full_field(two, 8, FieldPart::real);
  for (int t = 0; t < 8; ++t) {
    const double h = kTwoPi * t / 8.0;
    const double v = eval_full_field_at(two, h, FieldPart::real);
    if (std::isfinite(v))
      CHECK(std::fabs(g.values[static_cast<std::size_t>(t)] - v) <= 1e-12);
    else
      CHECK(!std::isfinite(g.values[static_cast<std::size_t>(t)]));
  }
}

TEST_CASE("truncated and full fields agree away from the eigenvalues") {
  // J = 200 n truncation vs the full field at all grid points further than
  // 1/n from every eigenangle.  There the kernel tail is below about
  // 1/(J * dist) = 0.005, well under the 0.05 budget.  (Points further than
  // 10/n would need a spectral gap over 20/n, about three mean gaps, which a
  // typical draw simply does not have.)
  const int n = 64;
  const int m = 1024;
  const int J = 200 * n;
  RngStream rng = derive_stream(107, ExperimentId::generic, 0);
  const EigenangleSample s = sample_haar_qr(n, rng);
  const TraceVector tv = compute_traces(s, J);
  const FieldGrid trunc = eval_truncated_field(tv, J, m, FieldPart::real);
  const FieldGrid full = eval_full_field(s, m, FieldPart::real);
  int qualifying = 0;
  for (int t = 0; t < m; ++t) {
    const double h = kTwoPi * t / m;
    double dmin = kTwoPi;
    for (double th : s.angles) dmin = std::min(dmin, circ_dist(h, th));
    if (dmin > 1.0 / n) {
      ++qualifying;
      CHECK(std::fabs(trunc.values[static_cast<std::size_t>(t)] -
                      full.values[static_cast<std::size_t>(t)]) <= 0.05);
    }
  }
  // Roughly two thirds of the circle sits further than 1/n from the spectrum.
  CHECK(qualifying > m / 4);
}

TEST_CASE("pre-folding the coefficients is exact") {
  const int n = 16;
  const int J = 137;
  const int m = 32;
  RngStream rng = derive_stream(109, ExperimentId::generic, 0);
  const EigenangleSample s = sample_haar_qr(n, rng);
  const TraceVector tv = compute_traces(s, J);
  // Fold c_j = -p_j/j into residue classes mod m, then rebuild a trace vector
  // whose truncated field at J' = m reproduces the original (the fold is the
  // identity the FFT path relies on).
  std::vector<cplx> cls(static_cast<std::size_t>(m), cplx(0.0, 0.0));
  for (int j = 1; j <= J; ++j)
    cls[static_cast<std::size_t>(j % m)] += tv.at(j) / static_cast<double>(j);
  TraceVector folded;
  folded.n = tv.n;
  folded.j_max = m;
  folded.p.resize(static_cast<std::size_t>(m));
  for (int r = 1; r < m; ++r)
    folded.p[static_cast<std::size_t>(r) - 1] =
        static_cast<double>(r) * cls[static_cast<std::size_t>(r)];
  folded.p[static_cast<std::size_t>(m) - 1] = static_cast<double>(m) * cls[0];
  for (FieldPart part : {FieldPart::real, FieldPart::imaginary}) {
    const FieldGrid a = eval_truncated_field(tv, J, m, part);
    const FieldGrid b = eval_truncated_field(folded, m, m, part);
    const FieldGrid c = eval_truncated_field_direct(tv, J, m, part);
    for (int t = 0; t < m; ++t) {
      CHECK(std::fabs(a.values[static_cast<std::size_t>(t)] -
                      b.values[static_cast<std::size_t>(t)]) <= 1e-12);
      CHECK(std::fabs(a.values[static_cast<std::size_t>(t)] -
                      c.values[static_cast<std::size_t>(t)]) <= 1e-9);
    }
  }
}

TEST_CASE("rotation by a grid step permutes the full field") {
  const int n = 8;
  const int m = 64;
  const int shift = 11;
  RngStream rng = derive_stream(111, ExperimentId::generic, 0);
  const EigenangleSample s = sample_haar_qr(n, rng);
  EigenangleSample rot = s;
  for (double& th : rot.angles) {
    th += kTwoPi * shift / m;
    if (th >= kTwoPi) th -= kTwoPi;
  }
  std::sort(rot.angles.begin(), rot.angles.end());
  const FieldGrid g0 = eval_full_field(s, m, FieldPart::real);
  const FieldGrid g1 = eval_full_field(rot, m, FieldPart::real);
  for (int t = 0; t < m; ++t) {
    const int src = (t - shift % m + m) % m;
    CHECK(std::fabs(g1.values[static_cast<std::size_t>(t)] -
                    g0.values[static_cast<std::size_t>(src)]) <= 1e-10);
  }
}

TEST_CASE("truncated fields have zero grid mean when m exceeds J") {
  const int n = 16;
  const int J = 50;
  const int m = 64;
  RngStream rng = derive_stream(113, ExperimentId::generic, 0);
  const EigenangleSample s = sample_haar_qr(n, rng);
  const TraceVector tv = compute_traces(s, J);
  for (FieldPart part : {FieldPart::real, FieldPart::imaginary}) {
    const FieldGrid g = eval_truncated_field(tv, J, m, part);
    double acc = 0.0;
    for (double v : g.values) acc += v;
    CHECK(std::fabs(acc / m) <= 1e-9);
  }
}

TEST_CASE("imaginary-field differences count eigenvalues exactly") {
  const int n = 64;
  RngStream rng = derive_stream(115, ExperimentId::generic, 0);
  const EigenangleSample s = sample_haar_qr(n, rng);
  // Signed angles in (-pi, pi] for the direct count.
  std::vector<double> signed_angles = s.angles;
  for (double& th : signed_angles)
    if (th > kPi) th -= kTwoPi;
  for (int trial = 0; trial < 100; ++trial) {
    double a = -kPi + kTwoPi * rng.uniform();
    double b = -kPi + kTwoPi * rng.uniform();
    if (a > b) std::swap(a, b);
    if (b - a < 1e-6) continue;
    long long direct = 0;
    for (double th : signed_angles)
      if (th > a && th < b) ++direct;
    const double fa = eval_full_field_at(s, a, FieldPart::imaginary);
    const double fb = eval_full_field_at(s, b, FieldPart::imaginary);
    const double via_field = n * (b - a) / kTwoPi + (fb - fa) / kPi;
    CAPTURE(a);
    CAPTURE(b);
    CHECK(std::llround(via_field) == direct);
    CHECK(std::fabs(via_field - std::llround(via_field)) <= 1e-6);
  }
}

TEST_CASE("fractional multiplication is exact on dyadic inputs") {
  CHECK(frac_mul(7, 0.5) == 0.5);
  CHECK(frac_mul(8, 0.5) == 0.0);
  CHECK(frac_mul(12345, 0.0) == 0.0);
  // Cross-check against long-double arithmetic on a large index.
  const double t = 1.0 / 3.0;
  const long long j = 1000000007LL;
  const long double prod = static_cast<long double>(j) * static_cast<long double>(t);
  const long double frac = prod - floorl(prod);
  CHECK(std::fabs(frac_mul(j, t) - static_cast<double>(frac)) <= 1e-9);
}
