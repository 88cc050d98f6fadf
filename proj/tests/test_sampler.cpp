// Unit tests for the CUE samplers and the Szego-recursion characteristic
// polynomial: distributional anchors with generous Monte Carlo bands,
// cross-validation of the CMV route against the QR route, and exact
// small-case values.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "cuelab/field.hpp"
#include "cuelab/montecarlo.hpp"
#include "cuelab/rng.hpp"
#include "cuelab/sampler.hpp"

using namespace cuelab;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

double largest_gap(const std::vector<double>& sorted_angles) {
  double g = sorted_angles.front() + kTwoPi - sorted_angles.back();
  for (std::size_t i = 0; i + 1 < sorted_angles.size(); ++i)
    g = std::max(g, sorted_angles[i + 1] - sorted_angles[i]);
  return g;
}

double log_abs_at_one_qr(const EigenangleSample& s) {
  return eval_full_field_at(s, 0.0, FieldPart::real);
}

}  // namespace

TEST_CASE("rejects dimension zero") {
  RngStream rng = derive_stream(1, ExperimentId::generic, 0);
  CHECK_THROWS_AS(sample_haar_qr(0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_haar_cmv(0, rng), std::invalid_argument);
}

TEST_CASE("single eigenvalue has uniform phase") {
  const int reps = 10000;
  cplx acc(0.0, 0.0);
  for (int r = 0; r < reps; ++r) {
    RngStream rng = derive_stream(101, ExperimentId::generic, r);
    const EigenangleSample s = sample_haar_qr(1, rng);
    REQUIRE(s.n == 1);
    REQUIRE(s.angles.size() == 1);
    CHECK(s.angles[0] >= 0.0);
    CHECK(s.angles[0] < kTwoPi);
    acc += cplx(std::cos(s.angles[0]), std::sin(s.angles[0]));
  }
  CHECK(std::abs(acc) / reps < 0.05);
}

TEST_CASE("first trace has unit mean squared modulus at n = 64") {
  const int reps = 10000;
  const int n = 64;
  double acc = 0.0;
  for (int r = 0; r < reps; ++r) {
    RngStream rng = derive_stream(21, ExperimentId::generic, r);
    const EigenangleSample s = sample_haar_qr(n, rng);
    double re = 0.0, im = 0.0;
    for (double th : s.angles) {
      re += std::cos(th);
      im += std::sin(th);
    }
    acc += re * re + im * im;
  }
  const double mean = acc / reps;
  CHECK(mean > 0.9);
  CHECK(mean < 1.1);
}

TEST_CASE("mean squared characteristic polynomial at one is n + 1 (QR)") {
  const int n = 16;
  const int reps = 5000;
  double acc = 0.0;
  for (int r = 0; r < reps; ++r) {
    RngStream rng = derive_stream(31, ExperimentId::generic, r);
    const EigenangleSample s = sample_haar_qr(n, rng);
    acc += std::exp(2.0 * log_abs_at_one_qr(s));
  }
  const double mean = acc / reps;
  const double center = n + 1.0;
  const double half = center * 5.0 * n / std::sqrt(12.0 * reps);
  CAPTURE(mean);
  CHECK(mean > center - half);
  CHECK(mean < center + half);
}

TEST_CASE("mean squared characteristic polynomial at one is n + 1 (CMV)") {
  const int n = 16;
  const int reps = 5000;
  double acc = 0.0;
  for (int r = 0; r < reps; ++r) {
    RngStream rng = derive_stream(33, ExperimentId::generic, r);
    const VerblunskyCoeffs vc = sample_haar_cmv(n, rng);
    acc += std::exp(2.0 * charpoly_log_abs(vc, cplx(1.0, 0.0)));
  }
  const double mean = acc / reps;
  const double center = n + 1.0;
  const double half = center * 5.0 * n / std::sqrt(12.0 * reps);
  CAPTURE(mean);
  CHECK(mean > center - half);
  CHECK(mean < center + half);
}

TEST_CASE("one-dimensional Verblunsky coefficient is a circle point") {
  cplx acc(0.0, 0.0);
  for (int r = 0; r < 10000; ++r) {
    RngStream rng = derive_stream(35, ExperimentId::generic, r);
    const VerblunskyCoeffs vc = sample_haar_cmv(1, rng);
    REQUIRE(vc.alpha.size() == 1);
    CHECK(std::fabs(std::abs(vc.alpha[0]) - 1.0) <= 1e-14);
    if (r < 100) {
      // Phi_1(z) = z - conj(alpha_0) at a few points.
      const cplx a = std::conj(vc.alpha[0]);
      CHECK(std::abs(charpoly_eval(vc, cplx(1.0, 0.0)) - (cplx(1.0, 0.0) - a)) <=
            1e-14);
      CHECK(std::abs(charpoly_eval(vc, cplx(0.0, 1.0)) - (cplx(0.0, 1.0) - a)) <=
            1e-14);
    }
    acc += std::conj(vc.alpha[0]);  // the single root
  }
  CHECK(std::abs(acc) / 10000.0 < 0.05);
}

TEST_CASE("CMV and QR values agree in distribution at z = 1") {
  const int n = 16;
  const int reps = 5000;
  std::vector<double> cmv_vals, qr_vals;
  cmv_vals.reserve(reps);
  qr_vals.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    RngStream rng = derive_stream(37, ExperimentId::generic, r);
    cmv_vals.push_back(charpoly_log_abs(sample_haar_cmv(n, rng), cplx(1.0, 0.0)));
  }
  for (int r = 0; r < reps; ++r) {
    RngStream rng = derive_stream(38, ExperimentId::generic, r);
    qr_vals.push_back(log_abs_at_one_qr(sample_haar_qr(n, rng)));
  }
  const double d = ks_two_sample(cmv_vals, qr_vals);
  CAPTURE(d);
  CHECK(d < 0.05);
}

TEST_CASE("hand value of the one-dimensional polynomial") {
  VerblunskyCoeffs vc;
  vc.n = 1;
  vc.alpha = {cplx(-1.0, 0.0)};
  const cplx v = charpoly_eval(vc, cplx(1.0, 0.0));
  CHECK(std::abs(v - cplx(2.0, 0.0)) <= 1e-15);
}

TEST_CASE("polynomial matches the root product at n = 4") {
  RngStream rng = derive_stream(41, ExperimentId::generic, 0);
  const VerblunskyCoeffs vc = sample_haar_cmv(4, rng);
  const EigenangleSample roots = angles_from_verblunsky(vc);
  REQUIRE(roots.n == 4);
  for (int i = 0; i < 10; ++i) {
    const double phi = kTwoPi * rng.uniform();
    const cplx z(std::cos(phi), std::sin(phi));
    double prod = 1.0;
    for (double th : roots.angles)
      prod *= std::abs(z - cplx(std::cos(th), std::sin(th)));
    CHECK(std::fabs(std::abs(charpoly_eval(vc, z)) - prod) <= 1e-8);
  }
}

TEST_CASE("polynomial at zero has unit modulus") {
  for (int n : {1, 3, 16, 64}) {
    RngStream rng = derive_stream(43, ExperimentId::generic, n);
    const VerblunskyCoeffs vc = sample_haar_cmv(n, rng);
    CHECK(std::fabs(std::abs(charpoly_eval(vc, cplx(0.0, 0.0))) - 1.0) <= 1e-12);
  }
}

TEST_CASE("trace moduli never exceed the dimension") {
  const int n = 32;
  RngStream rng = derive_stream(51, ExperimentId::generic, 0);
  const EigenangleSample s = sample_haar_qr(n, rng);
  const TraceVector tv = compute_traces(s, 200);
  for (int j = 1; j <= 200; ++j)
    CHECK(std::abs(tv.at(j)) <= n + 1e-9);
}

TEST_CASE("rotating the spectrum preserves trace moduli and the grid maximum") {
  const int n = 8;
  const int m = 128;
  RngStream rng = derive_stream(61, ExperimentId::generic, 0);
  const EigenangleSample s = sample_haar_qr(n, rng);

  // Arbitrary rotation: trace moduli are invariant.
  const double phi = 0.7368421052631579;
  EigenangleSample rot = s;
  for (double& th : rot.angles) {
    th += phi;
    if (th >= kTwoPi) th -= kTwoPi;
  }
  std::sort(rot.angles.begin(), rot.angles.end());
  const TraceVector t0 = compute_traces(s, 16);
  const TraceVector t1 = compute_traces(rot, 16);
  for (int j = 1; j <= 16; ++j)
    CHECK(std::fabs(std::abs(t0.at(j)) - std::abs(t1.at(j))) <= 1e-10);

  // Grid-compatible rotation: the full-field maximum is invariant.
  const int shift = 37;
  EigenangleSample rotg = s;
  for (double& th : rotg.angles) {
    th += kTwoPi * shift / m;
    if (th >= kTwoPi) th -= kTwoPi;
  }
  std::sort(rotg.angles.begin(), rotg.angles.end());
  const FieldGrid g0 = eval_full_field(s, m, FieldPart::real);
  const FieldGrid g1 = eval_full_field(rotg, m, FieldPart::real);
  const double max0 = *std::max_element(g0.values.begin(), g0.values.end());
  const double max1 = *std::max_element(g1.values.begin(), g1.values.end());
  CHECK(std::fabs(max0 - max1) <= 1e-10);
}

TEST_CASE("identical stream coordinates reproduce identical samples") {
  {
    RngStream a = derive_stream(5, ExperimentId::sample, 9);
    RngStream b = derive_stream(5, ExperimentId::sample, 9);
    const EigenangleSample sa = sample_haar_qr(16, a);
    const EigenangleSample sb = sample_haar_qr(16, b);
    REQUIRE(sa.angles.size() == sb.angles.size());
    for (std::size_t i = 0; i < sa.angles.size(); ++i)
      CHECK(sa.angles[i] == sb.angles[i]);
  }
  {
    RngStream a = derive_stream(5, ExperimentId::sample, 9);
    RngStream b = derive_stream(5, ExperimentId::sample, 9);
    const VerblunskyCoeffs ca = sample_haar_cmv(16, a);
    const VerblunskyCoeffs cb = sample_haar_cmv(16, b);
    REQUIRE(ca.alpha.size() == cb.alpha.size());
    for (std::size_t i = 0; i < ca.alpha.size(); ++i)
      CHECK(ca.alpha[i] == cb.alpha[i]);
  }
  {
    RngStream a = derive_stream(5, ExperimentId::sample, 9);
    RngStream b = derive_stream(5, ExperimentId::sample, 10);
    const EigenangleSample sa = sample_haar_qr(16, a);
    const EigenangleSample sb = sample_haar_qr(16, b);
    CHECK(sa.angles != sb.angles);
  }
}

TEST_CASE("largest-gap distribution agrees between the two samplers") {
  for (int n : {8, 16}) {
    const int reps = 5000;
    std::vector<double> qr_gaps, cmv_gaps;
    qr_gaps.reserve(reps);
    cmv_gaps.reserve(reps);
    for (int r = 0; r < reps; ++r) {
      RngStream rng = derive_stream(71 + n, ExperimentId::generic, r);
      qr_gaps.push_back(largest_gap(sample_haar_qr(n, rng).angles));
    }
    for (int r = 0; r < reps; ++r) {
      RngStream rng = derive_stream(91 + n, ExperimentId::generic, r);
      cmv_gaps.push_back(
          largest_gap(angles_from_verblunsky(sample_haar_cmv(n, rng)).angles));
    }
    const double d = ks_two_sample(qr_gaps, cmv_gaps);
    CAPTURE(n);
    CAPTURE(d);
    CHECK(d < 0.05);
  }
}

TEST_CASE("Verblunsky moduli satisfy the defining constraints") {
  for (int n : {2, 5, 33}) {
    RngStream rng = derive_stream(55, ExperimentId::generic, n);
    const VerblunskyCoeffs vc = sample_haar_cmv(n, rng);
    REQUIRE(vc.alpha.size() == static_cast<std::size_t>(n));
    for (int k = 0; k + 1 < n; ++k)
      CHECK(std::abs(vc.alpha[static_cast<std::size_t>(k)]) < 1.0);
    CHECK(std::fabs(std::abs(vc.alpha[static_cast<std::size_t>(n) - 1]) - 1.0) <=
          1e-14);
  }
}
