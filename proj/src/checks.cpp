#include "cuelab/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cuelab/extremes.hpp"
#include "cuelab/field.hpp"
#include "cuelab/montecarlo.hpp"
#include "cuelab/multiscale.hpp"
#include "cuelab/parallel.hpp"
#include "cuelab/rng.hpp"
#include "cuelab/sampler.hpp"
#include "cuelab/toeplitz.hpp"

namespace cuelab {
namespace {

constexpr double kPi = 3.14159265358979323846;

template <typename... Args>
std::string strf(const char* format, Args... args) {
  const int len = std::snprintf(nullptr, 0, format, args...);
  std::string out(static_cast<std::size_t>(len), '\0');
  std::snprintf(out.data(), out.size() + 1, format, args...);
  return out;
}

int default_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(std::min(hc, 8u));
}

// ------------------------------------------------------------------ check 1
// Exact Toeplitz log-determinant of the pure singular symbol versus the
// Selberg closed form, all sizes up to 256, plus the integer anchors
// det_2 = 3, det_3 = 4 at alpha = 1 that pin the size convention.
CheckResult check_selberg_heine() {
  const double tol = 1e-6;
  double worst = 0.0;
  int worst_n = 0;
  double worst_alpha = 0.0;
  for (double alpha : {0.25, 0.5, 1.0, 1.5}) {
    const SymbolSpec spec = fh_symbol(alpha);
    for (int n = 1; n <= 256; ++n) {
      const ToeplitzResult tr = toeplitz_logdet(spec, n);
      const double ref = selberg_logdet(n, alpha);
      const double rel =
          std::fabs(tr.logdet - ref) / std::max(1.0, std::fabs(ref));
      if (rel > worst) {
        worst = rel;
        worst_n = n;
        worst_alpha = alpha;
      }
    }
  }
  const SymbolSpec unit = fh_symbol(1.0);
  const double d2 = std::exp(toeplitz_logdet(unit, 2).logdet);
  const double d3 = std::exp(toeplitz_logdet(unit, 3).logdet);
  const double e2 = std::fabs(d2 - 3.0) / 3.0;
  const double e3 = std::fabs(d3 - 4.0) / 4.0;
  const bool pass = worst < tol && e2 < tol && e3 < tol;
  return {1, check_name(1), pass,
          strf("worst rel gap %.3e at n=%d alpha=%.2f (tol %.0e) over "
               "n=1..256, alpha in {0.25,0.5,1,1.5}; anchors det_2->3 rel "
               "%.2e, det_3->4 rel %.2e",
               worst, worst_n, worst_alpha, tol, e2, e3)};
}

// ------------------------------------------------------------------ check 2
// At alpha = 1 the Selberg product telescopes to n + 1.
CheckResult check_second_moment() {
  const double tol = 1e-10;
  double worst = 0.0;
  int worst_n = 0;
  for (int n = 1; n <= 512; ++n) {
    const double gap = std::fabs(selberg_logdet(n, 1.0) - std::log(n + 1.0));
    if (gap > worst) {
      worst = gap;
      worst_n = n;
    }
  }
  return {2, check_name(2), worst < tol,
          strf("worst |logdet - log(n+1)| = %.3e at n=%d (tol %.0e), n<=512",
               worst, worst_n, tol)};
}

// ------------------------------------------------------------------ check 3
// Gaussian Laplace-transform prediction: log D_n(e^V) ~ sigma^2(V) for
// windowed log-kernel potentials whose support stays below n^{1-delta}.
CheckResult check_gaussian_laplace() {
  const int n = 512;
  const double delta = 0.5;
  const double tol = 0.05;
  const int j_max =
      static_cast<int>(std::floor(std::pow(double(n), 1.0 - delta) + 1e-9));
  SymbolSpec one;
  add_window(one, 1.0, 0.0, 1, j_max);
  const GaussianLaplaceResult g1 = gaussian_laplace_check(one, n, delta);
  SymbolSpec two;
  add_window(two, 1.0, 0.0, 1, j_max);
  add_window(two, 1.0, kPi, 1, j_max);
  const GaussianLaplaceResult g2 = gaussian_laplace_check(two, n, delta);
  const bool pass = g1.gap < tol && g2.gap < tol;
  return {3, check_name(3), pass,
          strf("single window gap %.3e (sigma2 %.6f), two-window gap %.3e "
               "(sigma2 %.6f); tol %.2f at n=%d, support j<=%d",
               g1.gap, g1.sigma2, g2.gap, g2.sigma2, tol, n, j_max)};
}

// ------------------------------------------------------------------ check 4
// Main-term prediction (Selberg + Gaussian + Wiener-Hopf cross term) against
// the exact determinant for a singular symbol dressed with a logarithmic
// potential.
CheckResult check_fh_prediction() {
  const int n = 256;
  const double alpha = 0.5;
  const double delta = 0.5;
  const double lambda = alpha;
  const double tol = 0.5;
  const int n0 =
      static_cast<int>(std::floor(std::pow(double(n), 1.0 - delta) + 1e-9));
  SymbolSpec spec = uext_symbol(lambda, n0);
  spec.alpha = alpha;
  const double pred = fh_prediction(spec, n, delta);
  const ToeplitzResult tr = toeplitz_logdet(spec, n);
  const double gap = std::fabs(pred - tr.logdet);
  const bool pass = tr.converged && gap < tol;
  return {4, check_name(4), pass,
          strf("prediction %.6f vs exact %.6f, gap %.4f (tol %.2f) at n=%d, "
               "alpha=%.2f, lambda=%.2f, support %d, q=%d%s",
               pred, tr.logdet, gap, tol, n, alpha, lambda, n0, tr.q_used,
               tr.converged ? "" : " [not converged]")};
}

// ------------------------------------------------------------------ check 5
// Two-regime envelope for the exact block covariance
//   cov_l(delta) = (1/2) sum_{j in W_l} cos(j delta) / j,  delta = e^{-t}:
// below the branching scale (l <= t) the block is asserted almost perfectly
// correlated, |cov - 1/2| <= 10 e^{l-t}; above it (l > t) the asserted
// envelope is second-power, |cov| <= 10 e^{-2(l-t)}.  Both literal
// inequalities are unattainable for the exact block sums and this check is
// expected to stay red (see README):
//  - fine regime: the block variance is (1/2) sum 1/j, which misses 1/2 by
//    O(e^{-l}) (block 1 is exactly 3/4).  That gap is a constant in t, so it
//    escapes any e^{l-t} envelope once t >> l.
//  - coarse regime: summation by parts on the sharp-edged block leaves a
//    boundary term ~ 1/(2 j_lo delta), first power in e^{-(l-t)}, not the
//    asserted second power.
CheckResult check_covariance_regimes() {
  constexpr int kScales = 20;
  constexpr double kC = 10.0;
  std::vector<double> cov(kScales * kScales);
  parallel_for_index(kScales * kScales, default_workers(), [&](long long idx) {
    const int l = 1 + static_cast<int>(idx) / kScales;
    const int t = 1 + static_cast<int>(idx) % kScales;
    cov[static_cast<std::size_t>(idx)] =
        exact_cov_w(l, std::exp(-double(t)));
  });
  int fine_total = 0, fine_fail = 0, coarse_total = 0, coarse_fail = 0;
  double worst_fine = 0.0, worst_coarse = 0.0;
  int wf_l = 0, wf_t = 0, wc_l = 0, wc_t = 0;
  for (int l = 1; l <= kScales; ++l) {
    for (int t = 1; t <= kScales; ++t) {
      const double c = cov[static_cast<std::size_t>((l - 1) * kScales + (t - 1))];
      if (l <= t) {
        ++fine_total;
        const double ratio = std::fabs(c - 0.5) / (kC * std::exp(double(l - t)));
        if (ratio > worst_fine) {
          worst_fine = ratio;
          wf_l = l;
          wf_t = t;
        }
        if (ratio > 1.0) ++fine_fail;
      } else {
        ++coarse_total;
        const double ratio =
            std::fabs(c) / (kC * std::exp(-2.0 * double(l - t)));
        if (ratio > worst_coarse) {
          worst_coarse = ratio;
          wc_l = l;
          wc_t = t;
        }
        if (ratio > 1.0) ++coarse_fail;
      }
    }
  }
  const bool pass = fine_fail == 0 && coarse_fail == 0;
  std::string why;
  if (fine_fail > 0)
    why += "; fine: the exact block variance misses 1/2 by O(e^{-l}) "
           "(block 1 is 3/4), a t-independent gap no e^{l-t} envelope "
           "absorbs";
  if (coarse_fail > 0)
    why += "; coarse: the sharp-block cosine sum decays first power in l-t "
           "(boundary term ~ 1/(2 j_lo delta)), not second power";
  if (!pass) why += " (deliberately left red; see README)";
  return {5, check_name(5), pass,
          strf("fine regime (l<=t): %d/%d violations of |cov-1/2| <= 10 "
               "e^{l-t}, worst ratio %.3e at (l=%d,t=%d); coarse regime "
               "(l>t): %d/%d violations of |cov| <= 10 e^{-2(l-t)}, worst "
               "ratio %.3e at (l=%d,t=%d)%s",
               fine_fail, fine_total, worst_fine, wf_l, wf_t, coarse_fail,
               coarse_total, worst_coarse, wc_l, wc_t, why.c_str())};
}

// ------------------------------------------------------------------ check 6
// FFT evaluation of the truncated field against direct summation, and
// exactness of the mod-m fold, on randomized small cases.
CheckResult check_fold_fft() {
  const double tol_direct = 1e-9;
  const double tol_fold = 1e-12;
  const int cases = 50;
  double worst_direct = 0.0, worst_fold = 0.0;
  int wd_case = 0, wf_case = 0;
  for (int c = 0; c < cases; ++c) {
    RngStream cfg_rng = derive_stream(1, ExperimentId::generic, 700000 + c);
    const int n = 2 + static_cast<int>(cfg_rng.next_u64() % 31);   // 2..32
    const int J = 1 + static_cast<int>(cfg_rng.next_u64() % 512);  // 1..512
    const int m = 4 + static_cast<int>(cfg_rng.next_u64() % 253);  // 4..256
    RngStream srng = derive_stream(1, ExperimentId::generic, 710000 + c);
    const EigenangleSample s = sample_haar_qr(n, srng);
    const TraceVector tv = compute_traces(s, J);
    // Pre-fold the coefficients -p_j/j by residue class mod m; evaluating the
    // folded vector must agree with the original to rounding error.
    std::vector<cplx> cls(static_cast<std::size_t>(m), cplx(0.0, 0.0));
    for (int j = 1; j <= J; ++j)
      cls[static_cast<std::size_t>(j % m)] +=
          tv.p[static_cast<std::size_t>(j) - 1] / double(j);
    TraceVector folded;
    folded.n = tv.n;
    folded.j_max = m;
    folded.p.resize(static_cast<std::size_t>(m));
    for (int r = 1; r < m; ++r)
      folded.p[static_cast<std::size_t>(r) - 1] =
          double(r) * cls[static_cast<std::size_t>(r)];
    folded.p[static_cast<std::size_t>(m) - 1] = double(m) * cls[0];
    for (FieldPart part : {FieldPart::real, FieldPart::imaginary}) {
      const FieldGrid fa = eval_truncated_field(tv, J, m, part);
      const FieldGrid fd = eval_truncated_field_direct(tv, J, m, part);
      const FieldGrid fb = eval_truncated_field(folded, m, m, part);
      for (int t = 0; t < m; ++t) {
        const double dd = std::fabs(fa.values[static_cast<std::size_t>(t)] -
                                    fd.values[static_cast<std::size_t>(t)]);
        const double df = std::fabs(fa.values[static_cast<std::size_t>(t)] -
                                    fb.values[static_cast<std::size_t>(t)]);
        if (dd > worst_direct) {
          worst_direct = dd;
          wd_case = c;
        }
        if (df > worst_fold) {
          worst_fold = df;
          wf_case = c;
        }
      }
    }
  }
  const bool pass = worst_direct < tol_direct && worst_fold < tol_fold;
  return {6, check_name(6), pass,
          strf("%d randomized cases (n<=32, J<=512, m<=256): worst "
               "FFT-vs-direct %.3e (tol %.0e, case %d), worst fold gap %.3e "
               "(tol %.0e, case %d)",
               cases, worst_direct, tol_direct, wd_case, worst_fold, tol_fold,
               wf_case)};
}

// ------------------------------------------------- checks 7..13 shared state
// The statistical checks are re-run by check 14 at different worker counts,
// so their collection routines take the worker count as a parameter and all
// their configs live in one place.

struct TraceMoments {
  static constexpr std::array<int, 5> js{1, 2, 32, 64, 128};
  std::array<std::vector<double>, 5> sq;  // |p_j|^2 per replicate
  std::vector<double> cross_re, cross_im;  // p_2 conj(p_3) per replicate
};

TraceMoments collect_trace_moments(int threads) {
  const int n = 64;
  const int j_top = 128;
  const long long reps = 10000;
  TraceMoments out;
  for (auto& v : out.sq) v.resize(static_cast<std::size_t>(reps));
  out.cross_re.resize(static_cast<std::size_t>(reps));
  out.cross_im.resize(static_cast<std::size_t>(reps));
  parallel_for_index(reps, threads, [&](long long r) {
    RngStream rng =
        derive_stream(1, ExperimentId::traces, static_cast<std::uint64_t>(r));
    const EigenangleSample s = sample_haar_qr(n, rng);
    const TraceVector tv = compute_traces(s, j_top);
    for (std::size_t i = 0; i < TraceMoments::js.size(); ++i) {
      const cplx p = tv.at(TraceMoments::js[i]);
      out.sq[i][static_cast<std::size_t>(r)] = std::norm(p);
    }
    const cplx cr = tv.at(2) * std::conj(tv.at(3));
    out.cross_re[static_cast<std::size_t>(r)] = cr.real();
    out.cross_im[static_cast<std::size_t>(r)] = cr.imag();
  });
  return out;
}

ExperimentConfig cfg_mean_max(int threads) {
  ExperimentConfig cfg;
  cfg.statistic = Statistic::max;
  cfg.n = 1024;
  cfg.replicates = 200;
  cfg.seed = 1;
  cfg.grid_factor = 8;
  cfg.method = "cmv";
  cfg.threads = threads;
  return cfg;
}

const std::vector<int>& trend_dims() {
  static const std::vector<int> dims{64, 256, 1024, 4096};
  return dims;
}

ExperimentConfig cfg_high_points(int threads) {
  ExperimentConfig cfg;
  cfg.statistic = Statistic::highpoints;
  cfg.n = 4096;
  cfg.replicates = 100;
  cfg.seed = 1;
  cfg.grid_factor = 8;
  cfg.gamma = 0.5;
  cfg.method = "cmv";
  cfg.threads = threads;
  return cfg;
}

ExperimentConfig cfg_freezing(int threads) {
  ExperimentConfig cfg;
  cfg.statistic = Statistic::freeenergy;
  cfg.n = 1024;
  cfg.replicates = 100;
  cfg.seed = 1;
  cfg.grid_factor = 32;
  cfg.beta_list = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  cfg.method = "cmv";
  cfg.threads = threads;
  return cfg;
}

ExperimentConfig cfg_rigidity(int threads) {
  ExperimentConfig cfg;
  cfg.statistic = Statistic::rigidity;
  cfg.n = 1024;
  cfg.replicates = 100;
  cfg.seed = 1;
  cfg.grid_factor = 8;
  cfg.method = "qr";
  cfg.threads = threads;
  return cfg;
}

ExperimentConfig cfg_clt(int threads) {
  ExperimentConfig cfg;
  cfg.statistic = Statistic::ks_clt;
  cfg.n = 1024;
  cfg.replicates = 2000;
  cfg.seed = 1;
  cfg.method = "cmv";
  cfg.threads = threads;
  return cfg;
}

ExperimentConfig cfg_tail_moment(int threads) {
  ExperimentConfig cfg;
  cfg.statistic = Statistic::tailmoment;
  cfg.n = 1024;
  cfg.replicates = 2000;
  cfg.seed = 1;
  cfg.delta = 0.5;
  cfg.epsilon = 0.5;  // tail exponent a
  cfg.method = "cmv";
  cfg.threads = threads;
  return cfg;
}

// ------------------------------------------------------------------ check 7
// Trace second moments: E|p_j|^2 = min(j, n) and distinct traces are
// uncorrelated.  QR route, so this also exercises the dense sampler.
CheckResult check_trace_covariance() {
  const TraceMoments tm = collect_trace_moments(default_workers());
  const long long reps = static_cast<long long>(tm.cross_re.size());
  bool pass = true;
  std::ostringstream detail;
  for (std::size_t i = 0; i < TraceMoments::js.size(); ++i) {
    const SummaryStats s = summarize(tm.sq[i]);
    const double target = std::min(TraceMoments::js[i], 64);
    const double dev = std::fabs(s.mean - target);
    const bool ok = dev <= 4.0 * s.std_error;
    pass = pass && ok;
    detail << strf("E|p_%d|^2 = %.3f (target %.0f, %.2f se)%s; ",
                   TraceMoments::js[i], s.mean, target,
                   s.std_error > 0 ? dev / s.std_error : 0.0,
                   ok ? "" : " FAIL");
  }
  const SummaryStats sre = summarize(tm.cross_re);
  const SummaryStats sim = summarize(tm.cross_im);
  const double mod = std::hypot(sre.mean, sim.mean);
  const double se =
      std::sqrt((sre.variance + sim.variance) / double(reps));
  const bool cross_ok = mod < 4.0 * se;
  pass = pass && cross_ok;
  detail << strf("|E p_2 conj(p_3)| = %.4f (%.2f se, need < 4)%s", mod,
                 se > 0 ? mod / se : 0.0, cross_ok ? "" : " FAIL");
  return {7, check_name(7), pass, detail.str()};
}

// ------------------------------------------------------------------ check 8
// Leading order of the field maximum: the mean at n = 1024 sits between
// log n - 1.5 log log n and log n, and the normalized trend over
// n = 64..4096 is non-decreasing within twice the combined standard error.
CheckResult check_mean_max() {
  const ExperimentConfig cfg = cfg_mean_max(default_workers());
  const SummaryStats s = run_experiment(cfg);
  const double hi = std::log(double(cfg.n));
  const double lo = hi - 1.5 * std::log(hi);
  const bool band_ok = s.mean >= lo && s.mean <= hi;
  const std::vector<TrendRow> trend =
      max_trend(trend_dims(), 200, 8, 1, "cmv", default_workers());
  bool trend_ok = true;
  std::ostringstream tdesc;
  for (std::size_t i = 0; i + 1 < trend.size(); ++i) {
    const double gap = trend[i + 1].mean_normalized - trend[i].mean_normalized;
    const double slack = 2.0 * std::hypot(trend[i].stderr_normalized,
                                          trend[i + 1].stderr_normalized);
    const bool ok = gap >= -slack;
    trend_ok = trend_ok && ok;
    tdesc << strf("%d->%d: %+.4f (slack %.4f)%s ", trend[i].n, trend[i + 1].n,
                  gap, slack, ok ? "" : " FAIL");
  }
  const bool pass = band_ok && trend_ok;
  return {8, check_name(8), pass,
          strf("mean max %.4f in [%.4f, %.4f]%s over %d replicates at n=%d; "
               "normalized trend steps: %s",
               s.mean, lo, hi, band_ok ? "" : " FAIL", cfg.replicates, cfg.n,
               tdesc.str().c_str())};
}

// ------------------------------------------------------------------ check 9
// Lebesgue measure of gamma-high points: median of log Leb / log n near
// -gamma^2 (here -0.25) within +-0.2.
CheckResult check_high_points() {
  const ExperimentConfig cfg = cfg_high_points(default_workers());
  const SummaryStats s = run_experiment(cfg);
  const double median = s.quantiles[2];
  const double target = -(cfg.gamma * cfg.gamma);
  const double tol = 0.2;
  const bool pass = std::fabs(median - target) <= tol;
  return {9, check_name(9), pass,
          strf("median log(leb)/log(n) = %.4f (target %.2f +- %.2f) at "
               "n=%d, gamma=%.2f, %d replicates",
               median, target, tol, cfg.n, cfg.gamma, cfg.replicates)};
}

// ----------------------------------------------------------------- check 10
// Freezing of the free energy: mean f(1) near 1.25, mean f(4) near 4 (the
// frozen linear-in-beta regime), and per-draw convexity in beta.
CheckResult check_freezing() {
  const ExperimentConfig cfg = cfg_freezing(default_workers());
  const SummaryStats s = run_experiment(cfg);
  const double f1 = s.extra.at("f_mean_2");   // beta = 1.0
  const double f4 = s.extra.at("f_mean_8");   // beta = 4.0
  const double convex = s.extra.at("convexity_min_gap");
  const bool b1 = std::fabs(f1 - 1.25) <= 0.35;
  const bool b4 = std::fabs(f4 - 4.0) <= 0.6;
  const bool cx = convex >= -1e-9;
  const bool pass = b1 && b4 && cx;
  return {10, check_name(10), pass,
          strf("mean f(beta=1) = %.4f (1.25 +- 0.35)%s; mean f(beta=4) = "
               "%.4f (4.00 +- 0.60)%s; per-draw convexity min gap %.2e "
               "(>= -1e-09)%s; n=%d, %d replicates",
               f1, b1 ? "" : " FAIL", f4, b4 ? "" : " FAIL", convex,
               cx ? "" : " FAIL", cfg.n, cfg.replicates)};
}

// ----------------------------------------------------------------- check 11
// Eigenangle rigidity: mean of n sup_k |theta_(k) - 2 pi k / n| / log n in
// [1.2, 2.8]; mean of the counting-function maximum over log n near 1/pi.
CheckResult check_rigidity() {
  const ExperimentConfig cfg = cfg_rigidity(default_workers());
  const SummaryStats s = run_experiment(cfg);
  const bool band_ok = s.mean >= 1.2 && s.mean <= 2.8;
  const double cr = s.extra.at("count_ratio_mean");
  const double target = 1.0 / kPi;
  const bool count_ok = std::fabs(cr - target) <= 0.15;
  const bool pass = band_ok && count_ok;
  return {11, check_name(11), pass,
          strf("mean normalized rigidity %.4f in [1.2, 2.8]%s; counting-max "
               "mean / log n = %.4f (1/pi = %.4f +- 0.15)%s; n=%d, %d "
               "replicates",
               s.mean, band_ok ? "" : " FAIL", cr, target,
               count_ok ? "" : " FAIL", cfg.n, cfg.replicates)};
}

// ----------------------------------------------------------------- check 12
// CLT marginal: log|P_n(1)| / sqrt((1/2) log n) is near standard normal in
// Kolmogorov-Smirnov distance.
CheckResult check_clt_marginal() {
  const ExperimentConfig cfg = cfg_clt(default_workers());
  const SummaryStats s = run_experiment(cfg);
  const double ks = s.extra.at("ks_normal");
  const double tol = 0.15;
  const bool pass = ks < tol;
  return {12, check_name(12), pass,
          strf("KS distance to N(0,1) = %.4f (tol %.2f) over %d replicates "
               "at n=%d",
               ks, tol, cfg.replicates, cfg.n)};
}

// ----------------------------------------------------------------- check 13
// Tail exponential moment: log E exp(2a * tail) near a^2 delta log n.
CheckResult check_tail_moment() {
  const ExperimentConfig cfg = cfg_tail_moment(default_workers());
  const SummaryStats s = run_experiment(cfg);
  const double est = s.extra.at("log_mean_exp");
  const double a = cfg.epsilon;
  const double target = a * a * cfg.delta * std::log(double(cfg.n));
  const double tol = 0.5;
  const bool pass = std::fabs(est - target) <= tol;
  return {13, check_name(13), pass,
          strf("log mean exp(2a tail) = %.4f (target %.4f +- %.2f) at n=%d, "
               "a=%.2f, delta=%.2f, %d replicates, prefix cut j<=%.0f",
               est, target, tol, cfg.n, a, cfg.delta, cfg.replicates,
               s.extra.at("j_cut"))};
}

// ----------------------------------------------------------------- check 14
// Worker-count independence: every statistical run above, serialized to
// hexfloat, must be byte-identical across different thread counts.
std::string hexd(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

void put_summary(std::ostringstream& os, const char* label,
                 const SummaryStats& s) {
  os << label << ' ' << s.count << ' ' << hexd(s.mean) << ' '
     << hexd(s.variance) << ' ' << hexd(s.std_error);
  for (double q : s.quantiles) os << ' ' << hexd(q);
  for (const auto& [key, value] : s.extra) os << ' ' << key << '=' << hexd(value);
  os << '\n';
}

std::string statistical_fingerprint(int threads) {
  std::ostringstream os;
  const TraceMoments tm = collect_trace_moments(threads);
  for (std::size_t i = 0; i < TraceMoments::js.size(); ++i)
    put_summary(os, "traces.sq", summarize(tm.sq[i]));
  put_summary(os, "traces.cross_re", summarize(tm.cross_re));
  put_summary(os, "traces.cross_im", summarize(tm.cross_im));
  put_summary(os, "max", run_experiment(cfg_mean_max(threads)));
  for (const TrendRow& row : max_trend(trend_dims(), 200, 8, 1, "cmv", threads))
    os << "trend " << row.n << ' ' << hexd(row.mean_normalized) << ' '
       << hexd(row.stderr_normalized) << '\n';
  put_summary(os, "highpoints", run_experiment(cfg_high_points(threads)));
  put_summary(os, "freeenergy", run_experiment(cfg_freezing(threads)));
  put_summary(os, "rigidity", run_experiment(cfg_rigidity(threads)));
  put_summary(os, "ks-clt", run_experiment(cfg_clt(threads)));
  put_summary(os, "tailmoment", run_experiment(cfg_tail_moment(threads)));
  return os.str();
}

CheckResult check_reproducibility() {
  const std::string a = statistical_fingerprint(2);
  const std::string b = statistical_fingerprint(7);
  if (a == b) {
    return {14, check_name(14), true,
            strf("statistical fingerprints (%zu bytes, hexfloat) "
                 "byte-identical across worker counts 2 and 7",
                 a.size())};
  }
  std::size_t pos = 0;
  const std::size_t limit = std::min(a.size(), b.size());
  while (pos < limit && a[pos] == b[pos]) ++pos;
  return {14, check_name(14), false,
          strf("fingerprints differ at byte %zu (sizes %zu vs %zu), worker "
               "counts 2 vs 7",
               pos, a.size(), b.size())};
}

}  // namespace

std::vector<int> all_check_ids() {
  std::vector<int> ids(14);
  for (int i = 0; i < 14; ++i) ids[static_cast<std::size_t>(i)] = i + 1;
  return ids;
}

std::string check_name(int id) {
  switch (id) {
    case 1: return "selberg-heine";
    case 2: return "selberg-second-moment";
    case 3: return "gaussian-laplace";
    case 4: return "fisher-hartwig-prediction";
    case 5: return "covariance-regimes";
    case 6: return "fold-fft-agreement";
    case 7: return "trace-covariance";
    case 8: return "mean-max";
    case 9: return "high-points";
    case 10: return "freezing";
    case 11: return "rigidity";
    case 12: return "clt-marginal";
    case 13: return "tail-moment";
    case 14: return "reproducibility";
    default: throw std::out_of_range("unknown check id");
  }
}

CheckResult run_check(int id) {
  switch (id) {
    case 1: return check_selberg_heine();
    case 2: return check_second_moment();
    case 3: return check_gaussian_laplace();
    case 4: return check_fh_prediction();
    case 5: return check_covariance_regimes();
    case 6: return check_fold_fft();
    case 7: return check_trace_covariance();
    case 8: return check_mean_max();
    case 9: return check_high_points();
    case 10: return check_freezing();
    case 11: return check_rigidity();
    case 12: return check_clt_marginal();
    case 13: return check_tail_moment();
    case 14: return check_reproducibility();
    default: throw std::out_of_range("unknown check id");
  }
}

}  // namespace cuelab
