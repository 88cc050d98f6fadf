#include "cuelab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuelab/extremes.hpp"
#include "cuelab/field.hpp"
#include "cuelab/multiscale.hpp"
#include "cuelab/parallel.hpp"
#include "cuelab/sampler.hpp"
#include "cuelab/toeplitz.hpp"

namespace cuelab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

const char* statistic_name(Statistic s) {
  switch (s) {
    case Statistic::max: return "max";
    case Statistic::highpoints: return "highpoints";
    case Statistic::freeenergy: return "freeenergy";
    case Statistic::rigidity: return "rigidity";
    case Statistic::ks_clt: return "ks-clt";
    case Statistic::covariance: return "covariance";
    case Statistic::exceedance: return "exceedance";
    case Statistic::tailmoment: return "tailmoment";
  }
  return "unknown";
}

Statistic parse_statistic(const std::string& name) {
  static const std::map<std::string, Statistic> table = {
      {"max", Statistic::max},
      {"highpoints", Statistic::highpoints},
      {"freeenergy", Statistic::freeenergy},
      {"rigidity", Statistic::rigidity},
      {"ks-clt", Statistic::ks_clt},
      {"covariance", Statistic::covariance},
      {"exceedance", Statistic::exceedance},
      {"tailmoment", Statistic::tailmoment},
  };
  const auto it = table.find(name);
  if (it == table.end())
    throw ConfigError("unknown statistic: " + name);
  return it->second;
}

SummaryStats summarize(const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("summarize: no values");
  SummaryStats s;
  s.count = static_cast<long long>(values.size());
  double acc = 0.0;
  for (double v : values) acc += v;
  s.mean = acc / static_cast<double>(s.count);
  double m2 = 0.0;
  for (double v : values) {
    const double d = v - s.mean;
    m2 += d * d;
  }
  s.variance = s.count > 1 ? m2 / static_cast<double>(s.count - 1) : 0.0;
  s.std_error = std::sqrt(s.variance / static_cast<double>(s.count));
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const std::array<double, 5> ps = {0.05, 0.25, 0.50, 0.75, 0.95};
  for (std::size_t i = 0; i < ps.size(); ++i) {
    // Nearest-rank: the ceil(p*count)-th smallest value, 1-indexed.
    long long rank = static_cast<long long>(
        std::ceil(ps[i] * static_cast<double>(s.count)));
    rank = std::max<long long>(1, std::min<long long>(rank, s.count));
    s.quantiles[i] = sorted[static_cast<std::size_t>(rank) - 1];
  }
  return s;
}

SummaryStats merge_stats(const SummaryStats& a, const SummaryStats& b) {
  SummaryStats s;
  s.count = a.count + b.count;
  if (s.count == 0) throw ConfigError("merge_stats: empty batches");
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double n = static_cast<double>(s.count);
  const double d = b.mean - a.mean;
  s.mean = a.mean + d * nb / n;
  const double m2 = a.variance * (na - 1.0) + b.variance * (nb - 1.0) +
                    d * d * na * nb / n;
  s.variance = s.count > 1 ? m2 / (n - 1.0) : 0.0;
  s.std_error = std::sqrt(s.variance / n);
  s.quantiles.fill(std::numeric_limits<double>::quiet_NaN());
  return s;
}

double ks_normal(std::vector<double> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("ks_normal: need at least 2 samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = 0.5 * std::erfc(-samples[i] / 1.4142135623730950488);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(hi - f, f - lo));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() || j < b.size()) {
    double v;
    if (i < a.size() && (j >= b.size() || a[i] <= b[j]))
      v = a[i];
    else
      v = b[j];
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return d;
}

namespace {

ExperimentId stream_id(Statistic s) {
  switch (s) {
    case Statistic::max: return ExperimentId::max;
    case Statistic::highpoints: return ExperimentId::highpoints;
    case Statistic::freeenergy: return ExperimentId::freeenergy;
    case Statistic::rigidity: return ExperimentId::rigidity;
    case Statistic::ks_clt: return ExperimentId::ks_clt;
    case Statistic::covariance: return ExperimentId::covariance;
    case Statistic::exceedance: return ExperimentId::exceedance;
    case Statistic::tailmoment: return ExperimentId::tailmoment;
  }
  return ExperimentId::generic;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 2) throw ConfigError("n must be >= 2");
  if (cfg.replicates < 1) throw ConfigError("replicates must be >= 1");
  if (cfg.grid_factor < 1) throw ConfigError("grid-factor must be >= 1");
  if (cfg.method != "qr" && cfg.method != "cmv")
    throw ConfigError("method must be 'qr' or 'cmv'");
  if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
  switch (cfg.statistic) {
    case Statistic::highpoints:
      if (!(cfg.gamma > 0.0) || !(cfg.gamma < 1.0))
        throw ConfigError("gamma must lie in (0, 1)");
      break;
    case Statistic::freeenergy:
      if (cfg.beta_list.empty()) throw ConfigError("beta list must be non-empty");
      for (double b : cfg.beta_list)
        if (b < 0.0) throw ConfigError("beta must be >= 0");
      if (cfg.grid_factor < 4)
        throw ConfigError("free energy requires grid-factor >= 4");
      break;
    case Statistic::exceedance:
      if (cfg.K < 3) throw ConfigError("exceedance requires K >= 3");
      break;
    case Statistic::covariance:
      if (cfg.l_scale < 1) throw ConfigError("scale index must be >= 1");
      if (w_range(cfg.l_scale).hi + 1 > cfg.n)
        throw ConfigError("scale block exceeds dimension n");
      if (cfg.delta < 0.0) throw ConfigError("delta offset must be >= 0");
      break;
    case Statistic::tailmoment:
      if (!(cfg.delta > 0.0) || !(cfg.delta < 1.0))
        throw ConfigError("tailmoment requires delta in (0, 1)");
      if (std::fabs(cfg.epsilon) > 3.0)
        throw ConfigError("tail exponent |a| must be <= 3 (passed via epsilon)");
      if (cfg.replicates < 1000)
        throw ConfigError("tailmoment requires >= 1000 replicates");
      break;
    default:
      break;
  }
}

FieldGrid full_field_for_rep(const ExperimentConfig& cfg, RngStream& rng) {
  const int m = cfg.grid_factor * cfg.n;
  if (cfg.method == "cmv") {
    const VerblunskyCoeffs vc = sample_haar_cmv(cfg.n, rng);
    return field_from_coeffs(charpoly_coeffs(vc), cfg.n, m);
  }
  const EigenangleSample s = sample_haar_qr(cfg.n, rng);
  return eval_full_field(s, m, FieldPart::real);
}

// Fine-block value W_l(h) from traces, summed directly over the block.
double w_block_at(const TraceVector& tv, int l, double h) {
  const ScaleRange r = w_range(l);
  double acc = 0.0;
  for (long long j = r.lo; j <= r.hi; ++j) {
    const double a = static_cast<double>(j) * h;
    const cplx w(std::cos(a), -std::sin(a));
    acc -= (w * tv.at(static_cast<int>(j))).real() / static_cast<double>(j);
  }
  return acc;
}

SummaryStats run_freeenergy(const ExperimentConfig& cfg) {
  const std::size_t nb = cfg.beta_list.size();
  std::vector<std::vector<double>> f(
      static_cast<std::size_t>(cfg.replicates), std::vector<double>(nb, 0.0));
  std::vector<double> top_frac(static_cast<std::size_t>(cfg.replicates), 0.0);
  parallel_for_index(cfg.replicates, cfg.threads, [&](long long r) {
    RngStream rng = derive_stream(cfg.seed, stream_id(cfg.statistic),
                                  static_cast<std::uint64_t>(r));
    const FieldGrid grid = full_field_for_rep(cfg, rng);
    double tf = 0.0;
    for (std::size_t i = 0; i < nb; ++i) {
      const FreeEnergyResult fe = free_energy(grid, cfg.beta_list[i]);
      f[static_cast<std::size_t>(r)][i] = fe.f;
      tf = std::max(tf, fe.top_cell_fraction);
    }
    top_frac[static_cast<std::size_t>(r)] = tf;
  });
  std::vector<double> primary(static_cast<std::size_t>(cfg.replicates));
  for (std::size_t r = 0; r < primary.size(); ++r) primary[r] = f[r][0];
  SummaryStats s = summarize(primary);
  for (std::size_t i = 0; i < nb; ++i) {
    std::vector<double> col(static_cast<std::size_t>(cfg.replicates));
    for (std::size_t r = 0; r < col.size(); ++r) col[r] = f[r][i];
    const SummaryStats cs = summarize(col);
    s.extra["f_mean_" + std::to_string(i)] = cs.mean;
    s.extra["f_stderr_" + std::to_string(i)] = cs.std_error;
  }
  // Per-draw shape in beta: monotone gaps and convexity of divided
  // differences (log-sum-exp is exactly convex; slack covers rounding).
  double mono = std::numeric_limits<double>::infinity();
  double convex = std::numeric_limits<double>::infinity();
  for (const auto& row : f) {
    for (std::size_t i = 0; i + 1 < nb; ++i)
      mono = std::min(mono, row[i + 1] - row[i]);
    for (std::size_t i = 0; i + 2 < nb; ++i) {
      const double s1 = (row[i + 1] - row[i]) /
                        (cfg.beta_list[i + 1] - cfg.beta_list[i]);
      const double s2 = (row[i + 2] - row[i + 1]) /
                        (cfg.beta_list[i + 2] - cfg.beta_list[i + 1]);
      convex = std::min(convex, s2 - s1);
    }
  }
  if (nb >= 2) s.extra["monotone_min_gap"] = mono;
  if (nb >= 3) s.extra["convexity_min_gap"] = convex;
  double tf = 0.0;
  for (double v : top_frac) tf = std::max(tf, v);
  s.extra["top_cell_fraction_max"] = tf;
  return s;
}

}  // namespace

SummaryStats run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const ExperimentId id = stream_id(cfg.statistic);
  const int R = cfg.replicates;

  if (cfg.statistic == Statistic::freeenergy) return run_freeenergy(cfg);

  if (cfg.statistic == Statistic::tailmoment) {
    const TailMomentResult tm = tail_exp_moment_mc(
        cfg.n, cfg.delta, cfg.epsilon, R, cfg.seed, cfg.threads);
    SummaryStats s = summarize(tm.values);
    s.extra["log_mean_exp"] = tm.estimate;
    s.extra["j_cut"] = static_cast<double>(tm.j_cut);
    s.extra["a"] = tm.a;
    return s;
  }

  std::vector<double> values(static_cast<std::size_t>(R), 0.0);
  std::vector<double> aux(static_cast<std::size_t>(R), 0.0);

  switch (cfg.statistic) {
    case Statistic::max:
      parallel_for_index(R, cfg.threads, [&](long long r) {
        RngStream rng = derive_stream(cfg.seed, id, static_cast<std::uint64_t>(r));
        values[static_cast<std::size_t>(r)] =
            field_max(full_field_for_rep(cfg, rng)).max_value;
      });
      break;

    case Statistic::highpoints: {
      // aux flags draws whose high-point set is empty at this resolution

      parallel_for_index(R, cfg.threads, [&](long long r) {
        RngStream rng = derive_stream(cfg.seed, id, static_cast<std::uint64_t>(r));
        const FieldGrid grid = full_field_for_rep(cfg, rng);
        double leb = high_points(grid, cfg.gamma).leb;
        if (leb == 0.0) {
          // Empty set at this resolution: clamp to half a grid cell so the
          // log is defined; counted in extra["leb_zero_count"].
          leb = kTwoPi * 0.5 / static_cast<double>(grid.m);
          aux[static_cast<std::size_t>(r)] = 1.0;
        }
        values[static_cast<std::size_t>(r)] =
            std::log(leb) / std::log(static_cast<double>(cfg.n));
      });
      break;
    }

    case Statistic::rigidity: {
      // aux = count_max / log n

      parallel_for_index(R, cfg.threads, [&](long long r) {
        RngStream rng = derive_stream(cfg.seed, id, static_cast<std::uint64_t>(r));
        const EigenangleSample s = cfg.method == "qr"
                                       ? sample_haar_qr(cfg.n, rng)
                                       : angles_from_verblunsky(
                                             sample_haar_cmv(cfg.n, rng));
        const RigidityResult rr = rigidity(s, cfg.grid_factor * cfg.n);
        values[static_cast<std::size_t>(r)] = rr.normalized;
        aux[static_cast<std::size_t>(r)] =
            rr.count_max / std::log(static_cast<double>(cfg.n));
      });
      break;
    }

    case Statistic::ks_clt: {
      const double scale = std::sqrt(0.5 * std::log(static_cast<double>(cfg.n)));
      parallel_for_index(R, cfg.threads, [&](long long r) {
        RngStream rng = derive_stream(cfg.seed, id, static_cast<std::uint64_t>(r));
        double v;
        if (cfg.method == "cmv") {
          v = charpoly_log_abs(sample_haar_cmv(cfg.n, rng), cplx(1.0, 0.0));
        } else {
          v = eval_full_field_at(sample_haar_qr(cfg.n, rng), 0.0,
                                 FieldPart::real);
        }
        values[static_cast<std::size_t>(r)] = v / scale;
      });
      break;
    }

    case Statistic::covariance: {
      const ScaleRange range = w_range(cfg.l_scale);
      const int J = static_cast<int>(range.hi);
      parallel_for_index(R, cfg.threads, [&](long long r) {
        RngStream rng = derive_stream(cfg.seed, id, static_cast<std::uint64_t>(r));
        TraceVector tv;
        if (cfg.method == "cmv") {
          const VerblunskyCoeffs vc = sample_haar_cmv(cfg.n, rng);
          const auto top = charpoly_top_bottom(vc, J + 1).first;
          tv = traces_from_coeffs(top, cfg.n, J);
        } else {
          tv = compute_traces(sample_haar_qr(cfg.n, rng), J);
        }
        values[static_cast<std::size_t>(r)] =
            w_block_at(tv, cfg.l_scale, 0.0) *
            w_block_at(tv, cfg.l_scale, cfg.delta);
      });
      break;
    }

    case Statistic::exceedance: {
      parallel_for_index(R, cfg.threads, [&](long long r) {
        RngStream rng = derive_stream(cfg.seed, id, static_cast<std::uint64_t>(r));
        const VerblunskyCoeffs vc = sample_haar_cmv(cfg.n, rng);
        const TraceVector tv =
            traces_from_coeffs(charpoly_coeffs(vc), cfg.n, cfg.n);
        const ScaleDecomposition dec = decompose(tv, cfg.K, cfg.n);
        values[static_cast<std::size_t>(r)] = static_cast<double>(
            count_exceedances(dec, cfg.epsilon).z_count);
      });
      break;
    }

    default:
      throw ConfigError("unhandled statistic");
  }

  SummaryStats s = summarize(values);
  switch (cfg.statistic) {
    case Statistic::highpoints: {
      double zeros = 0.0;
      for (double v : aux) zeros += v;
      s.extra["leb_zero_count"] = zeros;
      break;
    }
    case Statistic::rigidity: {
      const SummaryStats cs = summarize(aux);
      s.extra["count_ratio_mean"] = cs.mean;
      s.extra["count_ratio_stderr"] = cs.std_error;
      break;
    }
    case Statistic::ks_clt:
      s.extra["ks_normal"] = ks_normal(values);
      break;
    case Statistic::covariance: {
      const double exact = exact_cov_w(cfg.l_scale, cfg.delta);
      s.extra["exact_cov"] = exact;
      s.extra["abs_error"] = std::fabs(s.mean - exact);
      if (s.std_error > 0.0)
        s.extra["abs_error_over_stderr"] = std::fabs(s.mean - exact) / s.std_error;
      break;
    }
    case Statistic::exceedance: {
      double ge1 = 0.0;
      long double m1 = 0.0L, m2 = 0.0L;
      for (double v : values) {
        if (v >= 1.0) ge1 += 1.0;
        m1 += v;
        m2 += static_cast<long double>(v) * v;
      }
      s.extra["p_z_ge_1"] = ge1 / static_cast<double>(R);
      s.extra["threshold_x"] = (1.0 - cfg.epsilon / 2.0) *
                               std::log(static_cast<double>(cfg.n)) /
                               static_cast<double>(cfg.K);
      s.extra["second_moment_ratio"] =
          m2 > 0.0L ? static_cast<double>(m1 * m1 /
                                          (static_cast<long double>(R) * m2))
                    : std::numeric_limits<double>::quiet_NaN();
      break;
    }
    default:
      break;
  }
  return s;
}

std::vector<TrendRow> max_trend(const std::vector<int>& ns, int replicates,
                                int grid_factor, std::uint64_t seed,
                                const std::string& method, int threads) {
  if (ns.empty()) throw ConfigError("max_trend: empty dimension list");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 16)
      throw ConfigError("max_trend: dimensions must be >= 16");
    if (i > 0 && ns[i] <= ns[i - 1])
      throw ConfigError("max_trend: dimensions must be ascending");
  }
  std::vector<TrendRow> rows;
  rows.reserve(ns.size());
  for (int n : ns) {
    ExperimentConfig cfg;
    cfg.statistic = Statistic::max;
    cfg.n = n;
    cfg.replicates = replicates;
    cfg.seed = seed;
    cfg.grid_factor = grid_factor;
    cfg.method = method;
    cfg.threads = threads;
    const SummaryStats s = run_experiment(cfg);
    TrendRow row;
    row.n = n;
    row.mean_normalized = s.mean / std::log(static_cast<double>(n));
    row.stderr_normalized = s.std_error / std::log(static_cast<double>(n));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cuelab
