#pragma once
// Reproducible Monte Carlo: per-replicate derived RNG streams, deterministic
// index-ordered aggregation (bit-identical for any worker count), summary
// statistics with nearest-rank quantiles, and distributional tests.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuelab/rng.hpp"

namespace cuelab {

/// Invalid configuration (maps to CLI exit code 2, unlike numeric failures).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Statistic {
  max,
  highpoints,
  freeenergy,
  rigidity,
  ks_clt,
  covariance,
  exceedance,
  tailmoment,
};

const char* statistic_name(Statistic s);
Statistic parse_statistic(const std::string& name);  // throws ConfigError

struct ExperimentConfig {
  Statistic statistic = Statistic::max;
  int n = 1024;
  int replicates = 100;
  std::uint64_t seed = 1;
  int grid_factor = 8;   // grid size m = grid_factor * n
  int K = 8;             // coarse scales (exceedance)
  double epsilon = 0.4;  // exceedance level parameter; tail exponent a for tailmoment
  double gamma = 0.5;    // high-point level
  std::vector<double> beta_list = {1.0};  // inverse temperatures (freeenergy)
  double delta = 0.5;    // truncation exponent; circle offset for covariance
  std::string method = "cmv";  // "qr" or "cmv"
  // Implementation extras (not part of the stream layout):
  int threads = 1;
  int l_scale = 4;  // fine-scale index l for covariance runs
};

struct SummaryStats {
  long long count = 0;
  double mean = 0.0;
  double variance = 0.0;   // unbiased
  double std_error = 0.0;  // sqrt(variance / count)
  std::array<double, 5> quantiles{};  // nearest-rank at 5, 25, 50, 75, 95 %
  std::map<std::string, double> extra;
};

/// Deterministic aggregation of index-ordered values.
SummaryStats summarize(const std::vector<double>& values);

/// Exact pairwise merge of two disjoint batches (count/mean/variance and
/// std_error only; quantiles of a merge are not defined and are set to NaN).
SummaryStats merge_stats(const SummaryStats& a, const SummaryStats& b);

/// One-sample Kolmogorov-Smirnov distance to the standard normal CDF
/// (both one-sided gaps at the sample points).
double ks_normal(std::vector<double> samples);

/// Two-sample Kolmogorov-Smirnov distance between empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Run one experiment: validates the config (ConfigError before any
/// sampling), executes replicates on cfg.threads workers with one derived
/// stream per replicate, and aggregates deterministically.  The `extra` map
/// carries statistic-specific outputs (documented in montecarlo.cpp).
SummaryStats run_experiment(const ExperimentConfig& cfg);

struct TrendRow {
  int n = 0;
  double mean_normalized = 0.0;   // mean max / log n
  double stderr_normalized = 0.0;
};

/// Normalized field-maximum trend over ascending dimensions (each >= 16).
std::vector<TrendRow> max_trend(const std::vector<int>& ns, int replicates,
                                int grid_factor, std::uint64_t seed,
                                const std::string& method = "cmv",
                                int threads = 1);

}  // namespace cuelab
