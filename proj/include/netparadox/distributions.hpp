#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netparadox/rng.hpp"
#include "netparadox/types.hpp"

namespace netparadox {

struct Exponential {
  double rate;
};
struct LogNormal {
  double mu;
  double sigma;
};
/// Survival function (x_min / x)^alpha for x >= x_min.
struct Pareto {
  double alpha;
  double x_min;
};

/// A validated heavy-tailed distribution.
class DistributionSpec {
 public:
  using Params = std::variant<Exponential, LogNormal, Pareto>;

  /// Throws SpecError unless rate, sigma, alpha and x_min are positive and finite.
  explicit DistributionSpec(Params params);

  static DistributionSpec exponential(double rate) { return DistributionSpec(Exponential{rate}); }
  static DistributionSpec lognormal(double mu, double sigma) {
    return DistributionSpec(LogNormal{mu, sigma});
  }
  static DistributionSpec pareto(double alpha, double x_min) {
    return DistributionSpec(Pareto{alpha, x_min});
  }

  /// Parses "exponential:RATE", "lognormal:MU,SIGMA" or "pareto:ALPHA,XMIN".
  static DistributionSpec parse(std::string_view text);

  const Params& params() const noexcept { return params_; }
  /// "exponential", "lognormal" or "pareto".
  std::string family() const;
  /// Round-trippable form accepted by parse().
  std::string to_string() const;

  double draw(Engine& eng) const;
  double cdf(double x) const;

 private:
  Params params_;
};

struct Moments {
  double mean;
  double median;
};

/// Closed-form median: ln2/rate, exp(mu), x_min * 2^(1/alpha).
double analytic_median(const DistributionSpec& dist);

/// Closed-form mean and median. Throws UndefinedMeanError for Pareto alpha <= 1.
Moments analytic_moments(const DistributionSpec& dist);

/// n iid draws, deterministic in seed. Throws SizeError for n == 0.
std::vector<double> sample(const DistributionSpec& dist, std::size_t n, std::uint64_t seed);

struct ScalingPoint {
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean_of_means = 0.0;
  double mean_of_medians = 0.0;
  double stderr_means = 0.0;
  double stderr_medians = 0.0;
  /// Typical (median) sample mean across trials.
  double median_of_means = 0.0;
};

struct ScalingCurve {
  std::string distribution;
  std::vector<ScalingPoint> points;
};

/// For every sample size, the average over `trials` independent samples of
/// the sample mean and the sample median. Trials run in parallel on
/// per-trial sub-seeds; the result does not depend on the thread count.
/// Throws SizeError unless sizes are positive and strictly increasing and
/// trials >= 1.
ScalingCurve mean_median_scaling(const DistributionSpec& dist, std::span<const std::size_t> sizes,
                                 std::size_t trials, std::uint64_t seed);

struct IidParadoxConfig {
  std::size_t n_nodes = 10000;
  DistributionSpec degree_dist = DistributionSpec::pareto(1.2, 1.0);
  DistributionSpec attr_dist = DistributionSpec::pareto(1.2, 1.0);
  std::uint64_t seed = 0;
};

struct IidBucket {
  std::size_t friend_count = 0;
  std::size_t nodes = 0;
  std::size_t in_paradox_mean = 0;
  std::size_t in_paradox_median = 0;
  double frac_mean = 0.0;
  double frac_median = 0.0;
};

struct IidParadoxResult {
  std::vector<IidBucket> buckets;  ///< ascending friend count, non-empty buckets only
  ParadoxCount overall_mean;
  ParadoxCount overall_median;
};

/// Random directed network whose out-degrees follow degree_dist (rounded,
/// clamped to [1, N-1], friends uniform without replacement) with iid
/// attributes from attr_dist. Reports the paradox fraction under both the
/// mean and the median for each friend count.
/// Throws SizeError when n_nodes < 2.
IidParadoxResult iid_network_paradox(const IidParadoxConfig& config);

struct FullyConnectedResult {
  std::size_t n_nodes = 0;
  std::vector<double> frac_mean;    ///< one entry per redraw
  std::vector<double> frac_median;  ///< one entry per redraw
};

/// Complete digraph on n_nodes with attributes redrawn iid `redraws` times.
FullyConnectedResult fully_connected_paradox(std::size_t n_nodes, const DistributionSpec& attr_dist,
                                             std::size_t redraws, std::uint64_t seed);

struct LogBinnedHistogram {
  int bins_per_decade = 10;
  std::vector<double> edges;         ///< bins + 1 geometric edges
  std::vector<std::size_t> counts;   ///< per bin
  std::vector<double> density;       ///< count / (total * width)
  std::size_t zero_count = 0;        ///< values equal to 0, kept out of the geometric bins
  std::size_t total = 0;
  double zero_fraction() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(zero_count) / static_cast<double>(total);
  }
};

/// Geometric bins from the smallest positive value, bins_per_decade per
/// factor of ten, up to the bin holding the maximum. Density is normalized
/// over all values, so sum(density * width) + zero_fraction() == 1.
/// Throws ValidationError for negative or non-finite values, EmptyInputError
/// when no value is positive.
LogBinnedHistogram log_binned_pdf(std::span<const double> values, int bins_per_decade = 10);

namespace serial {

ScalingCurve mean_median_scaling(const DistributionSpec& dist, std::span<const std::size_t> sizes,
                                 std::size_t trials, std::uint64_t seed);

}  // namespace serial

}  // namespace netparadox
