#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gtsfuse/graph.hpp"
#include "gtsfuse/invariants.hpp"

namespace gtsfuse {

struct WindowParams {
  std::size_t ell = 5;      // number of past steps in the running window
  double sigma_cap = 10.0;  // |z| assigned when the window has zero spread

  /// Throws ParameterError unless ell >= 2 and sigma_cap > 0.
  void validate() const;
};

struct RunningStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, divisor ell - 1
};

/**
 * Mean and sample standard deviation of series[t-ell .. t-1], where `t` is a
 * 1-based index into `series`; the value at t itself is excluded.
 * Throws ParameterError when fewer than `ell` steps precede t.
 */
RunningStats running_stats(std::span<const double> series, std::size_t t, std::size_t ell);

/// (value - mean) / stddev, with the cap rule when stddev == 0.
double standardize(double value, const RunningStats& stats, double sigma_cap);

/**
 * Windowed z-scores S_i(t) indexed (replicate, time, feature column).
 * Defined for first_valid() <= t <= last_valid(); other rows hold zeros.
 */
class NormalizedFeatures {
 public:
  NormalizedFeatures() = default;
  NormalizedFeatures(std::size_t replicates, std::size_t times, std::vector<Feature> features,
                     WindowParams window, std::size_t first_valid);

  std::size_t replicates() const noexcept { return replicates_; }
  std::size_t times() const noexcept { return times_; }
  std::size_t first_valid() const noexcept { return first_valid_; }
  std::size_t last_valid() const noexcept { return times_; }
  const WindowParams& window() const noexcept { return window_; }
  const std::vector<Feature>& features() const noexcept { return features_; }
  std::size_t dims() const noexcept { return features_.size(); }

  double& operator()(std::size_t m, std::size_t t, std::size_t i) noexcept {
    return data_[(m * times_ + (t - 1)) * features_.size() + i];
  }
  double operator()(std::size_t m, std::size_t t, std::size_t i) const noexcept {
    return data_[(m * times_ + (t - 1)) * features_.size() + i];
  }
  std::span<const double> row(std::size_t m, std::size_t t) const noexcept {
    return {data_.data() + (m * times_ + (t - 1)) * features_.size(), features_.size()};
  }

 private:
  std::size_t replicates_ = 0;
  std::size_t times_ = 0;
  std::size_t first_valid_ = 0;
  std::vector<Feature> features_;
  WindowParams window_;
  std::vector<double> data_;
};

/// Normalizes every replicate and feature independently. Requires
/// features.times() >= features.first_time() + ell.
NormalizedFeatures normalize(const FeatureMatrix& features, const WindowParams& params);

struct VertexStandardized {
  std::size_t first_time = 0;     // first t with a defined value (ell + 1)
  std::vector<double> max_value;  // indexed t - 1; zero before first_time
  std::vector<Vertex> argmax;     // vertex attaining max_value (lowest index on ties)
};

/**
 * Per-vertex windowed standardization followed by a max over vertices.
 *
 * `locality[t-1][v]` is the statistic of vertex v at time t. Each vertex is
 * z-scored against its own previous ell values, with the per-vertex standard
 * deviation floored at 1.
 */
VertexStandardized vertex_standardize(const std::vector<std::vector<double>>& locality,
                                      const WindowParams& params);

/// Per-vertex locality series behind a localized feature: degree for
/// MaxDegree, closed-neighborhood edge counts for Scan1..Scan3.
std::vector<std::vector<double>> locality_series(const GraphSeries& series, Feature f);

bool is_vertex_standardizable(Feature f) noexcept;

/**
 * Raw features of one series with the localized features (max degree and the
 * three scan statistics) replaced by their vertex-standardized maxima. The
 * result has first_time() == ell + 1.
 */
FeatureMatrix vertex_standardized_features(const GraphSeries& series, const WindowParams& params,
                                           const FeatureOptions& opts = {});

}  // namespace gtsfuse
