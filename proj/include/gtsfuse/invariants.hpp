#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gtsfuse/graph.hpp"

namespace gtsfuse {

// The nine graph features, numbered 1..9. The numbering is part of the
// public interface: subsets such as "1,2,6,7" refer to it.
enum class Feature : int {
  Size = 1,
  MaxDegree = 2,
  MadEig = 3,
  Scan1 = 4,
  Scan2 = 5,
  Scan3 = 6,
  Triangles = 7,
  Clustering = 8,
  NegApl = 9,
};

inline constexpr std::size_t kNumFeatures = 9;

inline constexpr std::array<Feature, kNumFeatures> kAllFeatures = {
    Feature::Size,   Feature::MaxDegree, Feature::MadEig,     Feature::Scan1, Feature::Scan2,
    Feature::Scan3,  Feature::Triangles, Feature::Clustering, Feature::NegApl,
};

constexpr std::size_t feature_index(Feature f) noexcept { return static_cast<std::size_t>(f) - 1; }
constexpr int feature_number(Feature f) noexcept { return static_cast<int>(f); }

/// Throws ParameterError unless 1 <= number <= 9.
Feature feature_from_number(int number);

std::string_view feature_name(Feature f) noexcept;
std::optional<Feature> feature_from_name(std::string_view name) noexcept;

struct FeatureOptions {
  double eig_tol = 1e-10;
  std::size_t eig_max_iter = 10000;
  // ct/ot instead of transitivity ct/(ct+ot); ot == 0 is floored to 1.
  bool cc_literal = false;
};

struct FeatureVector {
  std::array<double, kNumFeatures> values{};

  double operator[](Feature f) const noexcept { return values[feature_index(f)]; }
  double& operator[](Feature f) noexcept { return values[feature_index(f)]; }
  bool operator==(const FeatureVector&) const = default;
};

double size(const Graph& g);
double max_degree(const Graph& g);

/**
 * Largest adjacency eigenvalue (upper bound on the maximum average degree).
 *
 * Power iteration on A + I, run per connected component starting from the
 * normalized all-ones vector; the shift keeps the top eigenvalue strictly
 * dominant on bipartite components. Stops when the Rayleigh-quotient residual
 * ||Ax - rho x|| drops to `tol`, which bounds the eigenvalue error by `tol`.
 * Throws ConvergenceError after `max_iter` iterations on any component.
 */
double mad_eig(const Graph& g, double tol = 1e-10, std::size_t max_iter = 10000);

/// Maximum over v of the number of edges induced by N_k[v]. k >= 1.
double scan(const Graph& g, std::size_t k);

/// Per-vertex induced edge count of N_k[v] (the scan locality statistic).
std::vector<double> scan_locality(const Graph& g, std::size_t k);

double triangles(const Graph& g);

double clustering_coeff(const Graph& g, bool literal = false);

/// Negated average shortest-path length over ordered pairs. Disconnected pairs
/// count as twice the largest finite distance; an edgeless graph yields 0.
double neg_apl(const Graph& g);

double compute_feature(const Graph& g, Feature f, const FeatureOptions& opts = {});

FeatureVector all_features(const Graph& g, const FeatureOptions& opts = {});

/**
 * Raw feature values indexed (replicate, time, feature column).
 *
 * Time is 1-based; `first_time` is the first index at which values are
 * defined (1 for raw features, later when a preprocessing window consumed
 * the leading steps). Rows before `first_time` hold zeros.
 */
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t replicates, std::size_t times, std::vector<Feature> features,
                std::size_t first_time = 1);

  std::size_t replicates() const noexcept { return replicates_; }
  std::size_t times() const noexcept { return times_; }
  std::size_t first_time() const noexcept { return first_time_; }
  const std::vector<Feature>& features() const noexcept { return features_; }
  std::size_t dims() const noexcept { return features_.size(); }

  double& operator()(std::size_t m, std::size_t t, std::size_t i) noexcept {
    return data_[(m * times_ + (t - 1)) * features_.size() + i];
  }
  double operator()(std::size_t m, std::size_t t, std::size_t i) const noexcept {
    return data_[(m * times_ + (t - 1)) * features_.size() + i];
  }

  /// Contiguous feature row for one (replicate, time).
  std::span<const double> row(std::size_t m, std::size_t t) const noexcept {
    return {data_.data() + (m * times_ + (t - 1)) * features_.size(), features_.size()};
  }

  /// Values of column i over t = 1..times for replicate m.
  std::vector<double> column(std::size_t m, std::size_t i) const;

 private:
  std::size_t replicates_ = 0;
  std::size_t times_ = 0;
  std::size_t first_time_ = 1;
  std::vector<Feature> features_;
  std::vector<double> data_;
};

/// One-replicate feature matrix over every time step of a series.
FeatureMatrix series_features(const GraphSeries& series, const FeatureOptions& opts = {});

}  // namespace gtsfuse
