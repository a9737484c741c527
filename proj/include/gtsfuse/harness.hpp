#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gtsfuse/fusion.hpp"
#include "gtsfuse/graph.hpp"
#include "gtsfuse/invariants.hpp"
#include "gtsfuse/simulate.hpp"
#include "gtsfuse/temporal.hpp"

namespace gtsfuse {

enum class SubsetMode { Fixed, BestOf };

struct ExperimentSpec {
  KappaParams kappa;  // kappa.q is ignored; q_grid drives the alternatives
  std::vector<double> q_grid{0.2, 0.3, 0.4, 0.5};
  std::size_t replicates = 10000;
  double alpha = 0.05;
  WindowParams window;
  std::vector<WeightScheme> schemes;
  SubsetMode subset_mode = SubsetMode::Fixed;
  std::size_t best_of = 0;  // fusion dimension d' searched in BestOf mode
  bool individual = false;  // also report every single-feature power
  bool vertex_standardize = false;
  FeatureOptions features;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  void validate() const;
};

struct PowerResult {
  WeightKind scheme = WeightKind::Adaptive;
  std::vector<Feature> subset;
  double q = 0.0;
  double power = 0.0;
  double se = 0.0;  // sqrt(power (1 - power) / M)
  std::size_t replicates = 0;
  std::string status = "ok";  // failure message when the run for q failed
};

double standard_error(double power, std::size_t replicates);

/// Normalized statistics at the last null step (t*-1) and the change point
/// (t*) for every replicate, all nine features in column order.
struct PowerSamples {
  double q = 0.0;
  SampleMatrix null_s;  // M x 9, S(t* - 1)
  SampleMatrix alt_s;   // M x 9, S(t*)
};

/**
 * Simulates spec.replicates series per q. Replicate j draws from the stream
 * (seed, j); the null prefix G(1..t*-1) consumes the same draws for every q,
 * so all q share one null sample (common random numbers).
 */
std::vector<PowerSamples> simulate_power_samples(const ExperimentSpec& spec);

/// Column indices (0-based, into the nine-feature order) of a subset.
std::vector<std::size_t> subset_columns(const std::vector<Feature>& subset);

PowerResult evaluate_power(const PowerSamples& samples, const WeightScheme& scheme, double alpha,
                           unsigned threads = 0);

/// All C(9, d') feature subsets in lexicographic order.
std::vector<std::vector<Feature>> feature_subsets(std::size_t d_prime);

struct BestSubset {
  std::vector<Feature> subset;
  PowerResult result;
  std::vector<PowerResult> candidates;  // every subset evaluated, enumeration order
};

/// Exhaustive search over all C(9, d') subsets on one shared sample; ties go
/// to the earliest subset in enumeration order.
BestSubset best_subset(const PowerSamples& samples, std::size_t d_prime, WeightKind kind,
                       double alpha, unsigned threads = 0);

/// Simulates and searches at spec.q_grid.front().
BestSubset best_subset(const ExperimentSpec& spec, std::size_t d_prime, WeightKind kind);

/// Powers for every q and scheme (plus single-feature powers when requested).
std::vector<PowerResult> run_power(const ExperimentSpec& spec);
std::vector<PowerResult> run_power(const ExperimentSpec& spec,
                                   const std::vector<PowerSamples>& samples);

struct DetectOptions {
  WindowParams window;
  double alpha = 0.05;
  bool vertex_standardize = true;
  FeatureOptions features;
};

/// Normalized features of one observed series (replicate axis of length 1).
NormalizedFeatures normalize_series(const GraphSeries& series, const DetectOptions& opts);

struct SchemeTimeline {
  WeightScheme scheme;
  std::vector<DetectionResult> results;  // one per testable t, ascending
};

/**
 * For every testable t, tests S(t) against the historical S vectors at all
 * earlier valid times. The first testable t has two historical vectors.
 */
std::vector<SchemeTimeline> detect_series(const GraphSeries& series, const DetectOptions& opts,
                                          const std::vector<WeightScheme>& schemes);
std::vector<SchemeTimeline> detect_series(const NormalizedFeatures& normalized, double alpha,
                                          const std::vector<WeightScheme>& schemes);

/// Test at a single t against the valid history before it.
DetectionResult detect_at(const NormalizedFeatures& normalized, std::size_t t,
                          const WeightScheme& scheme, double alpha);

struct ComparisonRow {
  std::size_t d_prime = 0;
  std::size_t total = 0;  // C(9, d')
  std::size_t both = 0;
  std::size_t equal_only = 0;
  std::size_t adaptive_only = 0;
  std::size_t neither = 0;
};

/// Detection at t_star under both schemes for every subset of every size.
std::vector<ComparisonRow> scheme_comparison_table(const NormalizedFeatures& normalized,
                                                   std::size_t t_star, double alpha);
std::vector<ComparisonRow> scheme_comparison_table(const GraphSeries& series, std::size_t t_star,
                                                   const DetectOptions& opts);

}  // namespace gtsfuse
