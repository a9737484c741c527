#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gtsfuse/invariants.hpp"

namespace gtsfuse {

enum class WeightKind { Equal, Adaptive };

std::string_view weight_kind_name(WeightKind kind) noexcept;
std::optional<WeightKind> weight_kind_from_name(std::string_view name) noexcept;

struct WeightScheme {
  WeightKind kind = WeightKind::Adaptive;
  std::vector<Feature> subset;  // features fused, in column order

  /// Throws ParameterError on an empty subset or repeated features.
  void validate() const;
};

/// Row-major matrix of normalized feature vectors, one row per sample.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  SampleMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

  /// Columns `columns` (0-based) of every row, in the given order.
  SampleMatrix select_columns(std::span<const std::size_t> columns) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Null sample plus its per-feature mean and sample standard deviation.
struct NullReference {
  SampleMatrix samples;
  std::vector<double> mu0;
  std::vector<double> sigma0;

  /// Throws ParameterError with fewer than two rows.
  static NullReference from_samples(SampleMatrix samples);
};

inline constexpr double kSigmaFloor = 1e-8;

std::vector<double> equal_weights(std::size_t d_prime);

/// |s_test - mu0| / max(sigma0, kSigmaFloor), element-wise.
std::vector<double> adaptive_weights(std::span<const double> s_test, const NullReference& ref);

double fuse(std::span<const double> s, std::span<const double> w);

/// 1-based rank k = ceil((1 - alpha) * N) of the critical order statistic.
std::size_t critical_rank(std::size_t n, double alpha);

/// k-th smallest of null_fused with k = critical_rank(N, alpha).
double critical_value(std::span<const double> null_fused, double alpha);

struct DetectionResult {
  std::size_t t = 0;
  double fused = 0.0;
  std::vector<double> weights;
  double cv = 0.0;
  bool reject = false;  // fused > cv
  double alpha = 0.05;
};

/// Weights for `s_test` under `kind`; adaptive weights depend on the test point.
std::vector<double> scheme_weights(WeightKind kind, std::span<const double> s_test,
                                   const NullReference& ref);

DetectionResult test_at(std::span<const double> s_test, const NullReference& ref, WeightKind kind,
                        double alpha);

/// Columns of `null_s` and entries of `s_test` must follow scheme.subset.
DetectionResult test_at(std::span<const double> s_test, const SampleMatrix& null_s,
                        const WeightScheme& scheme, double alpha);

/// Fraction of rows of `alt_s` rejected against the null sample `null_s`.
double power(const SampleMatrix& null_s, const SampleMatrix& alt_s, const WeightScheme& scheme,
             double alpha, unsigned threads = 0);

/// Same as power() against a prebuilt null reference.
double power(const NullReference& ref, const SampleMatrix& alt_s, WeightKind kind, double alpha,
             unsigned threads = 0);

}  // namespace gtsfuse
