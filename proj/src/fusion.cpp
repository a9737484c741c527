#include "gtsfuse/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gtsfuse/error.hpp"
#include "gtsfuse/parallel.hpp"

namespace gtsfuse {

std::string_view weight_kind_name(WeightKind kind) noexcept {
  return kind == WeightKind::Equal ? "equal" : "adaptive";
}

std::optional<WeightKind> weight_kind_from_name(std::string_view name) noexcept {
  if (name == "equal") return WeightKind::Equal;
  if (name == "adaptive") return WeightKind::Adaptive;
  return std::nullopt;
}

void WeightScheme::validate() const {
  if (subset.empty()) throw ParameterError("feature subset must be non-empty");
  std::vector<bool> seen(kNumFeatures, false);
  for (Feature f : subset) {
    const int k = feature_number(f);
    if (k < 1 || k > static_cast<int>(kNumFeatures)) {
      throw ParameterError("feature index " + std::to_string(k) + " outside 1..9");
    }
    if (seen[feature_index(f)]) {
      throw ParameterError("feature " + std::to_string(k) + " repeated in subset");
    }
    seen[feature_index(f)] = true;
  }
}

SampleMatrix SampleMatrix::select_columns(std::span<const std::size_t> columns) const {
  SampleMatrix out(rows_, columns.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out(r, c) = (*this)(r, columns[c]);
  }
  return out;
}

NullReference NullReference::from_samples(SampleMatrix samples) {
  const std::size_t n = samples.rows();
  const std::size_t d = samples.cols();
  if (n < 2) throw ParameterError("null reference needs at least 2 samples, got " + std::to_string(n));
  NullReference ref;
  ref.mu0.assign(d, 0.0);
  ref.sigma0.assign(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) ref.mu0[c] += samples(r, c);
  }
  for (double& mu : ref.mu0) mu /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const double dev = samples(r, c) - ref.mu0[c];
      ref.sigma0[c] += dev * dev;
    }
  }
  for (double& s : ref.sigma0) s = std::sqrt(s / static_cast<double>(n - 1));
  ref.samples = std::move(samples);
  return ref;
}

std::vector<double> equal_weights(std::size_t d_prime) {
  if (d_prime == 0) throw ParameterError("fusion dimension must be >= 1");
  return std::vector<double>(d_prime, 1.0 / static_cast<double>(d_prime));
}

std::vector<double> adaptive_weights(std::span<const double> s_test, const NullReference& ref) {
  if (s_test.size() != ref.mu0.size()) throw ParameterError("test vector and null reference differ in dimension");
  std::vector<double> w(s_test.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::abs(s_test[i] - ref.mu0[i]) / std::max(ref.sigma0[i], kSigmaFloor);
  }
  return w;
}

double fuse(std::span<const double> s, std::span<const double> w) {
  if (s.size() != w.size()) throw ParameterError("statistic and weight vectors differ in dimension");
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += w[i] * s[i];
  return acc;
}

std::size_t critical_rank(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0,1)");
  if (n == 0) throw ParameterError("critical value of an empty null sample");
  const double x = (1.0 - alpha) * static_cast<double>(n);
  const double nearest = std::round(x);
  // (1 - alpha) * N is often an integer up to rounding, e.g. 0.95 * 100.
  const double k = std::abs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest : std::ceil(x);
  return std::clamp<std::size_t>(static_cast<std::size_t>(k), 1, n);
}

double critical_value(std::span<const double> null_fused, double alpha) {
  const std::size_t k = critical_rank(null_fused.size(), alpha);
  std::vector<double> sorted(null_fused.begin(), null_fused.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1), sorted.end());
  return sorted[k - 1];
}

std::vector<double> scheme_weights(WeightKind kind, std::span<const double> s_test,
                                   const NullReference& ref) {
  return kind == WeightKind::Equal ? equal_weights(s_test.size()) : adaptive_weights(s_test, ref);
}

DetectionResult test_at(std::span<const double> s_test, const NullReference& ref, WeightKind kind,
                        double alpha) {
  if (s_test.size() != ref.samples.cols()) {
    throw ParameterError("test vector has " + std::to_string(s_test.size()) +
                         " features, null sample has " + std::to_string(ref.samples.cols()));
  }
  DetectionResult out;
  out.alpha = alpha;
  out.weights = scheme_weights(kind, s_test, ref);
  std::vector<double> null_fused(ref.samples.rows());
  for (std::size_t r = 0; r < null_fused.size(); ++r) null_fused[r] = fuse(ref.samples.row(r), out.weights);
  out.cv = critical_value(null_fused, alpha);
  out.fused = fuse(s_test, out.weights);
  out.reject = out.fused > out.cv;
  return out;
}

DetectionResult test_at(std::span<const double> s_test, const SampleMatrix& null_s,
                        const WeightScheme& scheme, double alpha) {
  scheme.validate();
  if (null_s.cols() != scheme.subset.size() || s_test.size() != scheme.subset.size()) {
    throw ParameterError("inputs must have one column per subset feature (" +
                         std::to_string(scheme.subset.size()) + ")");
  }
  return test_at(s_test, NullReference::from_samples(null_s), scheme.kind, alpha);
}

double power(const NullReference& ref, const SampleMatrix& alt_s, WeightKind kind, double alpha,
             unsigned threads) {
  if (alt_s.rows() == 0 || ref.samples.rows() == 0) throw ParameterError("power needs non-empty samples");
  if (alt_s.cols() != ref.samples.cols()) throw ParameterError("null and alternative samples differ in dimension");
  const std::size_t n_null = ref.samples.rows();
  const std::size_t k = critical_rank(n_null, alpha);
  std::vector<char> rejected(alt_s.rows(), 0);

  if (kind == WeightKind::Equal) {
    const auto w = equal_weights(alt_s.cols());
    std::vector<double> null_fused(n_null);
    for (std::size_t r = 0; r < n_null; ++r) null_fused[r] = fuse(ref.samples.row(r), w);
    const double cv = critical_value(null_fused, alpha);
    for (std::size_t j = 0; j < alt_s.rows(); ++j) rejected[j] = fuse(alt_s.row(j), w) > cv;
  } else {
    // fused > k-th smallest null value  <=>  at least k null values lie strictly below.
    parallel_for(
        alt_s.rows(),
        [&](std::size_t j) {
          const auto x = alt_s.row(j);
          const auto w = adaptive_weights(x, ref);
          const double v = fuse(x, w);
          std::size_t below = 0;
          for (std::size_t r = 0; r < n_null; ++r) {
            if (fuse(ref.samples.row(r), w) < v && ++below >= k) break;
            if (below + (n_null - r - 1) < k) break;
          }
          rejected[j] = below >= k;
        },
        threads);
  }
  std::size_t count = 0;
  for (char r : rejected) count += r ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(alt_s.rows());
}

double power(const SampleMatrix& null_s, const SampleMatrix& alt_s, const WeightScheme& scheme,
             double alpha, unsigned threads) {
  scheme.validate();
  if (null_s.cols() != scheme.subset.size()) {
    throw ParameterError("null sample must have one column per subset feature");
  }
  return power(NullReference::from_samples(null_s), alt_s, scheme.kind, alpha, threads);
}

}  // namespace gtsfuse
