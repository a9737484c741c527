#include "gtsfuse/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gtsfuse/error.hpp"

namespace gtsfuse {

void WindowParams::validate() const {
  if (ell < 2) throw ParameterError("window length ell must be >= 2, got " + std::to_string(ell));
  if (!(sigma_cap > 0.0)) throw ParameterError("sigma_cap must be positive");
}

RunningStats running_stats(std::span<const double> series, std::size_t t, std::size_t ell) {
  if (ell < 2) throw ParameterError("window length ell must be >= 2");
  if (t < 1 || t - 1 < ell || t > series.size()) {
    throw ParameterError("running window at t=" + std::to_string(t) + " needs " +
                         std::to_string(ell) + " prior steps, " +
                         std::to_string(t >= 1 ? std::min(t - 1, series.size()) : 0) +
                         " available");
  }
  const auto window = series.subspan(t - 1 - ell, ell);
  double sum = 0.0;
  for (double x : window) sum += x;
  const double mean = sum / static_cast<double>(ell);
  double ss = 0.0;
  for (double x : window) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(ell - 1))};
}

double standardize(double value, const RunningStats& stats, double sigma_cap) {
  const double dev = value - stats.mean;
  if (stats.stddev > 0.0) return dev / stats.stddev;
  if (dev == 0.0) return 0.0;
  return dev > 0.0 ? sigma_cap : -sigma_cap;
}

NormalizedFeatures::NormalizedFeatures(std::size_t replicates, std::size_t times,
                                       std::vector<Feature> features, WindowParams window,
                                       std::size_t first_valid)
    : replicates_(replicates),
      times_(times),
      first_valid_(first_valid),
      features_(std::move(features)),
      window_(window),
      data_(replicates * times * features_.size(), 0.0) {}

NormalizedFeatures normalize(const FeatureMatrix& features, const WindowParams& params) {
  params.validate();
  const std::size_t first_valid = features.first_time() + params.ell;
  if (features.times() < first_valid) {
    throw ParameterError("series of length " + std::to_string(features.times()) +
                         " too short for ell=" + std::to_string(params.ell) +
                         " starting at t=" + std::to_string(features.first_time()));
  }
  NormalizedFeatures out(features.replicates(), features.times(), features.features(), params,
                         first_valid);
  for (std::size_t m = 0; m < features.replicates(); ++m) {
    for (std::size_t i = 0; i < features.dims(); ++i) {
      const auto col = features.column(m, i);
      for (std::size_t t = first_valid; t <= features.times(); ++t) {
        out(m, t, i) = standardize(col[t - 1], running_stats(col, t, params.ell), params.sigma_cap);
      }
    }
  }
  return out;
}

VertexStandardized vertex_standardize(const std::vector<std::vector<double>>& locality,
                                      const WindowParams& params) {
  params.validate();
  const std::size_t times = locality.size();
  if (times <= params.ell) {
    throw ParameterError("vertex standardization needs more than ell=" +
                         std::to_string(params.ell) + " steps, got " + std::to_string(times));
  }
  const std::size_t n = locality.front().size();
  for (const auto& row : locality) {
    if (row.size() != n) throw ParameterError("locality rows must share one vertex count");
  }

  VertexStandardized out;
  out.first_time = params.ell + 1;
  out.max_value.assign(times, 0.0);
  out.argmax.assign(times, 0);
  std::vector<double> history(params.ell + 1);
  for (std::size_t t = out.first_time; t <= times; ++t) {
    double best = -std::numeric_limits<double>::infinity();
    Vertex best_v = 0;
    for (Vertex v = 0; v < n; ++v) {
      for (std::size_t j = 0; j <= params.ell; ++j) history[j] = locality[t - 1 - params.ell + j][v];
      const auto stats = running_stats(history, params.ell + 1, params.ell);
      const double z = (history.back() - stats.mean) / std::max(stats.stddev, 1.0);
      if (z > best) {
        best = z;
        best_v = v;
      }
    }
    out.max_value[t - 1] = n == 0 ? 0.0 : best;
    out.argmax[t - 1] = best_v;
  }
  return out;
}

bool is_vertex_standardizable(Feature f) noexcept {
  return f == Feature::MaxDegree || f == Feature::Scan1 || f == Feature::Scan2 ||
         f == Feature::Scan3;
}

std::vector<std::vector<double>> locality_series(const GraphSeries& series, Feature f) {
  std::vector<std::vector<double>> out;
  out.reserve(series.length());
  for (const auto& g : series.graphs()) {
    switch (f) {
      case Feature::MaxDegree: {
        const auto deg = degrees(g);
        out.emplace_back(deg.begin(), deg.end());
        break;
      }
      case Feature::Scan1: out.push_back(scan_locality(g, 1)); break;
      case Feature::Scan2: out.push_back(scan_locality(g, 2)); break;
      case Feature::Scan3: out.push_back(scan_locality(g, 3)); break;
      default:
        throw ParameterError("feature " + std::string(feature_name(f)) +
                             " has no per-vertex locality statistic");
    }
  }
  return out;
}

FeatureMatrix vertex_standardized_features(const GraphSeries& series, const WindowParams& params,
                                           const FeatureOptions& opts) {
  params.validate();
  const FeatureMatrix raw = series_features(series, opts);
  FeatureMatrix out(1, raw.times(), raw.features(), params.ell + 1);
  for (std::size_t i = 0; i < raw.dims(); ++i) {
    const Feature f = raw.features()[i];
    if (is_vertex_standardizable(f)) {
      const auto vs = vertex_standardize(locality_series(series, f), params);
      for (std::size_t t = out.first_time(); t <= raw.times(); ++t) out(0, t, i) = vs.max_value[t - 1];
    } else {
      for (std::size_t t = out.first_time(); t <= raw.times(); ++t) out(0, t, i) = raw(0, t, i);
    }
  }
  return out;
}

}  // namespace gtsfuse
