#include "gtsfuse/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gtsfuse/error.hpp"

namespace gtsfuse {

namespace {

constexpr std::array<std::string_view, kNumFeatures> kNames = {
    "size", "maxdeg", "mad", "scan1", "scan2", "scan3", "triangles", "cc", "neg_apl",
};

// Number of common neighbors of u and v that are greater than v.
std::size_t common_above(std::span<const Vertex> a, std::span<const Vertex> b, Vertex floor) {
  auto ia = std::upper_bound(a.begin(), a.end(), floor);
  auto ib = std::upper_bound(b.begin(), b.end(), floor);
  std::size_t count = 0;
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

double component_top_eigenvalue(const Graph& g, std::span<const Vertex> comp, double tol,
                                std::size_t max_iter, std::vector<double>& x,
                                std::vector<double>& y) {
  if (comp.size() == 1) return 0.0;
  const double start = 1.0 / std::sqrt(static_cast<double>(comp.size()));
  for (Vertex v : comp) x[v] = start;

  double rho = 0.0;
  double residual = 0.0;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    // y = (A + I) x
    double xy = 0.0;
    for (Vertex v : comp) {
      double acc = x[v];
      for (Vertex w : g.neighbors(v)) acc += x[w];
      y[v] = acc;
      xy += x[v] * acc;
    }
    rho = xy - 1.0;
    double res2 = 0.0;
    double norm2 = 0.0;
    for (Vertex v : comp) {
      const double r = y[v] - (1.0 + rho) * x[v];
      res2 += r * r;
      norm2 += y[v] * y[v];
    }
    residual = std::sqrt(res2);
    if (residual <= tol) return rho;
    const double inv = 1.0 / std::sqrt(norm2);
    for (Vertex v : comp) x[v] = y[v] * inv;
  }

  std::vector<double> iterate;
  iterate.reserve(comp.size());
  for (Vertex v : comp) iterate.push_back(x[v]);
  throw ConvergenceError("power iteration did not converge in " + std::to_string(max_iter) +
                             " iterations (estimate " + std::to_string(rho) + ", residual " +
                             std::to_string(residual) + ")",
                         rho, residual, std::move(iterate));
}

}  // namespace

Feature feature_from_number(int number) {
  if (number < 1 || number > static_cast<int>(kNumFeatures)) {
    throw ParameterError("feature index " + std::to_string(number) + " outside 1..9");
  }
  return static_cast<Feature>(number);
}

std::string_view feature_name(Feature f) noexcept { return kNames[feature_index(f)]; }

std::optional<Feature> feature_from_name(std::string_view name) noexcept {
  for (Feature f : kAllFeatures) {
    if (kNames[feature_index(f)] == name) return f;
  }
  return std::nullopt;
}

double size(const Graph& g) { return static_cast<double>(g.size()); }

double max_degree(const Graph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.order(); ++v) best = std::max(best, g.degree(v));
  return static_cast<double>(best);
}

double mad_eig(const Graph& g, double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) throw ParameterError("eigenvalue tolerance must be positive");
  std::vector<double> x(g.order(), 0.0);
  std::vector<double> y(g.order(), 0.0);
  double best = 0.0;
  for (const auto& comp : connected_components(g)) {
    best = std::max(best, component_top_eigenvalue(g, comp, tol, max_iter, x, y));
  }
  return best;
}

std::vector<double> scan_locality(const Graph& g, std::size_t k) {
  std::vector<double> out(g.order(), 0.0);
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto region = kth_neighborhood(g, v, k);
    out[v] = static_cast<double>(induced_edge_count(g, region));
  }
  return out;
}

double scan(const Graph& g, std::size_t k) {
  if (k == 0) throw ParameterError("scan radius must be at least 1");
  const auto local = scan_locality(g, k);
  return local.empty() ? 0.0 : *std::max_element(local.begin(), local.end());
}

double triangles(const Graph& g) {
  std::size_t count = 0;
  for (Vertex u = 0; u < g.order(); ++u) {
    const auto nu = g.neighbors(u);
    for (auto it = std::upper_bound(nu.begin(), nu.end(), u); it != nu.end(); ++it) {
      count += common_above(nu, g.neighbors(*it), *it);
    }
  }
  return static_cast<double>(count);
}

double clustering_coeff(const Graph& g, bool literal) {
  double triples = 0.0;
  for (Vertex v = 0; v < g.order(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    triples += d * (d - 1.0) / 2.0;
  }
  const double closed = 3.0 * triangles(g);
  if (literal) {
    const double open = triples - closed;
    return closed / std::max(open, 1.0);
  }
  return triples > 0.0 ? closed / triples : 0.0;
}

double neg_apl(const Graph& g) {
  const std::size_t n = g.order();
  if (g.size() == 0) return 0.0;
  double finite_sum = 0.0;
  std::size_t unreachable = 0;
  std::uint32_t longest = 0;
  for (Vertex u = 0; u < n; ++u) {
    const auto dist = bfs_distances(g, u);
    for (Vertex v = 0; v < n; ++v) {
      if (v == u) continue;
      if (dist[v]) {
        finite_sum += *dist[v];
        longest = std::max(longest, *dist[v]);
      } else {
        ++unreachable;
      }
    }
  }
  const double total = finite_sum + static_cast<double>(unreachable) * 2.0 * longest;
  return -total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double compute_feature(const Graph& g, Feature f, const FeatureOptions& opts) {
  switch (f) {
    case Feature::Size: return size(g);
    case Feature::MaxDegree: return max_degree(g);
    case Feature::MadEig: return mad_eig(g, opts.eig_tol, opts.eig_max_iter);
    case Feature::Scan1: return scan(g, 1);
    case Feature::Scan2: return scan(g, 2);
    case Feature::Scan3: return scan(g, 3);
    case Feature::Triangles: return triangles(g);
    case Feature::Clustering: return clustering_coeff(g, opts.cc_literal);
    case Feature::NegApl: return neg_apl(g);
  }
  return 0.0;
}

FeatureVector all_features(const Graph& g, const FeatureOptions& opts) {
  FeatureVector out;
  for (Feature f : kAllFeatures) out[f] = compute_feature(g, f, opts);
  return out;
}

FeatureMatrix::FeatureMatrix(std::size_t replicates, std::size_t times,
                             std::vector<Feature> features, std::size_t first_time)
    : replicates_(replicates),
      times_(times),
      first_time_(first_time),
      features_(std::move(features)),
      data_(replicates * times * features_.size(), 0.0) {
  if (first_time_ == 0) throw ParameterError("first_time is 1-based");
}

std::vector<double> FeatureMatrix::column(std::size_t m, std::size_t i) const {
  std::vector<double> out(times_);
  for (std::size_t t = 1; t <= times_; ++t) out[t - 1] = (*this)(m, t, i);
  return out;
}

FeatureMatrix series_features(const GraphSeries& series, const FeatureOptions& opts) {
  FeatureMatrix out(1, series.length(), {kAllFeatures.begin(), kAllFeatures.end()});
  for (std::size_t t = 1; t <= series.length(); ++t) {
    const auto fv = all_features(series.at(t), opts);
    for (std::size_t i = 0; i < kNumFeatures; ++i) out(0, t, i) = fv.values[i];
  }
  return out;
}

}  // namespace gtsfuse
