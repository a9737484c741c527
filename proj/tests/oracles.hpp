#pragma once

// Brute-force reference implementations used only by tests. Everything here
// works on a dense 0/1 adjacency matrix and never calls into the library's
// graph algorithms.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "gtsfuse/graph.hpp"

namespace oracle {

using Dense = std::vector<std::vector<int>>;

inline Dense dense(const gtsfuse::Graph& g) {
  const std::size_t n = g.order();
  Dense a(n, std::vector<int>(n, 0));
  for (const auto& [u, v] : g.edge_list()) a[u][v] = a[v][u] = 1;
  return a;
}

inline gtsfuse::Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<gtsfuse::EdgePair> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (unif(rng) < p) edges.emplace_back(u, v);
  return gtsfuse::Graph::from_edge_list(n, edges);
}

/// Every labeled simple graph on n vertices (n <= 5 keeps this small).
inline std::vector<gtsfuse::Graph> all_graphs(std::size_t n) {
  std::vector<gtsfuse::EdgePair> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<gtsfuse::Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<gtsfuse::EdgePair> edges;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1) edges.push_back(pairs[b]);
    out.push_back(gtsfuse::Graph::from_edge_list(n, edges));
  }
  return out;
}

inline gtsfuse::Graph permute(const gtsfuse::Graph& g, const std::vector<std::size_t>& perm) {
  std::vector<gtsfuse::EdgePair> edges;
  for (const auto& [u, v] : g.edge_list()) edges.emplace_back(perm[u], perm[v]);
  return gtsfuse::Graph::from_edge_list(g.order(), edges);
}

constexpr int kInf = -1;

/// All-pairs hop distances by Floyd-Warshall; kInf marks unreachable.
inline std::vector<std::vector<int>> floyd_warshall(const Dense& a) {
  const std::size_t n = a.size();
  const int big = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, big));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j]) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (int& x : row)
      if (x >= big) x = kInf;
  return d;
}

inline std::size_t pair_scan_edges(const Dense& a, const std::vector<std::size_t>& s) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) count += a[s[i]][s[j]];
  return count;
}

inline double size(const Dense& a) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) count += a[i][j];
  return static_cast<double>(count);
}

inline double max_degree(const Dense& a) {
  int best = 0;
  for (const auto& row : a) {
    int d = 0;
    for (int x : row) d += x;
    best = std::max(best, d);
  }
  return best;
}

inline double top_eigenvalue(const Dense& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  if (n == 0) return 0.0;
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

inline double scan(const Dense& a, int k) {
  const auto d = floyd_warshall(a);
  std::size_t best = 0;
  for (std::size_t v = 0; v < a.size(); ++v) {
    std::vector<std::size_t> region;
    for (std::size_t w = 0; w < a.size(); ++w)
      if (d[v][w] != kInf && d[v][w] <= k) region.push_back(w);
    best = std::max(best, pair_scan_edges(a, region));
  }
  return static_cast<double>(best);
}

inline double trace_cube_over_six(const Dense& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<long>> a2(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) a2[i][j] += a[i][k] * a[k][j];
  long trace = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) trace += a2[i][k] * a[k][i];
  return static_cast<double>(trace) / 6.0;
}

/// Transitivity by enumerating every vertex triple: closed = 3 x triangles,
/// connected triples = paths of length two.
inline double transitivity(const Dense& a, bool literal = false) {
  const std::size_t n = a.size();
  long triangles = 0;
  long two_paths = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const int e = a[i][j] + a[j][k] + a[i][k];
        if (e == 3) {
          ++triangles;
          two_paths += 3;
        } else if (e == 2) {
          ++two_paths;
        }
      }
  const double closed = 3.0 * triangles;
  if (literal) return closed / std::max(1.0, static_cast<double>(two_paths) - closed);
  return two_paths ? closed / static_cast<double>(two_paths) : 0.0;
}

inline double neg_apl(const Dense& a) {
  const std::size_t n = a.size();
  if (size(a) == 0) return 0.0;
  const auto d = floyd_warshall(a);
  int longest = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && d[i][j] != kInf) longest = std::max(longest, d[i][j]);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) total += d[i][j] == kInf ? 2.0 * longest : d[i][j];
  return -total / static_cast<double>(n * (n - 1));
}

}  // namespace oracle
