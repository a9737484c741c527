#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gtsfuse {

using Vertex = std::uint32_t;
using EdgePair = std::pair<std::size_t, std::size_t>;

// Hop distance; std::nullopt means unreachable.
using Distance = std::optional<std::uint32_t>;

/**
 * Simple undirected graph on the fixed vertex set {0, ..., n-1}.
 *
 * Adjacency is stored CSR-style: one sorted neighbor run per vertex, so
 * iteration is O(deg) and membership is O(log deg). Immutable once built.
 */
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  /// Self-loops are dropped and duplicate or reversed pairs collapse to one
  /// edge. Throws InputError naming the first pair with an index >= n.
  static Graph from_edge_list(std::size_t n, std::span<const EdgePair> pairs);

  std::size_t order() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t size() const noexcept { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const noexcept;

  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<EdgePair> edge_list() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

std::vector<std::size_t> degrees(const Graph& g);

std::vector<Distance> bfs_distances(const Graph& g, Vertex source);

/// Closed k-hop neighborhood N_k[v], sorted ascending.
std::vector<Vertex> kth_neighborhood(const Graph& g, Vertex v, std::size_t k);

/// Number of edges with both endpoints in `s`. Duplicates in `s` are ignored.
std::size_t induced_edge_count(const Graph& g, std::span<const Vertex> s);

/// Connected components as vertex lists; isolated vertices form singletons.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

/**
 * Ordered sequence G(1), ..., G(t_max) over a shared vertex set.
 * Time indices are 1-based to match the time-bin convention of edge lists.
 */
class GraphSeries {
 public:
  GraphSeries() = default;
  GraphSeries(std::size_t n, std::vector<Graph> graphs);

  std::size_t order() const noexcept { return n_; }
  std::size_t length() const noexcept { return graphs_.size(); }
  const Graph& at(std::size_t t) const;  // 1-based
  const std::vector<Graph>& graphs() const noexcept { return graphs_; }

  void push_back(Graph g);

  bool operator==(const GraphSeries&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Graph> graphs_;
};

}  // namespace gtsfuse
