#include "gtsfuse/graph.hpp"

#include <algorithm>
#include <string>

#include "gtsfuse/error.hpp"

namespace gtsfuse {

Graph::Graph(std::size_t n) : offsets_(n + 1, 0) {}

Graph Graph::from_edge_list(std::size_t n, std::span<const EdgePair> pairs) {
  std::vector<std::pair<Vertex, Vertex>> directed;
  directed.reserve(2 * pairs.size());
  for (const auto& [u, v] : pairs) {
    if (u >= n || v >= n) {
      throw InputError("vertex pair (" + std::to_string(u) + "," + std::to_string(v) +
                       ") out of range for n=" + std::to_string(n));
    }
    if (u == v) continue;
    directed.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    directed.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(u));
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g(n);
  g.targets_.reserve(directed.size());
  for (const auto& [u, v] : directed) {
    ++g.offsets_[u + 1];
    g.targets_.push_back(v);
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<EdgePair> Graph::edge_list() const {
  std::vector<EdgePair> out;
  out.reserve(size());
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::size_t> degrees(const Graph& g) {
  std::vector<std::size_t> out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) out[v] = g.degree(v);
  return out;
}

std::vector<Distance> bfs_distances(const Graph& g, Vertex source) {
  std::vector<Distance> dist(g.order());
  std::vector<Vertex> frontier{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const Vertex u = frontier[head];
    const std::uint32_t next = *dist[u] + 1;
    for (Vertex w : g.neighbors(u)) {
      if (!dist[w]) {
        dist[w] = next;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<Vertex> kth_neighborhood(const Graph& g, Vertex v, std::size_t k) {
  std::vector<std::size_t> depth(g.order(), 0);
  std::vector<bool> seen(g.order(), false);
  std::vector<Vertex> out{v};
  seen[v] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    const Vertex u = out[head];
    if (depth[u] == k) continue;
    for (Vertex w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = true;
        depth[w] = depth[u] + 1;
        out.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t induced_edge_count(const Graph& g, std::span<const Vertex> s) {
  std::vector<bool> in_set(g.order(), false);
  for (Vertex v : s) in_set[v] = true;
  std::size_t twice = 0;
  for (Vertex u = 0; u < g.order(); ++u) {
    if (!in_set[u]) continue;
    for (Vertex w : g.neighbors(u)) twice += in_set[w] ? 1 : 0;
  }
  return twice / 2;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> comps;
  std::vector<bool> seen(g.order(), false);
  for (Vertex root = 0; root < g.order(); ++root) {
    if (seen[root]) continue;
    std::vector<Vertex> comp{root};
    seen[root] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (Vertex w : g.neighbors(comp[head])) {
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
      }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

GraphSeries::GraphSeries(std::size_t n, std::vector<Graph> graphs) : n_(n) {
  graphs_.reserve(graphs.size());
  for (auto& g : graphs) push_back(std::move(g));
}

const Graph& GraphSeries::at(std::size_t t) const {
  if (t == 0 || t > graphs_.size()) {
    throw ParameterError("time index " + std::to_string(t) + " outside 1.." +
                         std::to_string(graphs_.size()));
  }
  return graphs_[t - 1];
}

void GraphSeries::push_back(Graph g) {
  if (g.order() != n_) {
    throw ParameterError("graph of order " + std::to_string(g.order()) +
                         " does not match series order " + std::to_string(n_));
  }
  graphs_.push_back(std::move(g));
}

}  // namespace gtsfuse
