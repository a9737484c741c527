#include "gtsfuse/simulate.hpp"

#include <cmath>
#include <string>

#include "gtsfuse/error.hpp"

namespace gtsfuse {

namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

}  // namespace

void KappaParams::validate() const {
  if (!is_probability(p) || !is_probability(q)) throw ParameterError("p and q must lie in [0,1]");
  if (p > q) throw ParameterError("kidney-egg model requires p <= q");
  if (m > n) throw ParameterError("egg size m exceeds n");
  if (t_star < 1) throw ParameterError("t_star is 1-based");
  if (t_max < 1) throw ParameterError("t_max must be >= 1");
}

LatentVectors make_latent(double p, double q) {
  if (!is_probability(p) || !is_probability(q)) throw ParameterError("p and q must lie in [0,1]");
  if (p > q) throw ParameterError("latent construction requires p <= q");
  LatentVectors out;
  out.pi_bar_0 = {std::sqrt(p), 0.0};
  out.pi_bar_A = {std::sqrt(p), std::sqrt(q - p)};
  if (out.pi_bar_A[0] + out.pi_bar_A[1] > 1.0 + 1e-12) {
    throw ParameterError("sqrt(p) + sqrt(q - p) exceeds 1; no sub-probability vector in two dimensions");
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      engine_(splitmix64(master_seed ^ splitmix64(stream_id))) {}

GraphSeries sample_rdpg_series(std::size_t n, std::size_t t_max, const VertexVectorProvider& vectors,
                               SeededRng& rng) {
  GraphSeries series(n, {});
  std::vector<EdgePair> edges;
  for (std::size_t t = 1; t <= t_max; ++t) {
    const auto vp = vectors(t);
    if (vp.size() != n) throw ParameterError("vertex vector provider returned wrong vertex count");
    edges.clear();
    for (std::size_t u = 1; u < n; ++u) {
      for (std::size_t v = 0; v < u; ++v) {
        if (rng.bernoulli(dot(vp[u], vp[v]))) edges.emplace_back(v, u);
      }
    }
    series.push_back(Graph::from_edge_list(n, edges));
  }
  return series;
}

GraphSeries sample_rdpg_series(const KappaParams& params, const LatentVectors& latent,
                               SeededRng& rng) {
  params.validate();
  if (latent.pi_bar_A.size() != latent.pi_bar_0.size()) {
    throw ParameterError("latent vectors differ in dimension");
  }
  auto provider = [&](std::size_t t) {
    std::vector<std::vector<double>> vp(params.n, latent.pi_bar_0);
    if (t >= params.t_star) {
      for (std::size_t v = 0; v < params.m; ++v) vp[v] = latent.pi_bar_A;
    }
    return vp;
  };
  return sample_rdpg_series(params.n, params.t_max, provider, rng);
}

Graph sample_kappa(const KappaParams& params, SeededRng& rng) {
  params.validate();
  std::vector<EdgePair> edges;
  for (std::size_t u = 1; u < params.n; ++u) {
    const bool u_egg = u < params.m;
    for (std::size_t v = 0; v < u; ++v) {
      const double prob = (u_egg && v < params.m) ? params.q : params.p;
      if (rng.bernoulli(prob)) edges.emplace_back(v, u);
    }
  }
  return Graph::from_edge_list(params.n, edges);
}

GraphSeries sample_series(const KappaParams& params, SeededRng& rng) {
  params.validate();
  KappaParams null_params = params;
  null_params.m = 0;
  GraphSeries series(params.n, {});
  for (std::size_t t = 1; t <= params.t_max; ++t) {
    series.push_back(sample_kappa(t < params.t_star ? null_params : params, rng));
  }
  return series;
}

}  // namespace gtsfuse
