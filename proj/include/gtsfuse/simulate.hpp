#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "gtsfuse/graph.hpp"

namespace gtsfuse {

/// Kidney-egg model kappa(n, p, m, q) with a change point at t_star.
struct KappaParams {
  std::size_t n = 50;
  double p = 0.01;  // kidney and kidney-egg edge probability
  std::size_t m = 6;  // egg size; the egg is vertices 0..m-1
  double q = 0.3;   // egg-internal edge probability from t_star on
  std::size_t t_star = 12;
  std::size_t t_max = 12;

  /// Throws ParameterError unless 0 <= p <= q <= 1, m <= n, 1 <= t_star,
  /// and t_max >= 1. t_star > t_max is allowed and yields a pure null series.
  void validate() const;
};

/// Sub-probability latent vectors of null and egg vertices.
struct LatentVectors {
  std::vector<double> pi_bar_0;
  std::vector<double> pi_bar_A;

  std::size_t dimension() const noexcept { return pi_bar_0.size(); }
};

/**
 * Two-dimensional latent vectors with <pi0,pi0> = <pi0,piA> = p and
 * <piA,piA> = q: pi0 = (sqrt p, 0), piA = (sqrt p, sqrt(q - p)).
 * Throws ParameterError when p > q or either lies outside [0,1], or when
 * the entries of piA would sum above 1.
 */
LatentVectors make_latent(double p, double q);

/**
 * Reproducible random stream keyed by (master_seed, stream_id).
 *
 * Engine: std::mt19937_64 seeded with SplitMix64(master_seed ^
 * SplitMix64(stream_id)). Uniforms take the top 53 bits of each 64-bit
 * output, so a stream is bit-identical on every conforming platform.
 */
class SeededRng {
 public:
  SeededRng(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double prob) { return uniform() < prob; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Per-vertex latent vectors at time t (1-based); the hook through which
/// models other than the deterministic first-order one plug into sampling.
using VertexVectorProvider = std::function<std::vector<std::vector<double>>(std::size_t t)>;

/// Independent Bernoulli(<vp_u, vp_v>) edges for every pair at every t.
/// Pairs are drawn in the order u = 1..n-1, v = 0..u-1.
GraphSeries sample_rdpg_series(std::size_t n, std::size_t t_max, const VertexVectorProvider& vectors,
                               SeededRng& rng);

/// First-order model: egg vertices take pi_bar_A from t_star on, every other
/// vertex (and every vertex before t_star) takes pi_bar_0.
GraphSeries sample_rdpg_series(const KappaParams& params, const LatentVectors& latent,
                               SeededRng& rng);

/// One kappa(n, p, m, q) graph; the time fields of `params` are ignored.
/// Consumes exactly n(n-1)/2 uniforms in the same pair order as the RDPG sampler.
Graph sample_kappa(const KappaParams& params, SeededRng& rng);

/// ER(n, p) before t_star, kappa(n, p, m, q) from t_star on, independent steps.
GraphSeries sample_series(const KappaParams& params, SeededRng& rng);

}  // namespace gtsfuse
