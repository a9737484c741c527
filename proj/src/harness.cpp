#include "gtsfuse/harness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gtsfuse/error.hpp"
#include "gtsfuse/parallel.hpp"

namespace gtsfuse {

namespace {

const std::vector<Feature> kFeatureList(kAllFeatures.begin(), kAllFeatures.end());

// S(t*-1) and S(t*) of one replicate from the raw features of the last
// ell + 1 null steps and the change-point graph.
void raw_window_statistics(const std::vector<FeatureVector>& tail, const FeatureVector& alt,
                           const WindowParams& window, std::span<double> null_row,
                           std::span<double> alt_row) {
  const std::size_t ell = window.ell;
  std::vector<double> col(ell + 2);
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    for (std::size_t j = 0; j <= ell; ++j) col[j] = tail[j].values[i];
    col[ell + 1] = alt.values[i];
    null_row[i] = standardize(col[ell], running_stats(col, ell + 1, ell), window.sigma_cap);
    alt_row[i] = standardize(col[ell + 1], running_stats(col, ell + 2, ell), window.sigma_cap);
  }
}

void vertex_standardized_statistics(const std::vector<Graph>& prefix, const Graph& alt,
                                    const ExperimentSpec& spec, std::span<double> null_row,
                                    std::span<double> alt_row) {
  std::vector<Graph> graphs = prefix;
  graphs.push_back(alt);
  const GraphSeries series(spec.kappa.n, std::move(graphs));
  const auto nf = normalize(vertex_standardized_features(series, spec.window, spec.features), spec.window);
  const std::size_t t_star = series.length();
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    null_row[i] = nf(0, t_star - 1, i);
    alt_row[i] = nf(0, t_star, i);
  }
}

}  // namespace

void ExperimentSpec::validate() const {
  kappa.validate();
  window.validate();
  if (replicates < 100) throw ParameterError("at least 100 replicates are required");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0,1)");
  if (q_grid.empty()) throw ParameterError("q grid is empty");
  for (double q : q_grid) {
    if (q < kappa.p || q > 1.0) throw ParameterError("every q must lie in [p, 1]");
  }
  const std::size_t needed = vertex_standardize ? 2 * window.ell + 2 : window.ell + 2;
  if (kappa.t_star < needed) {
    throw ParameterError("t_star=" + std::to_string(kappa.t_star) + " leaves no full window before t*-1; need >= " +
                         std::to_string(needed));
  }
  for (const auto& s : schemes) s.validate();
  if (subset_mode == SubsetMode::BestOf && (best_of < 1 || best_of > kNumFeatures)) {
    throw ParameterError("best-of fusion dimension must lie in 1..9");
  }
}

double standard_error(double power, std::size_t replicates) {
  return std::sqrt(power * (1.0 - power) / static_cast<double>(replicates));
}

std::vector<PowerSamples> simulate_power_samples(const ExperimentSpec& spec) {
  spec.validate();
  const std::size_t m_reps = spec.replicates;
  const std::size_t t_star = spec.kappa.t_star;
  const std::size_t ell = spec.window.ell;

  std::vector<PowerSamples> out(spec.q_grid.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].q = spec.q_grid[k];
    out[k].null_s = SampleMatrix(m_reps, kNumFeatures);
    out[k].alt_s = SampleMatrix(m_reps, kNumFeatures);
  }

  KappaParams null_params = spec.kappa;
  null_params.m = 0;

  parallel_for(
      m_reps,
      [&](std::size_t j) {
        SeededRng rng(spec.seed, j);
        std::vector<Graph> prefix;
        prefix.reserve(t_star - 1);
        for (std::size_t t = 1; t < t_star; ++t) prefix.push_back(sample_kappa(null_params, rng));

        std::vector<FeatureVector> tail;
        if (!spec.vertex_standardize) {
          for (std::size_t t = t_star - 1 - ell; t < t_star; ++t) {
            tail.push_back(all_features(prefix[t - 1], spec.features));
          }
        }
        for (std::size_t k = 0; k < out.size(); ++k) {
          SeededRng branch = rng;
          KappaParams alt_params = spec.kappa;
          alt_params.q = out[k].q;
          const Graph alt = sample_kappa(alt_params, branch);
          if (spec.vertex_standardize) {
            vertex_standardized_statistics(prefix, alt, spec, out[k].null_s.row(j), out[k].alt_s.row(j));
          } else {
            raw_window_statistics(tail, all_features(alt, spec.features), spec.window,
                                  out[k].null_s.row(j), out[k].alt_s.row(j));
          }
        }
      },
      spec.threads);
  return out;
}

std::vector<std::size_t> subset_columns(const std::vector<Feature>& subset) {
  std::vector<std::size_t> cols;
  cols.reserve(subset.size());
  for (Feature f : subset) cols.push_back(feature_index(f));
  return cols;
}

PowerResult evaluate_power(const PowerSamples& samples, const WeightScheme& scheme, double alpha,
                           unsigned threads) {
  scheme.validate();
  const auto cols = subset_columns(scheme.subset);
  PowerResult r;
  r.scheme = scheme.kind;
  r.subset = scheme.subset;
  r.q = samples.q;
  r.replicates = samples.alt_s.rows();
  r.power = power(samples.null_s.select_columns(cols), samples.alt_s.select_columns(cols), scheme,
                  alpha, threads);
  r.se = standard_error(r.power, r.replicates);
  return r;
}

std::vector<std::vector<Feature>> feature_subsets(std::size_t d_prime) {
  if (d_prime < 1 || d_prime > kNumFeatures) throw ParameterError("fusion dimension must lie in 1..9");
  std::vector<std::vector<Feature>> out;
  std::vector<std::size_t> idx(d_prime);
  for (std::size_t i = 0; i < d_prime; ++i) idx[i] = i;
  while (true) {
    std::vector<Feature> subset;
    for (std::size_t i : idx) subset.push_back(kAllFeatures[i]);
    out.push_back(std::move(subset));
    std::size_t pos = d_prime;
    while (pos > 0 && idx[pos - 1] == kNumFeatures - d_prime + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < d_prime; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

BestSubset best_subset(const PowerSamples& samples, std::size_t d_prime, WeightKind kind,
                       double alpha, unsigned threads) {
  const auto subsets = feature_subsets(d_prime);
  BestSubset out;
  out.candidates.resize(subsets.size());
  parallel_for(
      subsets.size(),
      [&](std::size_t s) {
        out.candidates[s] = evaluate_power(samples, WeightScheme{kind, subsets[s]}, alpha, 1);
      },
      threads);
  std::size_t best = 0;
  for (std::size_t s = 1; s < subsets.size(); ++s) {
    if (out.candidates[s].power > out.candidates[best].power) best = s;
  }
  out.subset = subsets[best];
  out.result = out.candidates[best];
  return out;
}

BestSubset best_subset(const ExperimentSpec& spec, std::size_t d_prime, WeightKind kind) {
  ExperimentSpec single = spec;
  single.q_grid.resize(1);
  const auto samples = simulate_power_samples(single);
  return best_subset(samples.front(), d_prime, kind, spec.alpha, spec.threads);
}

std::vector<PowerResult> run_power(const ExperimentSpec& spec,
                                   const std::vector<PowerSamples>& samples) {
  std::vector<PowerResult> out;
  for (const auto& s : samples) {
    for (const auto& scheme : spec.schemes) {
      if (spec.subset_mode == SubsetMode::BestOf) {
        out.push_back(best_subset(s, spec.best_of, scheme.kind, spec.alpha, spec.threads).result);
      } else {
        out.push_back(evaluate_power(s, scheme, spec.alpha, spec.threads));
      }
    }
    if (spec.individual) {
      std::vector<WeightKind> kinds;
      for (const auto& scheme : spec.schemes) {
        if (std::find(kinds.begin(), kinds.end(), scheme.kind) == kinds.end()) kinds.push_back(scheme.kind);
      }
      if (kinds.empty()) kinds = {WeightKind::Equal, WeightKind::Adaptive};
      for (WeightKind kind : kinds) {
        for (Feature f : kAllFeatures) {
          out.push_back(evaluate_power(s, WeightScheme{kind, {f}}, spec.alpha, spec.threads));
        }
      }
    }
  }
  return out;
}

std::vector<PowerResult> run_power(const ExperimentSpec& spec) {
  spec.validate();
  try {
    return run_power(spec, simulate_power_samples(spec));
  } catch (const std::exception&) {
    if (spec.q_grid.size() == 1) throw;
  }
  // Retry q by q so values that do succeed are still reported.
  std::vector<PowerResult> out;
  for (double q : spec.q_grid) {
    ExperimentSpec single = spec;
    single.q_grid = {q};
    try {
      const auto part = run_power(single, simulate_power_samples(single));
      out.insert(out.end(), part.begin(), part.end());
    } catch (const std::exception& e) {
      for (const auto& scheme : spec.schemes) {
        PowerResult failed;
        failed.scheme = scheme.kind;
        failed.subset = scheme.subset;
        failed.q = q;
        failed.power = std::nan("");
        failed.se = std::nan("");
        failed.replicates = spec.replicates;
        failed.status = std::string("failed: ") + e.what();
        out.push_back(std::move(failed));
      }
    }
  }
  return out;
}

NormalizedFeatures normalize_series(const GraphSeries& series, const DetectOptions& opts) {
  opts.window.validate();
  if (opts.vertex_standardize) {
    return normalize(vertex_standardized_features(series, opts.window, opts.features), opts.window);
  }
  return normalize(series_features(series, opts.features), opts.window);
}

DetectionResult detect_at(const NormalizedFeatures& normalized, std::size_t t,
                          const WeightScheme& scheme, double alpha) {
  scheme.validate();
  const std::size_t first = normalized.first_valid();
  if (t < first + 2 || t > normalized.last_valid()) {
    throw ParameterError("t=" + std::to_string(t) + " is not testable; valid range is " +
                         std::to_string(first + 2) + ".." + std::to_string(normalized.last_valid()));
  }
  std::vector<std::size_t> cols;
  for (Feature f : scheme.subset) {
    const auto& feats = normalized.features();
    const auto it = std::find(feats.begin(), feats.end(), f);
    if (it == feats.end()) throw ParameterError("feature " + std::string(feature_name(f)) + " not available");
    cols.push_back(static_cast<std::size_t>(it - feats.begin()));
  }
  SampleMatrix history(t - first, cols.size());
  for (std::size_t tp = first; tp < t; ++tp) {
    for (std::size_t c = 0; c < cols.size(); ++c) history(tp - first, c) = normalized(0, tp, cols[c]);
  }
  std::vector<double> s_test(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) s_test[c] = normalized(0, t, cols[c]);
  auto result = test_at(s_test, history, scheme, alpha);
  result.t = t;
  return result;
}

std::vector<SchemeTimeline> detect_series(const NormalizedFeatures& normalized, double alpha,
                                          const std::vector<WeightScheme>& schemes) {
  const std::size_t first_test = normalized.first_valid() + 2;
  if (normalized.last_valid() < first_test) {
    throw ParameterError("series too short: no time step has two valid historical statistics");
  }
  std::vector<SchemeTimeline> out;
  for (const auto& scheme : schemes) {
    SchemeTimeline line{scheme, {}};
    for (std::size_t t = first_test; t <= normalized.last_valid(); ++t) {
      line.results.push_back(detect_at(normalized, t, scheme, alpha));
    }
    out.push_back(std::move(line));
  }
  return out;
}

std::vector<SchemeTimeline> detect_series(const GraphSeries& series, const DetectOptions& opts,
                                          const std::vector<WeightScheme>& schemes) {
  const std::size_t needed = (opts.vertex_standardize ? 2 * opts.window.ell : opts.window.ell) + 3;
  if (series.length() < needed) {
    throw ParameterError("series of length " + std::to_string(series.length()) + " too short; need >= " +
                         std::to_string(needed));
  }
  return detect_series(normalize_series(series, opts), opts.alpha, schemes);
}

std::vector<ComparisonRow> scheme_comparison_table(const NormalizedFeatures& normalized,
                                                   std::size_t t_star, double alpha) {
  std::vector<ComparisonRow> rows;
  for (std::size_t d = 1; d <= kNumFeatures; ++d) {
    ComparisonRow row;
    row.d_prime = d;
    for (const auto& subset : feature_subsets(d)) {
      const bool eq = detect_at(normalized, t_star, {WeightKind::Equal, subset}, alpha).reject;
      const bool ad = detect_at(normalized, t_star, {WeightKind::Adaptive, subset}, alpha).reject;
      ++row.total;
      if (eq && ad) ++row.both;
      else if (eq) ++row.equal_only;
      else if (ad) ++row.adaptive_only;
      else ++row.neither;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ComparisonRow> scheme_comparison_table(const GraphSeries& series, std::size_t t_star,
                                                   const DetectOptions& opts) {
  return scheme_comparison_table(normalize_series(series, opts), t_star, opts.alpha);
}

}  // namespace gtsfuse
