#include "gtsfuse/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gtsfuse/error.hpp"
#include "gtsfuse/harness.hpp"
#include "gtsfuse/io.hpp"
#include "gtsfuse/simulate.hpp"
#include "json.hpp"

namespace gtsfuse {

namespace {

using ojson = nlohmann::ordered_json;

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Simulate: return "simulate";
    case Mode::Features: return "features";
    case Mode::Detect: return "detect";
    case Mode::Power: return "power";
    case Mode::Table2: return "table2";
  }
  return "";
}

std::vector<WeightKind> scheme_kinds(const std::string& scheme) {
  if (scheme == "both") return {WeightKind::Equal, WeightKind::Adaptive};
  if (const auto k = weight_kind_from_name(scheme)) return {*k};
  throw ParameterError("unknown scheme '" + scheme + "' (equal, adaptive, both)");
}

OutputFormat output_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ParameterError("unknown format '" + name + "' (csv, json)");
}

KappaParams kappa_params(const RunConfig& cfg) {
  KappaParams k;
  k.n = cfg.n;
  k.p = cfg.p;
  k.m = cfg.m;
  k.q = cfg.q.value_or(cfg.p);
  k.t_star = cfg.t_star;
  k.t_max = cfg.t_max.value_or(cfg.t_star);
  k.validate();
  return k;
}

WindowParams window_params(const RunConfig& cfg) {
  WindowParams w{cfg.ell, cfg.sigma_cap};
  w.validate();
  return w;
}

std::vector<WeightScheme> schemes(const RunConfig& cfg) {
  std::vector<WeightScheme> out;
  const auto subset = parse_subset(cfg.subset);
  for (WeightKind kind : scheme_kinds(cfg.scheme)) {
    WeightScheme s{kind, subset};
    s.validate();
    out.push_back(std::move(s));
  }
  return out;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0,1)");
}

std::string provenance(const RunConfig& cfg) {
  ojson doc;
  doc["command"] = std::string(mode_name(cfg.mode));
  doc["seed"] = cfg.seed;
  doc["config"] = ojson::parse(config_json(cfg));
  return doc.dump(2);
}

ParsedSeries load_series(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ParameterError("--input is required");
  ParseOptions opts;
  if (!cfg.labels.empty()) opts.labels = read_label_map(cfg.labels);
  auto parsed = parse_edge_list(std::filesystem::path(cfg.input), opts);
  if (!cfg.out.empty()) write_label_map(cfg.out + ".labels", parsed.labels);
  return parsed;
}

DetectOptions detect_options(const RunConfig& cfg) {
  DetectOptions opts;
  opts.window = window_params(cfg);
  opts.alpha = cfg.alpha;
  check_alpha(cfg.alpha);
  opts.vertex_standardize = cfg.vertex_standardize.value_or(true);
  opts.features.cc_literal = cfg.cc_literal;
  return opts;
}

void run_simulate(const RunConfig& cfg, std::ostream& out) {
  const KappaParams params = kappa_params(cfg);
  SeededRng rng(cfg.seed, 0);
  GraphSeries series;
  if (cfg.model == "kappa") {
    series = sample_series(params, rng);
  } else if (cfg.model == "rdpg") {
    series = sample_rdpg_series(params, make_latent(params.p, params.q), rng);
  } else {
    throw ParameterError("unknown model '" + cfg.model + "' (kappa, rdpg)");
  }
  auto write = [&](std::ostream& os) {
    os << "# gtsfuse simulate model=" << cfg.model << " n=" << params.n << " p=" << format_number(params.p)
       << " m=" << params.m << " q=" << format_number(params.q) << " t_star=" << params.t_star
       << " t_max=" << params.t_max << " seed=" << cfg.seed << '\n';
    write_edge_list(os, series);
  };
  if (cfg.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw InputError("cannot write " + cfg.out);
  write(file);
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < params.n; ++v) labels.push_back(std::to_string(v));
  write_label_map(cfg.out + ".labels", labels);
}

void run_features(const RunConfig& cfg, std::ostream& out) {
  const auto format = output_format(cfg.format);
  const auto parsed = load_series(cfg);
  FeatureOptions fopts;
  fopts.cc_literal = cfg.cc_literal;
  ResultTable table;
  if (cfg.normalized) {
    DetectOptions opts = detect_options(cfg);
    opts.vertex_standardize = cfg.vertex_standardize.value_or(false);
    table = normalized_table(normalize_series(parsed.series, opts), parsed.first_bin);
  } else {
    table = feature_table(series_features(parsed.series, fopts), parsed.first_bin);
  }
  emit_results(table, cfg.out, format, provenance(cfg), &out);
}

void run_detect(const RunConfig& cfg, std::ostream& out) {
  const auto format = output_format(cfg.format);
  const auto opts = detect_options(cfg);
  const auto sch = schemes(cfg);
  const auto parsed = load_series(cfg);
  const auto timelines = detect_series(parsed.series, opts, sch);
  emit_results(timeline_table(timelines, parsed.first_bin), cfg.out, format, provenance(cfg), &out);
}

void run_table2(const RunConfig& cfg, std::ostream& out) {
  const auto format = output_format(cfg.format);
  const auto opts = detect_options(cfg);
  const auto parsed = load_series(cfg);
  const auto rows = scheme_comparison_table(parsed.series, parsed.index_of(static_cast<std::int64_t>(cfg.t_star)), opts);
  emit_results(comparison_table(rows), cfg.out, format, provenance(cfg), &out);
}

void run_power_mode(const RunConfig& cfg, std::ostream& out) {
  const auto format = output_format(cfg.format);
  ExperimentSpec spec;
  spec.kappa = kappa_params(cfg);
  spec.kappa.t_max = spec.kappa.t_star;
  spec.q_grid = cfg.q ? std::vector<double>{*cfg.q} : cfg.q_grid;
  spec.replicates = cfg.replicates;
  spec.alpha = cfg.alpha;
  spec.window = window_params(cfg);
  spec.schemes = schemes(cfg);
  if (cfg.best_of > 0) {
    spec.subset_mode = SubsetMode::BestOf;
    spec.best_of = cfg.best_of;
  }
  spec.individual = cfg.individual;
  spec.vertex_standardize = cfg.vertex_standardize.value_or(false);
  spec.features.cc_literal = cfg.cc_literal;
  spec.seed = cfg.seed;
  spec.threads = cfg.threads;
  spec.validate();
  emit_results(power_table(run_power(spec)), cfg.out, format, provenance(cfg), &out);
}

void add_model_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--n", cfg.n, "vertex count");
  app->add_option("--p", cfg.p, "null edge probability");
  app->add_option("--m", cfg.m, "egg size");
  app->add_option("--t-star", cfg.t_star, "change-point time");
  app->add_option("--seed", cfg.seed, "master seed");
}

void add_stat_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--ell", cfg.ell, "running window length");
  app->add_option("--sigma-cap", cfg.sigma_cap, "|z| used when the window has zero spread");
  app->add_option("--alpha", cfg.alpha, "significance level");
  app->add_flag("--cc-literal", cfg.cc_literal, "clustering coefficient as ct/ot");
  app->add_option("--vertex-standardize", cfg.vertex_standardize,
                  "vertex-standardize localized features (true/false)");
}

void add_io_flags(CLI::App* app, RunConfig& cfg, bool needs_input) {
  if (needs_input) {
    app->add_option("--input", cfg.input, "time-binned edge list")->required();
    app->add_option("--labels", cfg.labels, "label map pinning the vertex set and order");
  }
  app->add_option("--out", cfg.out, "output path (stdout when omitted)");
  app->add_option("--format", cfg.format, "csv or json");
}

}  // namespace

std::string config_json(const RunConfig& cfg) {
  ojson j;
  j["mode"] = std::string(mode_name(cfg.mode));
  j["n"] = cfg.n;
  j["p"] = cfg.p;
  j["m"] = cfg.m;
  j["q"] = cfg.q ? ojson(*cfg.q) : ojson(nullptr);
  j["q_grid"] = cfg.q_grid;
  j["t_star"] = cfg.t_star;
  j["t_max"] = cfg.t_max ? ojson(*cfg.t_max) : ojson(nullptr);
  j["model"] = cfg.model;
  j["ell"] = cfg.ell;
  j["sigma_cap"] = cfg.sigma_cap;
  j["alpha"] = cfg.alpha;
  j["M"] = cfg.replicates;
  j["scheme"] = cfg.scheme;
  j["subset"] = cfg.subset;
  j["best_of"] = cfg.best_of;
  j["individual"] = cfg.individual;
  j["vertex_standardize"] = cfg.vertex_standardize ? ojson(*cfg.vertex_standardize) : ojson(nullptr);
  j["cc_literal"] = cfg.cc_literal;
  j["normalized"] = cfg.normalized;
  j["seed"] = cfg.seed;
  j["input"] = cfg.input;
  j["labels"] = cfg.labels;
  j["out"] = cfg.out;
  j["format"] = cfg.format;
  return j.dump();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Anomaly detection in time series of graphs by fusion of graph invariants", "gtsfuse"};
  app.set_config("--config", "", "TOML/INI file supplying defaults; flags override");
  app.require_subcommand(1, 1);

  auto* simulate = app.add_subcommand("simulate", "sample a kidney-egg graph series as an edge list");
  add_model_flags(simulate, cfg);
  simulate->add_option("--q", cfg.q, "egg edge probability (defaults to p)");
  simulate->add_option("--t-max", cfg.t_max, "series length (defaults to t-star)");
  simulate->add_option("--model", cfg.model, "kappa or rdpg");
  add_io_flags(simulate, cfg, false);

  auto* features = app.add_subcommand("features", "compute the nine invariants per time bin");
  add_stat_flags(features, cfg);
  features->add_flag("--normalized", cfg.normalized, "emit windowed z-scores instead of raw values");
  add_io_flags(features, cfg, true);

  auto* detect = app.add_subcommand("detect", "fusion test at every time bin of an observed series");
  add_stat_flags(detect, cfg);
  detect->add_option("--scheme", cfg.scheme, "equal, adaptive or both");
  detect->add_option("--subset", cfg.subset, "feature numbers, e.g. 1,2 (default all)");
  add_io_flags(detect, cfg, true);

  auto* power = app.add_subcommand("power", "Monte Carlo power of the fusion test");
  add_model_flags(power, cfg);
  add_stat_flags(power, cfg);
  power->add_option("--q", cfg.q, "single egg edge probability (overrides --q-grid)");
  power->add_option("--q-grid", cfg.q_grid, "egg edge probabilities")->delimiter(',');
  power->add_option("--M", cfg.replicates, "Monte Carlo replicates");
  power->add_option("--scheme", cfg.scheme, "equal, adaptive or both");
  power->add_option("--subset", cfg.subset, "feature numbers, e.g. 1,2 (default all)");
  power->add_option("--best-of", cfg.best_of, "search all subsets of this size instead of --subset");
  power->add_flag("--individual", cfg.individual, "also report each single feature");
  power->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
  add_io_flags(power, cfg, false);

  auto* table2 = app.add_subcommand("table2", "equal vs adaptive detections at t-star over all subsets");
  add_stat_flags(table2, cfg);
  table2->add_option("--t-star", cfg.t_star, "time bin to test")->required();
  add_io_flags(table2, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  if (*simulate) cfg.mode = Mode::Simulate;
  else if (*features) cfg.mode = Mode::Features;
  else if (*detect) cfg.mode = Mode::Detect;
  else if (*power) cfg.mode = Mode::Power;
  else cfg.mode = Mode::Table2;

  err << "gtsfuse: config " << config_json(cfg) << '\n';
  err << "gtsfuse: master seed " << cfg.seed << '\n';
  try {
    switch (cfg.mode) {
      case Mode::Simulate: run_simulate(cfg, out); break;
      case Mode::Features: run_features(cfg, out); break;
      case Mode::Detect: run_detect(cfg, out); break;
      case Mode::Power: run_power_mode(cfg, out); break;
      case Mode::Table2: run_table2(cfg, out); break;
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace gtsfuse
