#include "gtsfuse/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "gtsfuse/error.hpp"
#include "json.hpp"

namespace gtsfuse {

namespace {

using ojson = nlohmann::ordered_json;

std::optional<std::int64_t> parse_int(const std::string& s) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::string normalized = line;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream fields(normalized);
  std::vector<std::string> out;
  for (std::string tok; fields >> tok;) out.push_back(std::move(tok));
  return out;
}

struct Record {
  std::int64_t t;
  std::string u;
  std::string v;
  std::size_t line;
};

std::vector<std::string> ordered_labels(const std::vector<Record>& records) {
  std::vector<std::string> labels;
  for (const auto& r : records) {
    labels.push_back(r.u);
    labels.push_back(r.v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const bool numeric = std::all_of(labels.begin(), labels.end(), [](const std::string& s) {
    const auto v = parse_int(s);
    return v && *v >= 0 && std::to_string(*v) == s;
  });
  if (numeric) {
    std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
      return *parse_int(a) < *parse_int(b);
    });
  }
  return labels;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<bool>(c) ? "true" : "false";
}

ojson cell_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::stod(format_number(*d));
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<bool>(c);
}

std::int64_t as_int(std::size_t x) { return static_cast<std::int64_t>(x); }

}  // namespace

std::size_t ParsedSeries::index_of(std::int64_t bin) const {
  const std::int64_t t = bin - first_bin + 1;
  if (t < 1 || t > as_int(series.length())) {
    throw ParameterError("time bin " + std::to_string(bin) + " outside the series (" + std::to_string(first_bin) +
                         ".." + std::to_string(bin_of(series.length())) + ")");
  }
  return static_cast<std::size_t>(t);
}

ParsedSeries parse_edge_list(std::istream& in, const ParseOptions& opts) {
  std::vector<Record> records;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) {
      throw InputError("line " + std::to_string(lineno) + ": expected 3 fields (t u v), got " +
                       std::to_string(fields.size()));
    }
    const auto t = parse_int(fields[0]);
    if (!t) throw InputError("line " + std::to_string(lineno) + ": time bin '" + fields[0] + "' is not an integer");
    if (*t < 1) throw InputError("line " + std::to_string(lineno) + ": time bin must be >= 1");
    records.push_back({*t, fields[1], fields[2], lineno});
  }
  if (records.empty() && !opts.time_range) throw InputError("no records");

  ParsedSeries out;
  out.labels = opts.labels ? *opts.labels : ordered_labels(records);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < out.labels.size(); ++i) {
    if (!index.emplace(out.labels[i], i).second) throw InputError("label map repeats '" + out.labels[i] + "'");
  }

  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  for (const auto& r : records) {
    lo = std::min(lo, r.t);
    hi = std::max(hi, r.t);
  }
  if (opts.time_range) {
    const auto [first, last] = *opts.time_range;
    if (first > last) throw ParameterError("empty time range");
    if (!records.empty() && (lo < first || hi > last)) throw InputError("records fall outside the requested time range");
    lo = first;
    hi = last;
  }

  std::vector<std::vector<EdgePair>> bins(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& r : records) {
    const auto iu = index.find(r.u);
    const auto iv = index.find(r.v);
    if (iu == index.end() || iv == index.end()) {
      throw InputError("line " + std::to_string(r.line) + ": label not in label map");
    }
    bins[static_cast<std::size_t>(r.t - lo)].emplace_back(iu->second, iv->second);
  }
  out.first_bin = lo;
  out.series = GraphSeries(out.labels.size(), {});
  for (const auto& edges : bins) out.series.push_back(Graph::from_edge_list(out.labels.size(), edges));
  return out;
}

ParsedSeries parse_edge_list(const std::filesystem::path& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  return parse_edge_list(in, opts);
}

std::vector<std::string> read_label_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read label map " + path.string());
  std::vector<std::string> labels;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) labels.push_back(line);
  }
  return labels;
}

void write_label_map(const std::filesystem::path& path, const std::vector<std::string>& labels) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  for (const auto& l : labels) out << l << '\n';
}

void write_edge_list(std::ostream& out, const GraphSeries& series, const std::vector<std::string>* labels,
                     std::int64_t first_bin) {
  if (labels && labels->size() != series.order()) throw ParameterError("label count does not match vertex count");
  for (std::size_t t = 1; t <= series.length(); ++t) {
    for (const auto& [u, v] : series.at(t).edge_list()) {
      out << first_bin + as_int(t) - 1 << ' ';
      if (labels) {
        out << (*labels)[u] << ' ' << (*labels)[v] << '\n';
      } else {
        out << u << ' ' << v << '\n';
      }
    }
  }
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string format_subset(const std::vector<Feature>& subset) {
  std::string out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(feature_number(subset[i]));
  }
  return out;
}

std::vector<Feature> parse_subset(const std::string& text) {
  if (text == "all") return {kAllFeatures.begin(), kAllFeatures.end()};
  std::vector<Feature> out;
  for (const auto& tok : split_fields(text)) {
    if (const auto named = feature_from_name(tok)) {
      out.push_back(*named);
      continue;
    }
    const auto k = parse_int(tok);
    if (!k) throw ParameterError("bad feature '" + tok + "' in subset");
    out.push_back(feature_from_number(static_cast<int>(*k)));
  }
  WeightScheme{WeightKind::Equal, out}.validate();
  return out;
}

ResultTable power_table(const std::vector<PowerResult>& results) {
  ResultTable table{{"scheme", "subset", "q", "power", "se", "M", "status"}, {}};
  for (const auto& r : results) {
    table.rows.push_back({std::string(weight_kind_name(r.scheme)), format_subset(r.subset), r.q, r.power, r.se,
                          as_int(r.replicates), r.status});
  }
  return table;
}

ResultTable timeline_table(const std::vector<SchemeTimeline>& timelines, std::int64_t first_bin) {
  ResultTable table{{"t", "scheme", "subset", "fused", "cv", "reject", "weights"}, {}};
  for (const auto& line : timelines) {
    for (const auto& r : line.results) {
      std::string weights;
      for (std::size_t i = 0; i < r.weights.size(); ++i) {
        if (i) weights += ' ';
        weights += format_number(r.weights[i]);
      }
      table.rows.push_back({first_bin + as_int(r.t) - 1, std::string(weight_kind_name(line.scheme.kind)),
                            format_subset(line.scheme.subset), r.fused, r.cv, r.reject, weights});
    }
  }
  return table;
}

ResultTable comparison_table(const std::vector<ComparisonRow>& rows) {
  ResultTable table{{"d_prime", "combinations", "both", "equal_only", "adaptive_only", "neither"}, {}};
  for (const auto& r : rows) {
    table.rows.push_back({as_int(r.d_prime), as_int(r.total), as_int(r.both), as_int(r.equal_only),
                          as_int(r.adaptive_only), as_int(r.neither)});
  }
  return table;
}

ResultTable feature_table(const FeatureMatrix& features, std::int64_t first_bin) {
  ResultTable table;
  table.columns.push_back("t");
  for (Feature f : features.features()) table.columns.emplace_back(feature_name(f));
  for (std::size_t t = features.first_time(); t <= features.times(); ++t) {
    std::vector<Cell> row{first_bin + as_int(t) - 1};
    for (std::size_t i = 0; i < features.dims(); ++i) row.emplace_back(features(0, t, i));
    table.rows.push_back(std::move(row));
  }
  return table;
}

ResultTable normalized_table(const NormalizedFeatures& normalized, std::int64_t first_bin) {
  ResultTable table;
  table.columns.push_back("t");
  for (Feature f : normalized.features()) table.columns.emplace_back(feature_name(f));
  for (std::size_t t = normalized.first_valid(); t <= normalized.last_valid(); ++t) {
    std::vector<Cell> row{first_bin + as_int(t) - 1};
    for (std::size_t i = 0; i < normalized.dims(); ++i) row.emplace_back(normalized(0, t, i));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_csv(std::ostream& out, const ResultTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << csv_field(table.columns[c]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(cell_text(row[c]));
    out << '\n';
  }
}

void write_json(std::ostream& out, const ResultTable& table) {
  ojson arr = ojson::array();
  for (const auto& row : table.rows) {
    ojson obj = ojson::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = cell_json(row[c]);
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

ResultTable read_json_table(std::istream& in) {
  const ojson arr = ojson::parse(in);
  if (!arr.is_array()) throw InputError("expected a JSON array of objects");
  ResultTable table;
  for (const auto& obj : arr) {
    if (table.columns.empty()) {
      for (const auto& [key, _] : obj.items()) table.columns.push_back(key);
    }
    std::vector<Cell> row;
    for (const auto& key : table.columns) {
      const auto& v = obj.at(key);
      if (v.is_string()) row.emplace_back(v.get<std::string>());
      else if (v.is_boolean()) row.emplace_back(v.get<bool>());
      else if (v.is_null()) row.emplace_back(std::nan(""));
      else row.emplace_back(v.get<double>());
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void emit_results(const ResultTable& table, const std::filesystem::path& path, OutputFormat format,
                  const std::string& provenance_json, std::ostream* fallback) {
  auto write = [&](std::ostream& out) {
    if (format == OutputFormat::Csv) write_csv(out, table);
    else write_json(out, table);
  };
  if (path.empty()) {
    if (!fallback) throw ParameterError("no output path given");
    write(*fallback);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  write(out);
  if (!out) throw InputError("write failed for " + path.string());
  if (!provenance_json.empty()) {
    std::ofstream prov(path.string() + ".provenance.json", std::ios::binary);
    if (!prov) throw InputError("cannot write provenance for " + path.string());
    prov << provenance_json << '\n';
  }
}

}  // namespace gtsfuse
