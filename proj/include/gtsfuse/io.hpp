#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gtsfuse/graph.hpp"
#include "gtsfuse/harness.hpp"
#include "gtsfuse/invariants.hpp"
#include "gtsfuse/temporal.hpp"

namespace gtsfuse {

struct ParseOptions {
  // Pins the vertex set and its order; labels outside it are an error.
  std::optional<std::vector<std::string>> labels;
  // Inclusive time-bin range to densify over, instead of [min t, max t].
  std::optional<std::pair<std::int64_t, std::int64_t>> time_range;
};

struct ParsedSeries {
  GraphSeries series;
  std::vector<std::string> labels;  // labels[v] is the label of vertex v
  std::int64_t first_bin = 1;       // file time bin of series.at(1)

  std::int64_t bin_of(std::size_t t) const noexcept { return first_bin + static_cast<std::int64_t>(t) - 1; }
  std::size_t index_of(std::int64_t bin) const;  // throws ParameterError when out of range
};

/**
 * Reads a time-binned edge list: one "t u v" record per line, fields split by
 * commas and/or whitespace, '#' starting a comment line. Without a label map
 * the vertex set is every label seen, ordered numerically when all labels
 * are non-negative integers and lexicographically otherwise. Missing bins
 * between the first and last become empty graphs.
 */
ParsedSeries parse_edge_list(std::istream& in, const ParseOptions& opts = {});
ParsedSeries parse_edge_list(const std::filesystem::path& path, const ParseOptions& opts = {});

/// One label per line; line i names vertex i.
std::vector<std::string> read_label_map(const std::filesystem::path& path);
void write_label_map(const std::filesystem::path& path, const std::vector<std::string>& labels);

/// Writes "t u v" records (u < v) with t = first_bin + index - 1. Labels
/// default to the vertex indices.
void write_edge_list(std::ostream& out, const GraphSeries& series,
                     const std::vector<std::string>* labels = nullptr, std::int64_t first_bin = 1);

using Cell = std::variant<std::string, double, std::int64_t, bool>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class OutputFormat { Csv, Json };

/// Six significant digits, "nan"/"inf" for non-finite values.
std::string format_number(double x);

/// "1,2,6,7"
std::string format_subset(const std::vector<Feature>& subset);
std::vector<Feature> parse_subset(const std::string& text);

ResultTable power_table(const std::vector<PowerResult>& results);
ResultTable timeline_table(const std::vector<SchemeTimeline>& timelines, std::int64_t first_bin = 1);
ResultTable comparison_table(const std::vector<ComparisonRow>& rows);
ResultTable feature_table(const FeatureMatrix& features, std::int64_t first_bin = 1);
ResultTable normalized_table(const NormalizedFeatures& normalized, std::int64_t first_bin = 1);

void write_csv(std::ostream& out, const ResultTable& table);
void write_json(std::ostream& out, const ResultTable& table);

/// Reads back the output of write_json; numbers come back as doubles,
/// booleans as bools and strings as strings.
ResultTable read_json_table(std::istream& in);

/**
 * Writes `table` to `path` in `format`. When `provenance_json` is non-empty
 * it is written next to the output as "<path>.provenance.json". An empty
 * path writes the table to `fallback`.
 */
void emit_results(const ResultTable& table, const std::filesystem::path& path, OutputFormat format,
                  const std::string& provenance_json = {}, std::ostream* fallback = nullptr);

}  // namespace gtsfuse
