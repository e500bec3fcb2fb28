#pragma once

#include "rmc/errors.hpp"
#include "rmc/graph.hpp"
#include "rmc/inference.hpp"
#include "rmc/log_value.hpp"
#include "rmc/path_stats.hpp"
#include "rmc/prior_density.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rmc {

/// A character outside the alphabet; position is 1-based in the raw text.
class SequenceError : public InputError {
 public:
  SequenceError(std::size_t position, std::size_t line, std::size_t column, char character);
  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  char character() const noexcept { return character_; }

 private:
  std::size_t position_;
  std::size_t line_;
  std::size_t column_;
  char character_;
};

struct SequenceDocument {
  std::string raw;
  std::string symbols;
  std::string alphabet;  ///< sorted, distinct
};

/// Drops whitespace and digits (line numbers of tabular listings) and
/// checks the rest against alphabet. Without an alphabet the observed
/// symbol set is used.
SequenceDocument parse_sequence(std::string_view text, std::optional<std::string_view> alphabet = std::nullopt);

struct SequenceCounts {
  CountTable table;
  Graph graph;  ///< complete graph with loops over the alphabet
  TransitionCounts counts;
};

/// Throws InputError for an empty sequence.
SequenceCounts sequence_to_counts(const SequenceDocument& doc);

/// Mantissa digits (no trailing zeros) and a power of ten:
/// value = 0.d1d2... * 10 * 10^exponent, i.e. d1.d2... e exponent.
struct Decimal {
  std::string digits;
  std::int64_t exponent = 0;

  friend bool operator==(const Decimal&, const Decimal&) = default;
};

/// Rounds v to sig significant digits, half to even, and renders it as
/// "d.ddd e<exp>" without the space, e.g. "1.142429015368253e-2029".
/// Zero renders as "0".
std::string format_log10(const LogValue& v, int sig);
Decimal to_decimal(const LogValue& v, int sig);
std::string format_decimal(const Decimal& d);
Decimal parse_decimal(std::string_view text);
LogValue parse_log10(std::string_view text);

/// Delimited table (whitespace, comma or tab) with a header row of symbols
/// and one labelled row per symbol. Lines starting with '#' are ignored.
CountTable parse_count_table(std::string_view text, std::optional<std::string> start = std::nullopt,
                             std::optional<std::string> end = std::nullopt);
std::string format_count_table(const CountTable& table);
/// k_{ij} table with the diagonal doubled.
std::string format_undirected_counts(const CountTable& table);

/// JSON {"vertices": [...], "edges": [["u","v"], ...], "start": "u",
/// "weights": {"u-v": a, ...}}; start and weights are optional.
struct GraphSpec {
  Graph graph;
  std::optional<VertexId> start;
  std::optional<std::vector<double>> weights;
};
GraphSpec parse_graph_spec(std::string_view json_text);

/// JSON {"u-v": x, ...} covering every edge and summing to one.
SimplexPoint parse_simplex_point(const Graph& g, std::string_view json_text);

/// Edge weights from "uniform:c" or a JSON edge-label map (text).
std::vector<double> parse_weight_map(const Graph& g, std::string_view json_text);
std::optional<double> parse_uniform_weight(std::string_view spec);

std::string read_text_file(const std::string& path);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

}  // namespace rmc
