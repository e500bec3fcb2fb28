#include "rmc/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rmc {

namespace {

std::string describe_char(char c) {
  if (std::isprint(static_cast<unsigned char>(c))) return std::string("'") + c + "'";
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%02x", static_cast<unsigned>(static_cast<unsigned char>(c)));
  return buf;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';') {
      if (!field.empty()) out.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (!field.empty()) out.push_back(std::move(field));
  return out;
}

std::uint64_t parse_count(const std::string& field, std::size_t line_no) {
  std::uint64_t value = 0;
  if (field.empty() || !std::all_of(field.begin(), field.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw InputError("line " + std::to_string(line_no) + ": '" + field + "' is not a nonnegative integer count");
  for (char c : field) value = value * 10 + static_cast<std::uint64_t>(c - '0');
  return value;
}

using nlohmann::json;

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

std::string json_label(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError("vertex labels must be strings or integers");
}

double json_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw InputError("value for " + key + " is not a number");
  return j.get<double>();
}

}  // namespace

SequenceError::SequenceError(std::size_t position, std::size_t line, std::size_t column, char character)
    : InputError("unexpected character " + describe_char(character) + " at position " + std::to_string(position) +
                 " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
      position_(position),
      line_(line),
      column_(column),
      character_(character) {}

SequenceDocument parse_sequence(std::string_view text, std::optional<std::string_view> alphabet) {
  if (alphabet && alphabet->empty()) throw InputError("alphabet is empty");
  SequenceDocument doc;
  doc.raw = std::string(text);
  std::size_t line = 1;
  std::size_t column = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 0;
      continue;
    }
    ++column;
    const auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc) || std::isdigit(uc)) continue;
    if (alphabet ? alphabet->find(c) == std::string_view::npos : !std::isgraph(uc))
      throw SequenceError(i + 1, line, column, c);
    doc.symbols.push_back(c);
  }
  std::set<char> letters;
  if (alphabet) letters.insert(alphabet->begin(), alphabet->end());
  else letters.insert(doc.symbols.begin(), doc.symbols.end());
  doc.alphabet.assign(letters.begin(), letters.end());
  return doc;
}

SequenceCounts sequence_to_counts(const SequenceDocument& doc) {
  if (doc.symbols.empty()) throw InputError("sequence is empty");
  const std::size_t n = doc.alphabet.size();
  std::vector<std::string> symbols;
  for (char c : doc.alphabet) symbols.emplace_back(1, c);
  const auto index = [&](char c) {
    const auto pos = doc.alphabet.find(c);
    if (pos == std::string::npos) throw InputError("symbol " + describe_char(c) + " is not in the alphabet");
    return pos;
  };
  std::vector<std::uint64_t> counts(n * n, 0);
  for (std::size_t i = 1; i < doc.symbols.size(); ++i) ++counts[index(doc.symbols[i - 1]) * n + index(doc.symbols[i])];
  CountTable table(std::move(symbols), std::move(counts), index(doc.symbols.front()), index(doc.symbols.back()));
  Graph graph = count_table_graph(table);
  TransitionCounts stats = count_table_statistic(graph, table);
  return SequenceCounts{std::move(table), std::move(graph), std::move(stats)};
}

Decimal to_decimal(const LogValue& v, int sig) {
  if (sig < 1 || sig > 17) throw InputError("significant digits must be in 1..17");
  if (v.is_zero()) return Decimal{"0", 0};
  using boost::multiprecision::floor;
  const wide_real l10 = v.log() / ln10_wide();
  auto exponent = static_cast<std::int64_t>(floor(l10).convert_to<long long>());
  const wide_real scaled = exp((l10 - wide_real(exponent) + (sig - 1)) * ln10_wide());
  wide_real whole = floor(scaled);
  const wide_real frac = scaled - whole;
  const wide_real tie_window = scaled * wide_real(1e-30);
  if (abs(frac - wide_real(0.5)) <= tie_window) {
    if (fmod(whole, wide_real(2)) != 0) whole += 1;
  } else if (frac > 0.5) {
    whole += 1;
  }
  auto mantissa = whole.convert_to<std::uint64_t>();
  std::uint64_t limit = 1;
  for (int i = 0; i < sig; ++i) limit *= 10;
  if (mantissa >= limit) {
    mantissa /= 10;
    ++exponent;
  }
  std::string digits = std::to_string(mantissa);
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  return Decimal{digits, exponent};
}

std::string format_decimal(const Decimal& d) {
  if (d.digits == "0") return "0";
  std::string out(1, d.digits.front());
  if (d.digits.size() > 1) out += "." + d.digits.substr(1);
  return out + "e" + std::to_string(d.exponent);
}

std::string format_log10(const LogValue& v, int sig) { return format_decimal(to_decimal(v, sig)); }

Decimal parse_decimal(std::string_view text) {
  if (text == "0") return Decimal{"0", 0};
  const auto e_pos = text.find_first_of("eE");
  const std::string_view mant = text.substr(0, e_pos);
  Decimal d;
  std::int64_t point_shift = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (char c : mant) {
    any_digit = any_digit || (c >= '0' && c <= '9');
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      if (d.digits.empty() && c == '0') {
        if (seen_point) --point_shift;
        continue;
      }
      d.digits.push_back(c);
      if (!seen_point) ++point_shift;
    } else {
      throw InputError("malformed decimal '" + std::string(text) + "'");
    }
  }
  if (!any_digit) throw InputError("malformed decimal '" + std::string(text) + "'");
  if (d.digits.empty()) return Decimal{"0", 0};
  std::int64_t exponent = 0;
  if (e_pos != std::string_view::npos) {
    const std::string exp_text(text.substr(e_pos + 1));
    std::size_t used = 0;
    try {
      exponent = std::stoll(exp_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (exp_text.empty() || used != exp_text.size())
      throw InputError("malformed exponent in '" + std::string(text) + "'");
  }
  d.exponent = exponent + point_shift - 1;
  while (d.digits.size() > 1 && d.digits.back() == '0') d.digits.pop_back();
  return d;
}

LogValue parse_log10(std::string_view text) {
  const Decimal d = parse_decimal(text);
  if (d.digits == "0") return LogValue::zero();
  const auto len = static_cast<std::int64_t>(d.digits.size());
  return LogValue::from_log(log_wide(wide_real(d.digits)) + wide_real(d.exponent - len + 1) * ln10_wide());
}

CountTable parse_count_table(std::string_view text, std::optional<std::string> start, std::optional<std::string> end) {
  std::vector<std::string> header;
  std::map<std::string, std::vector<std::uint64_t>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto fields = split_fields(line);
    if (header.empty()) {
      header = std::move(fields);
      continue;
    }
    if (fields.size() != header.size() + 1)
      throw InputError("line " + std::to_string(line_no) + ": expected a label and " + std::to_string(header.size()) +
                       " counts");
    std::vector<std::uint64_t> row;
    for (std::size_t j = 1; j < fields.size(); ++j) row.push_back(parse_count(fields[j], line_no));
    if (!rows.emplace(fields[0], std::move(row)).second)
      throw InputError("line " + std::to_string(line_no) + ": duplicate row " + fields[0]);
  }
  if (header.empty()) throw InputError("count table is empty");
  std::vector<std::uint64_t> counts;
  for (const std::string& s : header) {
    const auto it = rows.find(s);
    if (it == rows.end()) throw InputError("count table has no row for symbol " + s);
    counts.insert(counts.end(), it->second.begin(), it->second.end());
  }
  if (rows.size() != header.size()) throw InputError("count table has rows for symbols missing from the header");
  const auto lookup = [&](const std::optional<std::string>& s) -> std::optional<std::size_t> {
    if (!s) return std::nullopt;
    const auto it = std::find(header.begin(), header.end(), *s);
    if (it == header.end()) throw InputError("symbol " + *s + " is not in the count table");
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto s = lookup(start);
  const auto e = lookup(end);
  return CountTable(header, std::move(counts), s, e);
}

namespace {

std::string format_square(const std::vector<std::string>& symbols, const std::vector<std::uint64_t>& cells) {
  std::ostringstream out;
  for (const auto& s : symbols) out << '\t' << s;
  out << '\n';
  const std::size_t n = symbols.size();
  for (std::size_t i = 0; i < n; ++i) {
    out << symbols[i];
    for (std::size_t j = 0; j < n; ++j) out << '\t' << cells[i * n + j];
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string format_count_table(const CountTable& table) { return format_square(table.symbols(), table.counts()); }

std::string format_undirected_counts(const CountTable& table) {
  const std::size_t n = table.size();
  std::vector<std::uint64_t> k(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k[i * n + j] = i == j ? 2 * table(i, i) : table(i, j) + table(j, i);
  return format_square(table.symbols(), k);
}

namespace {

std::vector<double> edge_value_map(const Graph& g, std::string_view json_text) {
  const json j = parse_json(json_text, "weights");
  if (!j.is_object()) throw InputError("weights must be a JSON object mapping edge labels to numbers");
  std::vector<double> out(g.edge_count(), 0.0);
  std::vector<bool> seen(g.edge_count(), false);
  for (const auto& [key, value] : j.items()) {
    const auto e = g.find_edge(key);
    if (!e) throw InputError("unknown edge '" + key + "'");
    if (seen[*e]) throw InputError("edge '" + key + "' given twice");
    seen[*e] = true;
    out[*e] = json_number(value, key);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!seen[e]) throw InputError("no value for edge " + g.edge_label(e));
  return out;
}

}  // namespace

std::vector<double> parse_weight_map(const Graph& g, std::string_view json_text) {
  std::vector<double> out = edge_value_map(g, json_text);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!(out[e] > 0.0) || !std::isfinite(out[e]))
      throw InputError("weight for edge " + g.edge_label(e) + " must be positive");
  return out;
}

std::optional<double> parse_uniform_weight(std::string_view spec) {
  constexpr std::string_view prefix = "uniform:";
  if (spec.substr(0, prefix.size()) != prefix) return std::nullopt;
  const std::string value(spec.substr(prefix.size()));
  std::size_t used = 0;
  double c = 0.0;
  try {
    c = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (value.empty() || used != value.size() || !(c > 0.0) || !std::isfinite(c))
    throw InputError("'" + std::string(spec) + "' is not uniform:<positive number>");
  return c;
}

GraphSpec parse_graph_spec(std::string_view json_text) {
  const json j = parse_json(json_text, "graph spec");
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw InputError("graph spec needs \"vertices\" and \"edges\"");
  std::vector<std::string> labels;
  for (const auto& v : j.at("vertices")) labels.push_back(json_label(v));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw InputError("each edge must be a pair of vertex labels");
    pairs.emplace_back(json_label(e[0]), json_label(e[1]));
  }
  GraphSpec spec{Graph::build(std::move(labels), pairs), std::nullopt, std::nullopt};
  if (j.contains("start")) spec.start = spec.graph.vertex(json_label(j.at("start")));
  if (j.contains("weights")) {
    const json& w = j.at("weights");
    if (w.is_string()) {
      const auto c = parse_uniform_weight(w.get<std::string>());
      if (!c) throw InputError("weights string must be uniform:<c>");
      spec.weights = std::vector<double>(spec.graph.edge_count(), *c);
    } else {
      spec.weights = parse_weight_map(spec.graph, w.dump());
    }
  }
  return spec;
}

SimplexPoint parse_simplex_point(const Graph& g, std::string_view json_text) {
  return SimplexPoint(edge_value_map(g, json_text));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace rmc
