#include "rmc/errors.hpp"
#include "rmc/io.hpp"

#include "hla_fixture.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rmc;

TEST_SUITE("io") {

TEST_CASE("sequence parsing strips line numbers and whitespace") {
  const SequenceDocument d = parse_sequence("1 tgggt\n61 tcagg\n");
  CHECK(d.symbols == "tgggttcagg");
  CHECK(d.alphabet == "acgt");
  CHECK(parse_sequence(d.symbols).symbols == d.symbols);
  CHECK(parse_sequence("ab", std::string_view("abc")).alphabet == "abc");
}

TEST_CASE("foreign characters are located") {
  try {
    parse_sequence("acg\nt x", std::string_view("acgt"));
    FAIL("accepted");
  } catch (const SequenceError& e) {
    CHECK(e.position() == 7);
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
    CHECK(e.character() == 'x');
  }
  CHECK_THROWS_AS(sequence_to_counts(parse_sequence("  12 ")), InputError);
}

TEST_CASE("sequence to counts") {
  const SequenceCounts aa = sequence_to_counts(parse_sequence("aa"));
  CHECK(aa.table(0, 0) == 1);
  CHECK(aa.counts.edge[*aa.graph.loop_at(0)] == 2);

  const SequenceCounts ab = sequence_to_counts(parse_sequence("ab"));
  CHECK(*ab.table.start() == 0);
  CHECK(*ab.table.end() == 1);
  CHECK(ab.counts.edge[*ab.graph.edge_between(0, 1)] == 1);

  const SequenceCounts acgt = sequence_to_counts(parse_sequence("acgtt"));
  CHECK(acgt.table.transitions() == 4);
  CHECK(acgt.counts.departures == std::vector<std::uint64_t>{1, 1, 1, 1});
  CHECK(acgt.counts.end == 3);
}

TEST_CASE("recounting equivalent sequences gives the same statistic") {
  std::mt19937_64 rng(40);
  const std::string alphabet = "abc";
  for (int rep = 0; rep < 30; ++rep) {
    std::string s;
    const std::size_t len = 2 + rng() % 7;
    for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng() % 3]);
    const SequenceCounts c = sequence_to_counts(parse_sequence(s, std::string_view(alphabet)));
    std::vector<VertexId> vs;
    for (char ch : s) vs.push_back(static_cast<VertexId>(ch - 'a'));
    for (const Path& q : enumerate_equivalent_paths(c.graph, Path(vs))) {
      std::string t;
      for (VertexId v : q.vertices()) t.push_back(alphabet[v]);
      CHECK(sequence_to_counts(parse_sequence(t, std::string_view(alphabet))).counts == c.counts);
    }
  }
}

TEST_CASE("synthetic HLA fixture reproduces the bigram table") {
  const SequenceDocument doc = parse_sequence(read_text_file(RMC_DATA_DIR "/hla_b_synthetic.txt"));
  CHECK(doc.symbols.size() == 3370);
  const SequenceCounts c = sequence_to_counts(doc);
  CHECK(c.table == rmc::test::hla_table());
  CHECK(c.table.symbol_frequencies() == std::vector<std::uint64_t>{621, 974, 1064, 711});
  CHECK(c.counts.edge[*c.graph.edge_between(0, 1)] == 373);
  CHECK(c.counts.edge[*c.graph.loop_at(0)] == 182);
}

TEST_CASE("printed listing contains a non-nucleotide character") {
  const std::string text = read_text_file(RMC_DATA_DIR "/hla_b_table2_printed.txt");
  CHECK_THROWS_AS(parse_sequence(text, std::string_view("acgt")), SequenceError);
}

TEST_CASE("decimal formatting") {
  CHECK(format_log10(LogValue::from_double(0.5), 1) == "5e-1");
  CHECK(format_log10(LogValue::zero(), 5) == "0");
  CHECK(format_log10(LogValue::from_double(100000.0), 3) == "1e5");
  CHECK(format_log10(LogValue::from_double(0.25), 1) == "2e-1");
  CHECK(format_log10(LogValue::from_double(0.375), 2) == "3.8e-1");
  CHECK(format_log10(LogValue::from_double(0.125), 2) == "1.2e-1");
  CHECK(format_log10(LogValue::from_double(2.5), 1) == "2e0");
  CHECK(format_log10(LogValue::from_double(3.5), 1) == "4e0");
  CHECK(format_log10(LogValue::from_double(9.9999), 3) == "1e1");
  const LogValue quarter_power = LogValue::from_log(wide_real(3370) * log_wide(wide_real(0.25)));
  CHECK(format_log10(quarter_power, 16) == "1.142429015368253e-2029");
  CHECK_THROWS(format_log10(LogValue::one(), 0));
  CHECK_THROWS(format_log10(LogValue::one(), 18));
}

TEST_CASE("decimal round trips") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 500; ++rep) {
    const int sig = 1 + static_cast<int>(rng() % 16);
    std::string digits(1, static_cast<char>('1' + rng() % 9));
    for (int i = 1; i < sig; ++i) digits.push_back(static_cast<char>('0' + rng() % 10));
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    const Decimal d{digits, static_cast<std::int64_t>(rng() % 8001) - 4000};
    const std::string text = format_decimal(d);
    CAPTURE(text);
    CHECK(parse_decimal(text) == d);
    CHECK(format_log10(parse_log10(text), sig) == text);
  }
  CHECK_THROWS_AS(parse_decimal("1.2.3"), InputError);
  CHECK_THROWS_AS(parse_decimal("e5"), InputError);
}

TEST_CASE("count table parsing") {
  const CountTable t = parse_count_table(read_text_file(RMC_DATA_DIR "/hla_b_counts.tsv"));
  CHECK(t == rmc::test::hla_table());
  const CountTable c = parse_count_table("# x\n,a,b\na,1,1\nb;0;0\n");
  CHECK(c == CountTable({"a", "b"}, {1, 1, 0, 0}));
  const CountTable pinned = parse_count_table("a b\na 0 1\nb 1 0\n", std::string("b"));
  CHECK(*pinned.start() == 1);
  CHECK(parse_count_table(format_count_table(t)) == t);
  CHECK_THROWS_AS(parse_count_table("a b\na 1 x\nb 0 0\n"), InputError);
  CHECK_THROWS_AS(parse_count_table("a b\na 1 1\n"), InputError);
  CHECK_THROWS_AS(parse_count_table("a b\na 1 1 1\nb 0 0\n"), InputError);
  CHECK_THROWS_AS(parse_count_table("a b\na 1 1\nb 0 0\n", std::string("z")), InputError);
}

TEST_CASE("undirected counts table") {
  const std::string text = format_undirected_counts(rmc::test::hla_table());
  CHECK(text.find("182") != std::string::npos);
  CHECK(text.find("373") != std::string::npos);
  CHECK(text.find("776") != std::string::npos);
}

TEST_CASE("graph specifications") {
  const GraphSpec s = parse_graph_spec(
      R"({"vertices": ["1", "2", "3"], "edges": [["1","2"], ["2","3"], ["1","3"]], "start": "2",
          "weights": {"1-2": 1.5, "2-3": 2, "1-3": 0.5}})");
  CHECK(s.graph.edge_count() == 3);
  CHECK(*s.start == 1);
  CHECK(*s.weights == std::vector<double>{1.5, 2.0, 0.5});
  const GraphSpec u = parse_graph_spec(R"({"vertices": ["a"], "edges": [["a","a"]], "weights": "uniform:3"})");
  CHECK(*u.weights == std::vector<double>{3.0});
  CHECK_FALSE(u.start.has_value());
  CHECK_THROWS_AS(parse_graph_spec("{"), InputError);
  CHECK_THROWS_AS(parse_graph_spec(R"({"vertices": ["a"], "edges": [["a","b"]]})"), InputError);
  CHECK_THROWS_AS(parse_graph_spec(R"({"vertices": ["a","b"], "edges": [["a","b"]], "weights": {"a-b": -1}})"),
                  InputError);
}

TEST_CASE("points and weights") {
  const Graph t = graphs::triangle();
  const SimplexPoint x = parse_simplex_point(t, R"({"1-2": 0.2, "2-3": 0.3, "1-3": 0.5})");
  CHECK(x[2] == 0.5);
  CHECK_THROWS_AS(parse_simplex_point(t, R"({"1-2": 0.2, "2-3": 0.3})"), InputError);
  CHECK_THROWS_AS(parse_simplex_point(t, R"({"1-2": 0.2, "2-3": 0.3, "1-3": 0.6})"), DomainError);
  CHECK(parse_weight_map(t, R"({"1-2": 1, "2-3": 2, "1-3": 3})") == std::vector<double>{1, 2, 3});
  CHECK(*parse_uniform_weight("uniform:0.5") == 0.5);
  CHECK_FALSE(parse_uniform_weight("{}").has_value());
  CHECK_THROWS_AS(parse_uniform_weight("uniform:0"), InputError);
}

TEST_CASE("hashing") {
  CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
  CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
  CHECK(hex64(fnv1a64("foobar")) == "85944171f73967e8");
}

}  // TEST_SUITE
