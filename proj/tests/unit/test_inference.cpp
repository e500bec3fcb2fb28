#include "rmc/errors.hpp"
#include "rmc/errw.hpp"
#include "rmc/inference.hpp"
#include "rmc/io.hpp"
#include "rmc/prior_density.hpp"

#include "hla_fixture.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace rmc;

namespace {

double prob(const LogValue& v) { return v.to_double(); }

}  // namespace

TEST_SUITE("inference") {

TEST_CASE("posterior update") {
  const Graph t = graphs::triangle();
  const PriorParams a = PriorParams::uniform(t, 0);
  CHECK(posterior_update(t, a, transition_counts(t, Path({0}))) == a);
  const PriorParams post = posterior_update(t, a, transition_counts(t, Path({0, 1, 2, 0})));
  CHECK(post == PriorParams(t, 0, {2, 2, 2}));
  const PriorParams moved = posterior_update(t, a, transition_counts(t, Path({0, 1})));
  CHECK(moved.start() == 1);
  CHECK_THROWS_AS(posterior_update(t, a, transition_counts(t, Path({1, 0}))), InputError);
}

TEST_CASE("posterior update on the HLA counts") {
  const CountTable table = rmc::test::hla_table();
  const Graph g = count_table_graph(table);
  const TransitionCounts k = count_table_statistic(g, table);
  const PriorParams post = posterior_update(g, PriorParams::uniform(g, g.vertex("t")), k);
  CHECK(post.start() == g.vertex("a"));
  const std::vector<std::pair<std::string, double>> table4{
      {"a-a", 182}, {"a-c", 373}, {"a-g", 512}, {"a-t", 174}, {"c-c", 702},
      {"c-g", 385}, {"c-t", 488}, {"g-g", 776}, {"g-t", 455}, {"t-t", 304}};
  for (const auto& [label, k_e] : table4) CHECK(post[*g.find_edge(label)] == 1.0 + k_e);
}

TEST_CASE("marginal likelihood examples") {
  const Graph t = graphs::triangle();
  const PriorParams a = PriorParams::uniform(t, 0);
  CHECK(prob(log_marginal_reversible(t, a, transition_counts(t, Path({0, 1, 0})))) == doctest::Approx(1.0 / 3));
  CHECK(prob(log_marginal_reversible(t, a, transition_counts(t, Path({1, 2, 1})), true)) ==
        doctest::Approx(2.0 / 9));
  CHECK(prob(log_marginal_reversible(t, a, transition_counts(t, Path({0})))) == 1.0);
  CHECK_THROWS_AS(log_marginal_reversible(t, a, transition_counts(t, Path({1, 2}))), InputError);
  CHECK_THROWS_AS(log_marginal_reversible(t, a, transition_counts(t, Path({1, 2})), true), InputError);
  CHECK_THROWS_AS(log_marginal_reversible(t, a, transition_counts(t, Path({1, 0, 1})), true), InputError);
  CHECK_THROWS_AS(log_marginal_reversible(t, a, transition_counts(t, Path({0, 1, 0})), true), InputError);
}

TEST_CASE("closed form equals the sequential reinforced walk") {
  std::mt19937_64 rng(31);
  for (const Graph& g : {graphs::triangle(true), graphs::complete(4, false), graphs::star_with_loops(2)}) {
    for (int rep = 0; rep < 3; ++rep) {
      const PriorParams a(g, rng() % g.vertex_count(), rmc::test::random_weights(rng, g.edge_count()));
      for (const Path& p : enumerate_paths(g, a.start(), 4)) {
        const wide_real lhs = log_marginal_reversible(g, a, transition_counts(g, p)).log();
        const wide_real rhs = errw_path_log_prob(g, a, p).log();
        CHECK(abs(lhs - rhs) < wide_real(1e-25));
      }
    }
  }
}

TEST_CASE("closed form equals Monte Carlo integration of the Markov likelihood") {
  // Q_x(pi) integrated against phi, by uniform sampling on the simplex.
  const Graph t = graphs::triangle();
  const PriorParams a(t, 0, {1.5, 2.0, 1.0});
  const PriorDensity phi(t, a);
  const std::vector<Path> paths{Path({0, 1, 2, 0}), Path({0, 1, 0, 2}), Path({0, 2, 0, 2, 1})};
  std::mt19937_64 rng(32);
  const int n = 300000;
  std::vector<double> sum(paths.size(), 0.0), sq(paths.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    const SimplexPoint x = rmc::test::random_point(rng, 3);
    const double density = std::exp(phi.log_density(x));
    for (std::size_t j = 0; j < paths.size(); ++j) {
      const double f = rmc::test::sequential_markov_prob(t, x, paths[j]) * density;
      sum[j] += f;
      sq[j] += f * f;
    }
  }
  for (std::size_t j = 0; j < paths.size(); ++j) {
    const double mean = sum[j] / n;
    const double se = std::sqrt((sq[j] / n - mean * mean) / n);
    const double exact = prob(log_marginal_reversible(t, a, transition_counts(t, paths[j])));
    CHECK(std::abs(mean - exact) < 4 * se);
  }
}

TEST_CASE("chain rule through the posterior") {
  std::mt19937_64 rng(33);
  const Graph g = graphs::complete(4, true);
  for (int rep = 0; rep < 50; ++rep) {
    const PriorParams prior(g, rng() % 4, rmc::test::random_weights(rng, g.edge_count()));
    std::vector<VertexId> vs{prior.start()};
    const std::size_t len = 2 + rng() % 40;
    for (std::size_t i = 0; i < len; ++i) vs.push_back(rng() % 4);
    const std::size_t cut = 1 + rng() % len;
    const Path whole(vs);
    const Path head(std::vector<VertexId>(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(cut) + 1));
    const Path tail(std::vector<VertexId>(vs.begin() + static_cast<std::ptrdiff_t>(cut), vs.end()));
    const TransitionCounts head_counts = transition_counts(g, head);
    const PriorParams updated = posterior_update(g, prior, head_counts);
    const wide_real lhs = log_marginal_reversible(g, prior, transition_counts(g, whole)).log();
    const wide_real rhs = log_marginal_reversible(g, prior, head_counts).log() +
                          log_marginal_reversible(g, updated, transition_counts(g, tail)).log();
    // Updated weights a_e + k_e are rounded to double once.
    CHECK(abs(lhs - rhs) < wide_real(1e-13));
  }
}

TEST_CASE("back-and-forth moments") {
  const Graph t = graphs::triangle();
  const PriorParams a = PriorParams::uniform(t, 0);
  CHECK(moment_back_forth(t, a, *t.edge_between(0, 1)) == doctest::Approx(1.0 / 3));
  CHECK(moment_back_forth(t, a, *t.edge_between(1, 2)) == doctest::Approx(2.0 / 9));
  const Graph tl = graphs::triangle(true);
  CHECK(moment_back_forth(tl, PriorParams::uniform(tl, 0), *tl.loop_at(0)) == doctest::Approx(1.0 / 3));
}

TEST_CASE("moments equal two-step marginals") {
  std::mt19937_64 rng(34);
  const Graph g = graphs::complete(4, true);
  for (int rep = 0; rep < 10; ++rep) {
    const PriorParams a(g, rng() % 4, rmc::test::random_weights(rng, g.edge_count()));
    const VertexId v0 = a.start();
    for (const Edge& e : g.edges()) {
      const double m = moment_back_forth(g, a, e.id);
      LogValue two_step;
      if (e.is_loop() && e.u == v0) two_step = log_marginal_reversible(g, a, transition_counts(g, Path({v0, v0})));
      else if (e.is_loop()) two_step = log_marginal_reversible(g, a, transition_counts(g, Path({e.u, e.u})), true);
      else if (e.touches(v0))
        two_step = log_marginal_reversible(g, a, transition_counts(g, Path({v0, e.other(v0), v0})));
      else two_step = log_marginal_reversible(g, a, transition_counts(g, Path({e.u, e.v, e.u})), true);
      CHECK(std::abs(std::log(m) - two_step.log_double()) < 1e-13);
    }
  }
}

TEST_CASE("off-endpoint moment by Monte Carlo over the prior density") {
  const Graph t = graphs::triangle();
  const PriorParams a(t, 0, {1.2, 2.5, 0.8});
  const PriorDensity phi(t, a);
  const EdgeId e = *t.edge_between(1, 2);
  std::mt19937_64 rng(35);
  const int n = 300000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const SimplexPoint x = rmc::test::random_point(rng, 3);
    const auto xv = x.vertex_weights(t);
    const double f = x[e] * x[e] / (xv[1] * xv[2]) * std::exp(phi.log_density(x));
    sum += f;
    sq += f * f;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / n);
  CHECK(std::abs(mean - moment_back_forth(t, a, e)) < 4 * se);
}

TEST_CASE("HLA marginal likelihoods and Bayes factors") {
  const CountTable table = rmc::test::hla_table();
  const LogValue uniform = log_marginal(model::IidUniform{}, table);
  const LogValue iid = log_marginal(model::IidDirichlet{}, table);
  const LogValue rev = log_marginal(model::Reversible{}, table);
  const LogValue markov = log_marginal(model::FullMarkov{}, table);
  CHECK(format_log10(uniform, 16) == "1.142429015368253e-2029");
  CHECK(format_log10(iid, 16) == "1.140417804695619e-1999");
  CHECK(format_log10(rev, 16) == "2.166939224648291e-1961");
  CHECK(format_log10(markov, 15) == "4.16382063735625e-1956");
  CHECK(bayes_factor(uniform, iid).text == "1.00176e-30");
  CHECK(bayes_factor(iid, rev).text == "5.2628e-39");
  CHECK(bayes_factor(rev, markov).text == "5.20421e-6");
  CHECK(bayes_factor(iid, markov).text == "2.73887e-44");
  CHECK(bayes_factor(iid, rev).log10 == doctest::Approx(std::log10(5.2628e-39)).epsilon(1e-6));
  CHECK_THROWS_AS(log_marginal_competitor(model::Reversible{}, table), InputError);
}

TEST_CASE("Bayes factor text does not depend on the log base") {
  const CountTable table = rmc::test::hla_table();
  const LogValue iid = log_marginal(model::IidDirichlet{}, table);
  const LogValue rev = log_marginal(model::Reversible{}, table);
  const wide_real via_log10 = (iid.log() / ln10_wide() - rev.log() / ln10_wide()) * ln10_wide();
  const wide_real log2 = log_wide(wide_real(2));
  const wide_real via_log2 = (iid.log() / log2 - rev.log() / log2) * log2;
  CHECK(format_log10(LogValue::from_log(via_log10), 6) == bayes_factor(iid, rev).text);
  CHECK(format_log10(LogValue::from_log(via_log2), 6) == bayes_factor(iid, rev).text);
  CHECK_THROWS_AS(bayes_factor(LogValue::zero(), rev), DomainError);
}

TEST_CASE("competitor marginals on a small table") {
  // Sequence "aab": iid-uniform (1/2)^3; Dirichlet(1,1) 2!1!/4! * 1!; rows
  // a: {a:1, b:1} -> 1!1!/3! * 1!, b: empty -> 1.
  const CountTable table({"a", "b"}, {1, 1, 0, 0});
  CHECK(prob(log_marginal_competitor(model::IidUniform{}, table)) == doctest::Approx(0.125));
  CHECK(prob(log_marginal_competitor(model::IidDirichlet{}, table)) == doctest::Approx(2.0 / 24));
  CHECK(prob(log_marginal_competitor(model::FullMarkov{}, table)) == doctest::Approx(1.0 / 6));
  CHECK(prob(log_marginal_competitor(model::IidDirichlet{{2.0, 0.5}}, table)) ==
        doctest::Approx(std::tgamma(2.5) / std::tgamma(5.5) * std::tgamma(4.0) / std::tgamma(2.0) *
                        std::tgamma(1.5) / std::tgamma(0.5)));
  CHECK_THROWS_AS(log_marginal_competitor(model::IidDirichlet{{1.0}}, table), InputError);
}

TEST_CASE("count tables") {
  const CountTable t({"a", "b"}, {1, 1, 0, 0});
  CHECK(*t.start() == 0);
  CHECK(*t.end() == 1);
  CHECK(t.symbol_frequencies() == std::vector<std::uint64_t>{2, 1});
  CHECK_THROWS_AS(CountTable({"a", "b"}, {1, 1, 0, 0}, 1), InputError);
  CHECK_THROWS_AS(CountTable({"a", "b"}, {0, 3, 0, 0}), InputError);
  CHECK_THROWS_AS(CountTable({"a", "b"}, {0, 1, 1}), InputError);
  const CountTable closed({"a", "b"}, {0, 1, 1, 0});
  CHECK_FALSE(closed.endpoints_known());
  CHECK_THROWS_AS(log_marginal(model::Reversible{}, closed), InputError);
  const CountTable pinned({"a", "b"}, {0, 1, 1, 0}, 1);
  CHECK(*pinned.end() == 1);
  CHECK(prob(log_marginal(model::Reversible{}, pinned)) > 0.0);
}

TEST_CASE("reversibility diagnostics") {
  const CountTable table = rmc::test::hla_table();
  const DiagnosticsReport d = reversibility_diagnostics(table);
  std::vector<std::string> ratios;
  for (const auto& p : d.pairs) ratios.push_back(p.ratio.text());
  CHECK(ratios == std::vector<std::string>{"160/213", "261/251", "108/66", "161/224", "249/239", "201/254"});
  CHECK(d.pairs[0].difference == 160 - 213);
  CHECK(d.pairs[2].ratio.same_value({18, 11}));
  double total = 0.0;
  for (double nu : d.stationary) total += nu;
  CHECK(total == doctest::Approx(1.0));

  const CountTable sym({"x", "y", "z"}, {4, 3, 2, 3, 1, 5, 2, 5, 0}, 0, 0);
  for (const auto& p : reversibility_diagnostics(sym).pairs) {
    CHECK(p.ratio.same_value({1, 1}));
    CHECK(p.difference == 0);
  }
  const CountTable zero({"x", "y"}, {0, 1, 0, 0});
  CHECK_FALSE(reversibility_diagnostics(zero).pairs[0].ratio.defined());
}

TEST_CASE("detailed balance of expected counts of a reversible chain") {
  // Edge weights w on K3 with loops; N_vw = 1000 * 2 w_vw (w_vv for loops),
  // the expected bigram counts under the stationary chain, times a constant.
  const std::vector<std::uint64_t> n{2000, 3000, 1000, 3000, 4000, 5000, 1000, 5000, 6000};
  const CountTable table({"p", "q", "r"}, n, 0, 0);
  for (const auto& p : reversibility_diagnostics(table).pairs)
    CHECK(p.flow_forward == doctest::Approx(p.flow_backward).epsilon(1e-14));
}

TEST_CASE("Bayes test report keys") {
  const CountTable table = rmc::test::hla_table();
  const BayesTestReport r = bayes_test({model::IidUniform{}, model::IidDirichlet{}, model::Reversible{},
                                        model::FullMarkov{}}, table);
  std::vector<std::string> keys;
  for (const auto& [k, v] : r.entries) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"logml.iid-uniform", "logml.iid", "logml.rev", "logml.markov",
                                         "bf.iid-uniform_vs_iid", "bf.iid-uniform_vs_rev",
                                         "bf.iid-uniform_vs_markov", "bf.iid_vs_rev", "bf.iid_vs_markov",
                                         "bf.rev_vs_markov", "diag.ratio.ac", "diag.ratio.ag", "diag.ratio.at",
                                         "diag.ratio.cg", "diag.ratio.ct", "diag.ratio.gt"});
  CHECK(parse_model("markov").index() == 3);
  CHECK_THROWS_AS(parse_model("hmm"), InputError);
}

}  // TEST_SUITE
