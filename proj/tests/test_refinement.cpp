#include "oracles.hpp"

#include <conjecturer/figure1.hpp>
#include <conjecturer/refinement.hpp>
#include <conjecturer/render.hpp>

#include <gtest/gtest.h>

#include <map>
#include <sstream>

using namespace conjecturer;

namespace {

oracle::EdgeList edge_list(const Graph & g)
{
    oracle::EdgeList e;
    for (auto [u, v] : g.edges())
        e.emplace_back(u, v);
    return e;
}

bool is_alpha_lower_konig(const LinearConjecture & c)
{
    return c.target == "independence_number" && c.direction == Direction::lower
        && c.hypothesis.conjuncts == std::vector<std::string>{"connected"}
        && c.rhs == AffineForm{{{"n_minus_matching_number", Rational(1)}}, Rational(0)};
}

KnowledgeTable bipartite_subtable()
{
    return build_graph_table(figure1_graphs()).subtable({"G_1", "G_3", "G_6", "G_7", "G_8"});
}

}

TEST(Enumerator, CountsMatchBruteForceClasses)
{
    auto graphs = enumerate_connected_graphs(5);
    std::map<int, std::vector<Graph>> by_order;
    for (const auto & g : graphs)
        by_order[g.order()].push_back(g);
    for (int n = 1; n <= 5; ++n) {
        auto classes = oracle::connected_classes(n);
        ASSERT_EQ(by_order[n].size(), classes.size()) << "n=" << n;
        // Every enumerated graph is connected and matches exactly one class.
        for (const auto & g : by_order[n]) {
            EXPECT_TRUE(oracle::connected(n, edge_list(g)));
            int matches = 0;
            for (const auto & c : classes)
                matches += oracle::isomorphic(n, edge_list(g), c);
            EXPECT_EQ(matches, 1);
        }
    }
    EXPECT_EQ(by_order[1].size() + by_order[2].size() + by_order[3].size() + by_order[4].size(), 10u);
}

TEST(Enumerator, SixVerticesAndOrdering)
{
    auto graphs = enumerate_connected_graphs(6);
    ASSERT_EQ(graphs.size(), 143u);
    std::size_t six = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        six += graphs[i].order() == 6;
        if (i > 0) {
            auto a = std::make_pair(graphs[i - 1].order(), graphs[i - 1].size());
            auto b = std::make_pair(graphs[i].order(), graphs[i].size());
            EXPECT_LE(a, b);
        }
    }
    EXPECT_EQ(six, 112u);
    EXPECT_EQ(graphs.front().id(), "conn1_1");
    EXPECT_EQ(enumerate_connected_graphs(3).size(), 4u);
    EXPECT_THROW(enumerate_connected_graphs(0), std::invalid_argument);
    try {
        enumerate_connected_graphs(7);
        FAIL();
    }
    catch (const std::invalid_argument & e) {
        EXPECT_NE(std::string(e.what()).find("graph6"), std::string::npos);
    }
}

TEST(Enumerator, RegularAndBipartiteTheoremsHold)
{
    for (const auto & g : enumerate_connected_graphs(6)) {
        int n = g.order();
        auto e = edge_list(g);
        int alpha = oracle::max_independent_set(n, e), mu = oracle::max_matching(e);
        auto d = oracle::degrees(n, e);
        bool regular = std::all_of(d.begin(), d.end(), [&](int x) { return x == d[0]; });
        if (regular && n > 1)
            EXPECT_LE(alpha, mu) << g.id();
        if (oracle::bipartite(n, e))
            EXPECT_EQ(alpha, n - mu) << g.id();
    }
}

TEST(Graph6Ingestion, ReadsFileWithHeader)
{
    auto graphs = ingest_graph6(CONJECTURER_TEST_DATA "/small.g6");
    ASSERT_EQ(graphs.size(), 4u);
    EXPECT_EQ(graphs[0].id(), "g6:1");
    auto [n, edges] = oracle::decode_graph6("D?{");
    EXPECT_EQ(graphs[0].order(), n);
    EXPECT_TRUE(oracle::isomorphic(n, edge_list(graphs[0]), edges));
    EXPECT_EQ(graphs[3].size(), 6u); // K4
}

TEST(Graph6Ingestion, EmptyAndMalformed)
{
    std::istringstream empty("");
    EXPECT_TRUE(read_graph6(empty).empty());
    std::istringstream bad(">>graph6<<Bw\n\nC!\n");
    try {
        read_graph6(bad);
        FAIL();
    }
    catch (const ParseError & e) {
        EXPECT_EQ(e.line(), 3);
    }
    EXPECT_THROW(ingest_graph6("/nonexistent/file.g6"), std::runtime_error);
}

TEST(Counterexample, TriangleRefutesKonigWithoutBipartite)
{
    auto t = bipartite_subtable();
    RunOptions o;
    o.targets = {"independence_number"};
    o.upper = false;
    auto run = write_on_the_wall(t, o);
    auto it = std::find_if(run.conjectures.begin(), run.conjectures.end(), is_alpha_lower_konig);
    ASSERT_NE(it, run.conjectures.end());

    auto report = find_smallest_counterexample(*it, enumerate_connected_graphs(6));
    ASSERT_TRUE(report);
    const auto & g = std::get<Graph>(report->witness);
    EXPECT_EQ(g.order(), 3);
    EXPECT_EQ(g.size(), 3u);
    EXPECT_EQ(report->lhs, Rational(1));
    EXPECT_EQ(report->rhs, Rational(2));
}

TEST(Counterexample, SmallestByOrder)
{
    // Holds through order 3; the star on four vertices breaks it.
    auto c = bind_pattern(build_graph_table(figure1_graphs()),
        parse_conjecture_form("If G is connected, then independence_number(G) <= 1/2 n(G) + 1/2"));
    auto graphs = enumerate_connected_graphs(6);
    auto report = find_smallest_counterexample(c, graphs);
    ASSERT_TRUE(report);
    for (const auto & g : graphs) {
        if (g.order() >= report->order)
            break;
        EXPECT_FALSE(check_object(c, g).violates) << g.id();
    }
    EXPECT_EQ(report->order, 4);
}

TEST(RedBurton, AppendingWitnessRetiresConjecture)
{
    auto t = bipartite_subtable();
    RunOptions o;
    o.targets = {"independence_number"};
    o.upper = false;
    auto run = write_on_the_wall(t, o);
    auto c = *std::find_if(run.conjectures.begin(), run.conjectures.end(), is_alpha_lower_konig);

    auto outcome = red_burton(t, c, enumerate_connected_graphs(6));
    ASSERT_TRUE(outcome.report);
    EXPECT_EQ(outcome.report->witness_id, "ce-1");
    ASSERT_EQ(outcome.table.row_count(), 6u);
    EXPECT_EQ(outcome.table.rows().back().id, "ce-1");
    EXPECT_FALSE(violations(outcome.table, c).empty());

    auto rerun = write_on_the_wall(outcome.table, o);
    EXPECT_TRUE(std::none_of(rerun.conjectures.begin(), rerun.conjectures.end(), is_alpha_lower_konig));
    for (const auto & next : rerun.conjectures)
        EXPECT_TRUE(violations(outcome.table, next).empty());
}

TEST(RedBurton, SkipsExistingIdsAndReportsNothingForTruths)
{
    auto t = build_graph_table(figure1_graphs());
    auto truth = bind_pattern(
        t, parse_conjecture_form("If G is connected, then independence_number(G) <= n_minus_matching_number(G)"));
    auto outcome = red_burton(t, truth, enumerate_connected_graphs(6));
    EXPECT_FALSE(outcome.report);
    EXPECT_EQ(outcome.table, t);

    // A candidate that carries an existing id is not considered.
    auto c = bind_pattern(t, parse_conjecture_form("If G is connected, then independence_number(G) <= 1"));
    std::vector<Graph> candidates{Graph("G_1", 3, {{0, 1}, {1, 2}}), Graph("fresh", 3, {{0, 1}, {1, 2}})};
    auto skipped = red_burton(t, c, candidates);
    ASSERT_TRUE(skipped.report);
    EXPECT_EQ(skipped.report->witness_id, "ce-1");
    EXPECT_EQ(skipped.table.row_count(), 10u);
}

TEST(RedBurton, IntegerWitnessKeepsValue)
{
    auto t = build_integer_table(1, 20);
    auto c = bind_pattern(t, parse_conjecture_form("If n is prime, then sum_of_digits(n) <= 7"));
    std::vector<std::int64_t> candidates;
    for (std::int64_t v = 1; v <= 100; ++v)
        candidates.push_back(v);
    auto outcome = red_burton(t, c, candidates);
    ASSERT_TRUE(outcome.report);
    EXPECT_EQ(outcome.report->witness_id, "29");
    EXPECT_EQ(outcome.table.rows().back().id, "29");
}

TEST(Counterexample, RegularBoundFailsOnlyOnTheSingleVertex)
{
    auto t = build_graph_table(figure1_graphs());
    auto c = bind_pattern(t, parse_conjecture_form("If G is connected and regular, then independence_number(G) <= matching_number(G)"));
    auto graphs = enumerate_connected_graphs(6);
    auto report = find_smallest_counterexample(c, graphs);
    ASSERT_TRUE(report);
    EXPECT_EQ(report->order, 1);
    std::vector<Graph> with_edges;
    for (const auto & g : graphs)
        if (g.order() > 1)
            with_edges.push_back(g);
    EXPECT_FALSE(find_smallest_counterexample(c, with_edges));
    EXPECT_FALSE(find_smallest_counterexample(c, std::vector<Graph>{}));

    auto small = enumerate_connected_graphs(3);
    auto konig = bind_pattern(t, parse_conjecture_form("If G is connected, then independence_number(G) >= n_minus_matching_number(G)"));
    auto witness = find_smallest_counterexample(konig, small);
    ASSERT_TRUE(witness);
    EXPECT_EQ(std::get<Graph>(witness->witness).size(), 3u);
}

TEST(Counterexample, FewestEdgesWithinOrder)
{
    auto t = build_graph_table(figure1_graphs());
    auto c = bind_pattern(t, parse_conjecture_form("If G is connected, then matching_number(G) >= 1/2 n(G)"));
    // Past the single vertex, the path and the triangle both fail; the path wins.
    std::vector<Graph> graphs;
    for (const auto & g : enumerate_connected_graphs(6))
        if (g.order() > 1)
            graphs.push_back(g);
    auto report = find_smallest_counterexample(c, graphs);
    ASSERT_TRUE(report);
    const auto & w = std::get<Graph>(report->witness);
    for (const auto & g : graphs)
        if (g.order() == w.order() && check_object(c, g).violates)
            EXPECT_GE(g.size(), w.size()) << g.id();
    EXPECT_EQ(w.order(), 3);
    EXPECT_EQ(w.size(), 2u);
}

TEST(Enumerator, Reproducible)
{
    auto a = enumerate_connected_graphs(5), b = enumerate_connected_graphs(5);
    EXPECT_EQ(a, b);
}
