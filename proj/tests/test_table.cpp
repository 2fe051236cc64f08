#include "oracles.hpp"

#include <conjecturer/figure1.hpp>
#include <conjecturer/table.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace conjecturer;

namespace {

std::string read_file(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}

TEST(Table, Figure1MatchesGoldenCsv)
{
    auto t = build_graph_table(figure1_graphs());
    EXPECT_EQ(to_csv(t), read_file(CONJECTURER_TEST_DATA "/figure1.csv"));
    EXPECT_EQ(t.row_count(), 9u);
    EXPECT_EQ(t.value(7, "n_minus_minimum_degree"), Rational(5));
    EXPECT_TRUE(t.flag(5, "regular"));
}

TEST(Table, CsvRoundTrip)
{
    auto t = build_graph_table(figure1_graphs());
    std::istringstream in(to_csv(t));
    auto loaded = read_csv(in);
    EXPECT_EQ(loaded, t);
    EXPECT_EQ(loaded.domain(), Domain::graph);

    auto ints = build_integer_table(1, 60);
    std::istringstream in2(to_csv(ints));
    auto loaded_ints = read_csv(in2);
    EXPECT_EQ(loaded_ints, ints);
    EXPECT_EQ(loaded_ints.domain(), Domain::integer);
    EXPECT_EQ(loaded_ints.value(11, "sod_over_divisors"), Rational(1, 2)); // 12: sod 3, six divisors
}

TEST(Table, RandomRationalCsvRoundTripProperty)
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::int64_t> num(-500, 500), den(1, 12);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<TableRow> rows;
        for (int r = 0; r < 8; ++r)
            rows.push_back({"obj" + std::to_string(r), {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))},
                {coin(rng)}});
        KnowledgeTable t(Domain::graph, {"x", "y"}, {"p"}, rows);
        std::istringstream in(to_csv(t));
        EXPECT_EQ(read_csv(in), t);
    }
}

TEST(Table, CsvErrorsCarryLineNumbers)
{
    std::istringstream bad_cells("name,n\nG_1,3\nG_2\n");
    try {
        read_csv(bad_cells);
        FAIL();
    }
    catch (const ParseError & e) {
        EXPECT_EQ(e.line(), 3);
    }
    std::istringstream bad_value("name,n\nG_1,three\n");
    EXPECT_THROW(read_csv(bad_value), ParseError);
    std::istringstream duplicate("name,n\nG_1,3\nG_1,4\n");
    EXPECT_THROW(read_csv(duplicate), ParseError);
    std::istringstream empty("");
    EXPECT_THROW(read_csv(empty), ParseError);
    EXPECT_THROW(load_table(""), std::invalid_argument);
}

TEST(Table, BuildErrors)
{
    EXPECT_THROW(build_graph_table({}), std::invalid_argument);
    auto g = figure1_graphs();
    g.push_back(g.front());
    EXPECT_THROW(build_graph_table(g), std::invalid_argument);
    Graph big("big", 30, {});
    try {
        build_graph_table({big});
        FAIL();
    }
    catch (const std::invalid_argument & e) {
        EXPECT_NE(std::string(e.what()).find("big"), std::string::npos);
    }
}

TEST(Table, AppendReturnsNewTable)
{
    auto t = build_graph_table(figure1_graphs());
    Graph c5("C5", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    auto t2 = append_object(t, c5);
    EXPECT_EQ(t.row_count(), 9u);
    ASSERT_EQ(t2.row_count(), 10u);
    EXPECT_EQ(t2.value(9, "independence_number"), Rational(2));
    EXPECT_EQ(t2.value(9, "matching_number"), Rational(2));
    EXPECT_FALSE(t2.flag(9, "bipartite"));
    EXPECT_THROW(append_object(t2, c5), std::invalid_argument);
    EXPECT_THROW(append_object(t, std::int64_t{5}), std::invalid_argument);

    // A loaded table with a column subset still accepts objects.
    auto narrow = t.subtable({"G_1", "G_2"});
    std::istringstream in("name,n,independence_number,bipartite\nG_1,3,2,True\n");
    auto loaded = read_csv(in);
    auto grown = append_object(loaded, c5);
    EXPECT_EQ(grown.value(1, "independence_number"), Rational(2));
    EXPECT_EQ(narrow.row_count(), 2u);
}

TEST(Table, HypothesesAndLookups)
{
    auto t = build_graph_table(figure1_graphs());
    auto h = make_hypothesis(t, {"bipartite", "connected"});
    EXPECT_EQ(h.conjuncts, (std::vector<std::string>{"connected", "bipartite"}));
    EXPECT_EQ(select_rows(t, h), (std::vector<std::size_t>{0, 2, 5, 6, 7}));
    EXPECT_THROW(make_hypothesis(t, {}), std::invalid_argument);
    EXPECT_THROW(make_hypothesis(t, {"planar"}), std::invalid_argument);
    EXPECT_THROW(t.require_numeric("girth"), std::invalid_argument);
    EXPECT_EQ(default_hypotheses(t).size(), 4u);
    EXPECT_THROW(t.subtable({"G_42"}), std::invalid_argument);

    auto ints = build_integer_table(1, 20);
    EXPECT_EQ(default_hypotheses(ints).size(), integer_boolean_columns().size());
}
