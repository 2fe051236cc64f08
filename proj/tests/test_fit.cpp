#include "oracles.hpp"

#include <conjecturer/fit.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace conjecturer;

namespace {

Rational random_rational(std::mt19937 & rng)
{
    std::uniform_int_distribution<std::int64_t> num(-20, 20), den(1, 5);
    return Rational(num(rng), den(rng));
}

bool has_solution(const FitResult & r) { return r.ok() || (r.status == FitStatus::degenerate_zero_slope && ! r.slopes.empty()); }

Rational slack_sum(const std::vector<Point2> & pts, const FitResult & r)
{
    Rational total;
    for (const auto & p : pts)
        total += r.slopes[0] * p.x + r.intercept - p.y;
    return total;
}

}

TEST(Fit, RandomLinesMatchPairwiseBruteForce)
{
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> size(2, 10);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Point2> pts;
        std::vector<std::pair<Rational, Rational>> raw;
        int n = size(rng);
        for (int i = 0; i < n; ++i) {
            // Small x pool so repeated abscissae show up.
            Rational x = trial % 3 == 0 ? Rational(std::uniform_int_distribution<std::int64_t>(0, 3)(rng)) : random_rational(rng);
            Rational y = random_rational(rng);
            pts.push_back({x, y});
            raw.emplace_back(x, y);
        }
        for (bool upper : {true, false}) {
            auto fit = upper ? fit_upper(pts) : fit_lower(pts);
            auto expected = oracle::best_pair_line(raw, upper);
            ASSERT_EQ(has_solution(fit), expected.has_value()) << "trial " << trial;
            if (! expected)
                continue;
            EXPECT_EQ(fit.objective, expected->objective) << "trial " << trial;
            EXPECT_EQ(slack_sum(pts, fit), fit.objective);
            std::size_t tight = 0;
            for (const auto & p : pts) {
                Rational h = fit.slopes[0] * p.x + fit.intercept;
                EXPECT_TRUE(upper ? h >= p.y : h <= p.y);
                tight += h == p.y;
            }
            EXPECT_EQ(tight, fit.tight);
            EXPECT_GE(fit.tight, 2u);
        }
    }
}

TEST(Fit, RandomPlanesMatchTripleBruteForce)
{
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> size(3, 10);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Point3> pts;
        std::vector<std::array<Rational, 3>> raw;
        int n = size(rng);
        for (int i = 0; i < n; ++i) {
            Rational a = random_rational(rng), b = random_rational(rng), y = random_rational(rng);
            if (trial % 4 == 0)
                b = a * Rational(2); // collinear projections
            pts.push_back({a, b, y});
            raw.push_back({a, b, y});
        }
        for (bool upper : {true, false}) {
            auto fit = upper ? fit_upper_2d(pts) : fit_lower_2d(pts);
            auto expected = oracle::best_triple_plane(raw, upper);
            ASSERT_EQ(has_solution(fit), expected.has_value()) << "trial " << trial;
            if (! expected)
                continue;
            EXPECT_EQ(fit.objective, expected->objective) << "trial " << trial;
            for (const auto & p : pts) {
                Rational h = fit.slopes[0] * p.x1 + fit.slopes[1] * p.x2 + fit.intercept;
                EXPECT_TRUE(upper ? h >= p.y : h <= p.y);
            }
            EXPECT_GE(fit.tight, 3u);
        }
    }
}

TEST(Fit, StatusCases)
{
    EXPECT_EQ(fit_upper(std::vector<Point2>{}).status, FitStatus::too_few_rows);
    EXPECT_EQ(fit_upper(std::vector<Point2>{{Rational(1), Rational(2)}}).status, FitStatus::too_few_rows);
    std::vector<Point2> same_x{{Rational(1), Rational(2)}, {Rational(1), Rational(5)}};
    EXPECT_EQ(fit_lower(same_x).status, FitStatus::degenerate_zero_slope);
    std::vector<Point2> flat{{Rational(1), Rational(2)}, {Rational(3), Rational(2)}, {Rational(4), Rational(2)}};
    auto f = fit_upper(flat);
    EXPECT_EQ(f.status, FitStatus::degenerate_zero_slope);
    EXPECT_EQ(to_string(f.status), "degenerate_zero_slope");
    EXPECT_EQ(fit_upper_2d(std::vector<Point3>{{Rational(0), Rational(0), Rational(0)}}).status, FitStatus::too_few_rows);
}

TEST(Fit, ExactFractions)
{
    // y = n/2 + 1 hugs (2,2) and (4,3) from above.
    std::vector<Point2> pts{{Rational(2), Rational(2)}, {Rational(4), Rational(3)}, {Rational(6), Rational(3)},
        {Rational(3), Rational(2)}};
    auto f = fit_upper(pts);
    ASSERT_TRUE(f.ok());
    EXPECT_EQ(f.slopes[0], Rational(1, 2));
    EXPECT_EQ(f.intercept, Rational(1));
    EXPECT_EQ(f.tight, 2u);
}

TEST(Fit, ScalingXScalesSlopeAndKeepsObjective)
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point2> pts, scaled;
        for (int i = 0; i < 6; ++i) {
            Rational x = random_rational(rng), y = random_rational(rng);
            pts.push_back({x, y});
            scaled.push_back({x * Rational(3), y});
        }
        auto a = fit_upper(pts), b = fit_upper(scaled);
        ASSERT_EQ(has_solution(a), has_solution(b));
        if (! has_solution(a))
            continue;
        EXPECT_EQ(a.objective, b.objective);
        EXPECT_EQ(a.slopes[0], b.slopes[0] * Rational(3));
        EXPECT_EQ(a.intercept, b.intercept);
    }
}

TEST(Fit, NineGraphColumns)
{
    // (n, alpha) over all nine rows, then (mu, alpha) over the regular ones.
    const std::vector<int> n{3, 3, 4, 4, 4, 8, 4, 6, 6}, mu{1, 1, 2, 2, 2, 4, 1, 2, 3}, alpha{2, 1, 2, 2, 1, 4, 3, 4, 2},
                           n_mu{2, 2, 2, 2, 2, 4, 3, 4, 3};
    std::vector<Point2> all, regular, n_minus_mu, bipartite;
    for (int i = 0; i < 9; ++i) {
        all.push_back({Rational(n[i]), Rational(alpha[i])});
        n_minus_mu.push_back({Rational(n_mu[i]), Rational(alpha[i])});
    }
    for (int i : {1, 2, 4, 5})
        regular.push_back({Rational(mu[i]), Rational(alpha[i])});
    for (int i : {0, 2, 5, 6, 7})
        bipartite.push_back({Rational(n_mu[i]), Rational(alpha[i])});

    auto a = fit_upper(all);
    EXPECT_EQ(a.slopes[0], Rational(1, 2));
    EXPECT_EQ(a.intercept, Rational(1));
    auto b = fit_upper(regular);
    EXPECT_EQ(b.slopes[0], Rational(1));
    EXPECT_EQ(b.intercept, Rational(0));
    auto c = fit_lower(bipartite);
    EXPECT_EQ(c.slopes[0], Rational(1));
    EXPECT_EQ(c.intercept, Rational(0));
    auto d = fit_lower(n_minus_mu);
    EXPECT_EQ(d.slopes[0], Rational(1));
    EXPECT_EQ(d.intercept, Rational(-1));
}

TEST(Fit, SmallExactCases)
{
    auto line = fit_upper(std::vector<Point2>{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}});
    EXPECT_TRUE(line.ok());
    EXPECT_EQ(line.slopes[0], Rational(1));
    EXPECT_EQ(line.objective, Rational(0));
    auto low = fit_lower(std::vector<Point2>{{Rational(0), Rational(0)}, {Rational(2), Rational(2)}});
    EXPECT_EQ(low.slopes[0], Rational(1));
    EXPECT_EQ(low.intercept, Rational(0));

    auto plane = fit_upper_2d(std::vector<Point3>{
        {Rational(1), Rational(0), Rational(1)}, {Rational(0), Rational(1), Rational(1)}, {Rational(0), Rational(0), Rational(0)}});
    ASSERT_TRUE(plane.ok());
    EXPECT_EQ(plane.slopes, (std::vector<Rational>{Rational(1), Rational(1)}));
    EXPECT_EQ(plane.intercept, Rational(0));

    std::vector<Point3> exact;
    std::mt19937 rng(11);
    for (int i = 0; i < 8; ++i) {
        Rational x1 = random_rational(rng), x2 = random_rational(rng);
        exact.push_back({x1, x2, x1 + Rational(2) * x2});
    }
    auto interp = fit_lower_2d(exact);
    ASSERT_TRUE(interp.ok());
    EXPECT_EQ(interp.slopes, (std::vector<Rational>{Rational(1), Rational(2)}));
    EXPECT_EQ(interp.intercept, Rational(0));
    EXPECT_EQ(interp.objective, Rational(0));

    std::vector<Point3> collinear{{Rational(0), Rational(0), Rational(1)}, {Rational(1), Rational(1), Rational(2)},
        {Rational(2), Rational(2), Rational(0)}};
    EXPECT_EQ(fit_upper_2d(collinear).status, FitStatus::degenerate_zero_slope);
}

TEST(Fit, TwentyPointsUnderAPlane)
{
    std::mt19937 rng(8);
    std::vector<Point3> pts;
    std::vector<std::array<Rational, 3>> raw;
    std::uniform_int_distribution<std::int64_t> drop(0, 6);
    for (int i = 0; i < 20; ++i) {
        Rational x1 = random_rational(rng), x2 = random_rational(rng);
        Rational y = x1 + x2 - Rational(drop(rng), 2);
        pts.push_back({x1, x2, y});
        raw.push_back({x1, x2, y});
    }
    auto fit = fit_upper_2d(pts);
    auto want = oracle::best_triple_plane(raw, true);
    ASSERT_TRUE(want);
    EXPECT_EQ(fit.objective, want->objective);
}
