#pragma once

#include <conjecturer/conjecture.hpp>
#include <conjecturer/render.hpp>
#include <conjecturer/table.hpp>

#include <string>
#include <vector>

// The published list of integer conjectures, encoded as linear conjectures
// over the integer columns, plus an evaluator over a concrete range.
namespace conjecturer {

struct PublishedConjecture {
    int number = 0;
    LinearConjecture conjecture; // touch and sharp_set unset
    std::size_t claimed_touch = 0;
};

namespace detail {
    inline PublishedConjecture published(int number, std::vector<std::string> hypothesis, std::string target,
        Direction direction, std::vector<AffineTerm> terms, Rational intercept, std::size_t claimed)
    {
        LinearConjecture c;
        c.hypothesis.conjuncts = std::move(hypothesis);
        c.target = std::move(target);
        c.direction = direction;
        c.rhs = {std::move(terms), intercept};
        return {number, std::move(c), claimed};
    }
} // namespace detail

/// No hypothesis means "every positive integer". The statement bounding n^2
/// by 121/4 sod^2 is stored as n <= 11/2 sod, which is the same for
/// positive values and keeps the form linear.
inline std::vector<PublishedConjecture> published_integer_conjectures()
{
    using detail::published;
    constexpr auto le = Direction::upper;
    constexpr auto ge = Direction::lower;
    const std::string S = "sum_of_digits", D = "num_divisors", Q = "sod_over_divisors", S2 = "sod_squared", N = "n";
    const std::string prime = "prime", even = "even", pal = "palindrome", dps = "digit_power_sum",
                      gold = "goldbach", sfib = "sod_is_fibonacci", fdsp = "factorial_digit_sum_prime",
                      sodp = "sum_of_digits_prime", harshad = "harshad", circ = "circular_prime",
                      apd = "all_prime_digits";
    auto r = [](std::int64_t p, std::int64_t q = 1) { return Rational(p, q); };

    return {
        published(1, {prime}, Q, le, {{S2, r(1, 2)}}, r(0), 25),
        published(2, {}, S, ge, {{S2, r(1, 10)}}, r(9, 10), 13),
        published(3, {}, S, le, {{N, r(1, 10)}}, r(81, 10), 10),
        published(4, {even}, S, le, {{N, r(1, 10)}}, r(36, 5), 10),
        published(5, {dps}, S, le, {{N, r(1)}}, r(0), 9),
        published(6, {pal}, N, le, {{S, r(11, 2)}}, r(0), 9),
        published(7, {gold, sfib}, Q, le, {{S2, r(1, 4)}}, r(0), 7),
        published(8, {fdsp}, S, le, {{S2, r(1, 5)}}, r(6, 5), 6),
        published(9, {sodp, harshad}, S, le, {{S2, r(1, 8)}}, r(15, 8), 6),
        published(10, {prime}, S, le, {{Q, r(1, 9)}}, r(40, 9), 6),
        published(11, {prime, sodp}, Q, ge, {{S, r(9)}}, r(-77, 2), 6),
        published(12, {prime, sfib}, Q, ge, {{S, r(13, 2)}}, r(-20), 6),
        published(13, {apd}, S, le, {{N, r(1, 10)}}, r(63, 10), 5),
        published(14, {even, apd}, S, le, {{N, r(1, 10)}}, r(9, 5), 5),
        published(15, {prime}, S, ge, {{N, r(1, 10)}}, r(9, 10), 5),
        published(16, {sfib, harshad}, S, ge, {{S2, r(1, 9)}}, r(8, 9), 5),
        published(17, {sfib, fdsp}, S, ge, {{S2, r(1, 4)}}, r(3, 4), 5),
        published(18, {prime, fdsp}, S, le, {{S2, r(1, 6)}}, r(4, 3), 4),
        published(19, {prime, fdsp}, S, le, {{Q, r(1, 3)}}, r(4, 3), 4),
        published(20, {sodp}, S, ge, {{N, r(1, 10)}}, r(0), 4),
        published(21, {fdsp}, S, ge, {{S2, r(1, 5)}}, r(4, 5), 4),
        published(22, {sodp, apd}, S, ge, {{S2, r(1, 9)}}, r(14, 9), 4),
        published(23, {sfib, circ}, S, ge, {{S2, r(1, 10)}}, r(8, 5), 4),
        published(24, {sodp, apd, sfib}, S, ge, {{S2, r(1, 7)}}, r(10, 7), 4),
        published(25, {circ}, S, ge, {{Q, r(1, 9)}}, r(16, 9), 4),
        published(26, {sfib, circ}, S, ge, {{Q, r(1, 5)}}, r(8, 5), 4),
        published(27, {prime, sodp, sfib}, Q, ge, {{S, r(4)}}, r(-15, 2), 4),
        published(28, {apd}, S, le, {{D, r(2)}}, r(6), 3),
        published(29, {fdsp}, S, le, {{D, r(-1, 6)}}, r(13, 3), 3),
        published(30, {even, sodp}, S, le, {{D, r(2)}}, r(5), 3),
        published(31, {harshad}, S, le, {{Q, r(4, 7)}}, r(36, 7), 3),
        published(32, {even, harshad}, S, le, {{Q, r(4, 5)}}, r(18, 5), 3),
        published(33, {prime, sodp, apd}, S, le, {{Q, r(1, 4)}}, r(15, 8), 3),
        published(34, {dps}, S, ge, {{D, r(2)}}, r(-2), 3),
        published(35, {even, pal}, S, ge, {{D, r(2)}}, r(-4), 3),
        published(36, {pal, sfib}, S, ge, {{D, r(3, 2)}}, r(-1), 3),
        published(37, {apd}, S, ge, {{Q, r(1, 6)}}, r(5, 3), 3),
        published(38, {prime, pal}, S, ge, {{Q, r(2, 9)}}, r(14, 9), 3),
        published(39, {sfib, fdsp}, S, ge, {{Q, r(4, 7)}}, r(6, 7), 3),
        published(40, {prime, pal, sfib}, S, ge, {{Q, r(2, 7)}}, r(10, 7), 3),
        published(41, {dps}, D, le, {{N, r(1, 2)}}, r(1), 3),
        published(42, {pal}, D, le, {{S, r(1, 2)}}, r(2), 3),
        published(43, {pal, sfib}, D, le, {{S, r(2, 3)}}, r(2, 3), 3),
        published(44, {sodp, fdsp}, D, ge, {{S, r(2)}}, r(-2), 3),
        published(45, {sodp, fdsp}, D, ge, {{S2, r(2, 5)}}, r(2, 5), 3),
        published(46, {prime}, Q, le, {{S, r(19, 2)}}, r(-17), 3),
        published(47, {apd}, Q, le, {{S, r(6)}}, r(-10), 3),
        published(48, {prime, pal}, Q, le, {{S, r(9, 2)}}, r(-7), 3),
        published(49, {prime, sfib}, Q, le, {{S, r(15, 2)}}, r(-13), 3),
        published(50, {even, sfib}, Q, le, {{S, r(7, 2)}}, r(-13, 4), 3),
    };
}

struct PublishedEvaluation {
    int number = 0;
    std::string text;
    std::size_t rows = 0; // integers meeting the hypothesis
    std::size_t touch = 0;
    std::size_t claimed_touch = 0;
    std::vector<std::string> violations;
};

inline std::vector<PublishedEvaluation> evaluate_published(const KnowledgeTable & t)
{
    std::vector<PublishedEvaluation> out;
    for (const auto & p : published_integer_conjectures()) {
        PublishedEvaluation e;
        e.number = p.number;
        e.claimed_touch = p.claimed_touch;
        const auto & c = p.conjecture;
        e.text = c.hypothesis.conjuncts.empty()
            ? "For all n, " + c.target + "(n) " + (c.direction == Direction::upper ? "<= " : ">= ")
                + render_affine(c.rhs, Domain::integer)
            : render_inequality(c.hypothesis, c.target, c.direction, c.rhs, Domain::integer);
        e.rows = select_rows(t, c.hypothesis).size();
        e.touch = touch_and_sharp(t, c).touch;
        e.violations = violations(t, c);
        out.push_back(std::move(e));
    }
    return out;
}

/// One line per statement: number, touch over the table against the
/// published floor, and the first few violating integers if any.
inline std::string format_published_report(std::span<const PublishedEvaluation> report)
{
    std::string out;
    for (const auto & e : report) {
        out += "#" + std::to_string(e.number) + " rows=" + std::to_string(e.rows) + " touch="
            + std::to_string(e.touch) + " (published >= " + std::to_string(e.claimed_touch) + ")";
        if (e.violations.empty())
            out += " holds";
        else {
            out += " violated by " + std::to_string(e.violations.size()) + ":";
            for (std::size_t i = 0; i < e.violations.size() && i < 5; ++i)
                out += " " + e.violations[i];
            if (e.violations.size() > 5)
                out += " ...";
        }
        out += " | " + e.text + "\n";
    }
    return out;
}

} // namespace conjecturer
