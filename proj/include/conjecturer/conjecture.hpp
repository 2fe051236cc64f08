#pragma once

#include <conjecturer/fit.hpp>
#include <conjecturer/rational.hpp>
#include <conjecturer/table.hpp>

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace conjecturer {

/// Raised when an engine guarantee fails (e.g. an emitted conjecture does
/// not hold on its own table). Always a bug, never a user error.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct AffineTerm {
    std::string invariant;
    Rational coefficient;

    friend bool operator==(const AffineTerm &, const AffineTerm &) = default;
};

/// sum(coefficient * invariant) + intercept.
struct AffineForm {
    std::vector<AffineTerm> terms;
    Rational intercept;

    friend bool operator==(const AffineForm &, const AffineForm &) = default;
};

struct LinearConjecture {
    Hypothesis hypothesis;
    std::string target;
    Direction direction = Direction::upper;
    AffineForm rhs;
    std::size_t touch = 0;
    std::vector<std::string> sharp_set; // object ids, table order

    friend bool operator==(const LinearConjecture &, const LinearConjecture &) = default;
};

struct EqualityConjecture {
    Hypothesis hypothesis;
    std::string target;
    AffineForm rhs;

    friend bool operator==(const EqualityConjecture &, const EqualityConjecture &) = default;
};

/// Form of an already-known theorem; touch and sharp set are irrelevant.
struct KnownPattern {
    Hypothesis hypothesis;
    std::string target;
    Direction direction = Direction::upper;
    AffineForm rhs;

    friend bool operator==(const KnownPattern &, const KnownPattern &) = default;
};

/// Excludes every bound on `target` in `direction` that uses `invariant`.
struct BlockedFamily {
    std::string target;
    Direction direction = Direction::upper;
    std::string invariant;

    friend bool operator==(const BlockedFamily &, const BlockedFamily &) = default;
};

struct RunOptions {
    std::vector<std::string> targets;
    std::vector<std::string> invariants; // empty: every numeric column
    std::vector<Hypothesis> hypotheses;  // empty: default_hypotheses(table)
    bool use_dalmatian = true;
    std::optional<std::size_t> limit;
    bool upper = true; // which directions to generate
    bool lower = true;
};

/// Immutable snapshot: the table a run was computed from and its results.
struct ConjectureRun {
    std::shared_ptr<const KnowledgeTable> table;
    std::vector<LinearConjecture> conjectures;
    std::vector<EqualityConjecture> equalities;
};

struct GenerationStats {
    std::size_t models_attempted = 0;
    std::size_t fits_ok = 0;
    std::size_t dropped_zero_touch = 0;
};

// Evaluation -----------------------------------------------------------------

inline Rational evaluate(const KnowledgeTable & t, std::size_t row, const AffineForm & form)
{
    Rational total = form.intercept;
    for (const auto & term : form.terms)
        total += term.coefficient * t.value(row, term.invariant);
    return total;
}

inline bool satisfies(const Rational & lhs, Direction direction, const Rational & rhs)
{
    return direction == Direction::upper ? lhs <= rhs : lhs >= rhs;
}

struct Sharpness {
    std::size_t touch = 0;
    std::vector<std::string> sharp_set;
};

/// Rows satisfying the hypothesis on which lhs == rhs exactly.
inline Sharpness touch_and_sharp(
    const KnowledgeTable & t, const Hypothesis & h, const std::string & target, const AffineForm & rhs)
{
    Sharpness s;
    auto target_column = t.require_numeric(target);
    for (auto i : select_rows(t, h))
        if (t.row(i).numeric[target_column] == evaluate(t, i, rhs))
            s.sharp_set.push_back(t.row(i).id);
    s.touch = s.sharp_set.size();
    return s;
}

inline Sharpness touch_and_sharp(const KnowledgeTable & t, const LinearConjecture & c)
{
    return touch_and_sharp(t, c.hypothesis, c.target, c.rhs);
}

/// Ids of hypothesis-satisfying rows on which the inequality fails.
inline std::vector<std::string> violations(const KnowledgeTable & t, const LinearConjecture & c)
{
    std::vector<std::string> bad;
    auto target_column = t.require_numeric(c.target);
    for (auto i : select_rows(t, c.hypothesis))
        if (! satisfies(t.row(i).numeric[target_column], c.direction, evaluate(t, i, c.rhs)))
            bad.push_back(t.row(i).id);
    return bad;
}

// Generation -----------------------------------------------------------------

namespace detail {

    inline void check_generation_inputs(const KnowledgeTable & t, const std::string & target,
        const std::vector<std::string> & invariants, const std::vector<Hypothesis> & hypotheses)
    {
        t.require_numeric(target);
        for (const auto & name : invariants)
            t.require_numeric(name);
        for (const auto & h : hypotheses) {
            if (h.conjuncts.empty())
                throw std::invalid_argument("empty hypothesis");
            for (const auto & name : h.conjuncts)
                t.require_boolean(name);
        }
    }

    inline LinearConjecture finish_conjecture(const KnowledgeTable & t, const Hypothesis & h,
        const std::string & target, Direction direction, AffineForm rhs)
    {
        LinearConjecture c{h, target, direction, std::move(rhs), 0, {}};
        auto sharp = touch_and_sharp(t, c);
        c.touch = sharp.touch;
        c.sharp_set = std::move(sharp.sharp_set);
        if (! violations(t, c).empty())
            throw InvariantViolation("generated conjecture on " + target + " fails on its own table");
        return c;
    }

    inline std::vector<LinearConjecture> make_all_linear(const KnowledgeTable & t, const std::string & target,
        const std::vector<std::string> & invariants, const std::vector<Hypothesis> & hypotheses, Direction direction,
        GenerationStats * stats)
    {
        check_generation_inputs(t, target, invariants, hypotheses);
        auto target_column = t.require_numeric(target);
        std::vector<LinearConjecture> out;
        for (const auto & invariant : invariants) {
            if (invariant == target)
                continue;
            auto column = t.require_numeric(invariant);
            for (const auto & h : hypotheses) {
                if (stats)
                    ++stats->models_attempted;
                std::vector<Point2> points;
                for (auto i : select_rows(t, h))
                    points.push_back({t.row(i).numeric[column], t.row(i).numeric[target_column]});
                auto fit = direction == Direction::upper ? fit_upper(points) : fit_lower(points);
                if (! fit.ok())
                    continue;
                if (stats)
                    ++stats->fits_ok;
                auto c = finish_conjecture(t, h, target, direction, AffineForm{{{invariant, fit.slopes[0]}}, fit.intercept});
                if (c.touch == 0) {
                    if (stats)
                        ++stats->dropped_zero_touch;
                    continue;
                }
                out.push_back(std::move(c));
            }
        }
        return out;
    }

} // namespace detail

/// One upper-bound model per (invariant != target, hypothesis), in that
/// nesting order; keeps the fits with non-zero slope and touch >= 1.
inline std::vector<LinearConjecture> make_all_upper_linear_conjectures(const KnowledgeTable & t,
    const std::string & target, const std::vector<std::string> & invariants,
    const std::vector<Hypothesis> & hypotheses, GenerationStats * stats = nullptr)
{
    return detail::make_all_linear(t, target, invariants, hypotheses, Direction::upper, stats);
}

inline std::vector<LinearConjecture> make_all_lower_linear_conjectures(const KnowledgeTable & t,
    const std::string & target, const std::vector<std::string> & invariants,
    const std::vector<Hypothesis> & hypotheses, GenerationStats * stats = nullptr)
{
    return detail::make_all_linear(t, target, invariants, hypotheses, Direction::lower, stats);
}

/// Two-invariant bounds: one model per unordered invariant pair and hypothesis.
inline std::vector<LinearConjecture> make_all_two_invariant_conjectures(const KnowledgeTable & t,
    const std::string & target, const std::vector<std::string> & invariants,
    const std::vector<Hypothesis> & hypotheses, Direction direction, GenerationStats * stats = nullptr)
{
    detail::check_generation_inputs(t, target, invariants, hypotheses);
    auto target_column = t.require_numeric(target);
    std::vector<std::string> others;
    for (const auto & name : invariants)
        if (name != target)
            others.push_back(name);

    std::vector<LinearConjecture> out;
    for (std::size_t a = 0; a < others.size(); ++a)
        for (std::size_t b = a + 1; b < others.size(); ++b) {
            auto ca = t.require_numeric(others[a]), cb = t.require_numeric(others[b]);
            for (const auto & h : hypotheses) {
                if (stats)
                    ++stats->models_attempted;
                std::vector<Point3> points;
                for (auto i : select_rows(t, h)) {
                    const auto & row = t.row(i);
                    points.push_back({row.numeric[ca], row.numeric[cb], row.numeric[target_column]});
                }
                auto fit = direction == Direction::upper ? fit_upper_2d(points) : fit_lower_2d(points);
                if (! fit.ok())
                    continue;
                if (stats)
                    ++stats->fits_ok;
                auto c = detail::finish_conjecture(t, h, target, direction,
                    AffineForm{{{others[a], fit.slopes[0]}, {others[b], fit.slopes[1]}}, fit.intercept});
                if (c.touch == 0) {
                    if (stats)
                        ++stats->dropped_zero_touch;
                    continue;
                }
                out.push_back(std::move(c));
            }
        }
    return out;
}

// Ranking and filtering ------------------------------------------------------

/// Stable sort, non-increasing touch.
inline void sort_by_touch(std::vector<LinearConjecture> & conjectures)
{
    std::stable_sort(conjectures.begin(), conjectures.end(),
        [](const LinearConjecture & a, const LinearConjecture & b) { return a.touch > b.touch; });
}

/// One pass over a touch-sorted list. The first conjecture is kept; a later
/// one is kept if its sharp set equals that of a kept conjecture, or if it is
/// sharp on some object outside the union of sharp sets kept so far (which
/// then grows). Kept items stay in input order.
inline std::vector<LinearConjecture> static_dalmatian(std::span<const LinearConjecture> conjectures)
{
    if (conjectures.empty())
        throw std::invalid_argument("static_dalmatian needs at least one conjecture");
    for (std::size_t i = 1; i < conjectures.size(); ++i)
        if (conjectures[i].touch > conjectures[i - 1].touch)
            throw std::invalid_argument("input must be sorted by touch");

    using IdSet = std::set<std::string>;
    std::vector<LinearConjecture> kept{conjectures[0]};
    std::vector<IdSet> kept_sets{IdSet(conjectures[0].sharp_set.begin(), conjectures[0].sharp_set.end())};
    IdSet covered = kept_sets[0];

    for (const auto & c : conjectures.subspan(1)) {
        IdSet sharp(c.sharp_set.begin(), c.sharp_set.end());
        if (std::find(kept_sets.begin(), kept_sets.end(), sharp) != kept_sets.end()) {
            kept.push_back(c);
            kept_sets.push_back(std::move(sharp));
        }
        else if (std::any_of(sharp.begin(), sharp.end(), [&](const std::string & id) { return ! covered.count(id); })) {
            covered.insert(sharp.begin(), sharp.end());
            kept.push_back(c);
            kept_sets.push_back(std::move(sharp));
        }
    }
    return kept;
}

/// Union of two hypotheses, in table column order.
inline Hypothesis merge_hypotheses(const KnowledgeTable & t, const Hypothesis & a, const Hypothesis & b)
{
    std::vector<std::string> names = a.conjuncts;
    names.insert(names.end(), b.conjuncts.begin(), b.conjuncts.end());
    return make_hypothesis(t, names);
}

/// Every (upper, lower) pair on the same target with an identical right-hand
/// side yields an equality under the union of their hypotheses.
inline std::vector<EqualityConjecture> detect_equalities(
    const KnowledgeTable & t, std::span<const LinearConjecture> conjectures)
{
    std::vector<EqualityConjecture> out;
    for (const auto & up : conjectures) {
        if (up.direction != Direction::upper)
            continue;
        for (const auto & low : conjectures) {
            if (low.direction != Direction::lower || low.target != up.target || low.rhs != up.rhs)
                continue;
            EqualityConjecture eq{merge_hypotheses(t, up.hypothesis, low.hypothesis), up.target, up.rhs};
            if (std::find(out.begin(), out.end(), eq) == out.end())
                out.push_back(std::move(eq));
        }
    }
    return out;
}

inline std::vector<EqualityConjecture> detect_equalities(const ConjectureRun & run)
{
    return detect_equalities(*run.table, run.conjectures);
}

namespace detail {
    inline bool is_subset(const Hypothesis & small, const Hypothesis & big)
    {
        return std::all_of(small.conjuncts.begin(), small.conjuncts.end(), [&](const std::string & name) {
            return std::find(big.conjuncts.begin(), big.conjuncts.end(), name) != big.conjuncts.end();
        });
    }

    inline ConjectureRun with_conjectures(const ConjectureRun & run, std::vector<LinearConjecture> conjectures)
    {
        ConjectureRun out{run.table, std::move(conjectures), {}};
        out.equalities = detect_equalities(out);
        return out;
    }
} // namespace detail

/// Drops conjectures already implied by a known theorem: same target,
/// direction and right-hand side, under a hypothesis at least as strong.
inline ConjectureRun filter_known(const ConjectureRun & run, std::span<const KnownPattern> known)
{
    std::vector<LinearConjecture> kept;
    for (const auto & c : run.conjectures) {
        bool covered = std::any_of(known.begin(), known.end(), [&](const KnownPattern & k) {
            return k.target == c.target && k.direction == c.direction && k.rhs == c.rhs
                && detail::is_subset(k.hypothesis, c.hypothesis);
        });
        if (! covered)
            kept.push_back(c);
    }
    return detail::with_conjectures(run, std::move(kept));
}

inline ConjectureRun filter_blocked_families(const ConjectureRun & run, std::span<const BlockedFamily> blocklist)
{
    std::vector<LinearConjecture> kept;
    for (const auto & c : run.conjectures) {
        bool blocked = std::any_of(blocklist.begin(), blocklist.end(), [&](const BlockedFamily & f) {
            return f.target == c.target && f.direction == c.direction
                && std::any_of(c.rhs.terms.begin(), c.rhs.terms.end(),
                    [&](const AffineTerm & term) { return term.invariant == f.invariant; });
        });
        if (! blocked)
            kept.push_back(c);
    }
    return detail::with_conjectures(run, std::move(kept));
}

/// Full pipeline: for each target, upper and lower bounds over every
/// (invariant, hypothesis) model, each list touch-sorted and optionally
/// Dalmatian-filtered, then concatenated and stably re-sorted by touch.
inline ConjectureRun write_on_the_wall(std::shared_ptr<const KnowledgeTable> table, const RunOptions & options)
{
    const auto & t = *table;
    if (options.targets.empty())
        throw std::invalid_argument("at least one target is required");
    if (! options.upper && ! options.lower)
        throw std::invalid_argument("no bound direction selected");
    for (const auto & target : options.targets)
        t.require_numeric(target);
    if (options.limit && *options.limit == 0)
        throw std::invalid_argument("limit must be at least 1");
    auto invariants = options.invariants.empty() ? t.numeric_columns() : options.invariants;
    auto hypotheses = options.hypotheses.empty() ? default_hypotheses(t) : options.hypotheses;

    std::vector<LinearConjecture> all;
    for (const auto & target : options.targets) {
        std::vector<LinearConjecture> upper, lower;
        if (options.upper)
            upper = make_all_upper_linear_conjectures(t, target, invariants, hypotheses);
        if (options.lower)
            lower = make_all_lower_linear_conjectures(t, target, invariants, hypotheses);
        sort_by_touch(upper);
        sort_by_touch(lower);
        if (options.use_dalmatian) {
            if (! upper.empty())
                upper = static_dalmatian(upper);
            if (! lower.empty())
                lower = static_dalmatian(lower);
        }
        all.insert(all.end(), upper.begin(), upper.end());
        all.insert(all.end(), lower.begin(), lower.end());
    }
    sort_by_touch(all);
    if (options.limit && all.size() > *options.limit)
        all.resize(*options.limit);

    ConjectureRun run{std::move(table), std::move(all), {}};
    run.equalities = detect_equalities(run);
    return run;
}

inline ConjectureRun write_on_the_wall(const KnowledgeTable & table, const RunOptions & options)
{
    return write_on_the_wall(std::make_shared<const KnowledgeTable>(table), options);
}

/// Theorems that ship as optional seeds for the known-pattern store.
inline std::vector<KnownPattern> seed_known_patterns()
{
    return {
        // Konig: independence number is n minus matching number on bipartite graphs.
        KnownPattern{{{"bipartite"}}, "independence_number", Direction::lower,
            AffineForm{{{"n_minus_matching_number", Rational(1)}}, Rational(0)}},
        // Regular graphs with at least one edge have independence number at most matching number.
        KnownPattern{{{"connected", "regular"}}, "matching_number", Direction::lower,
            AffineForm{{{"independence_number", Rational(1)}}, Rational(0)}},
    };
}

} // namespace conjecturer
