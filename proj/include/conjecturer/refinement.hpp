#pragma once

#include <conjecturer/conjecture.hpp>
#include <conjecturer/graph.hpp>
#include <conjecturer/integers.hpp>
#include <conjecturer/table.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace conjecturer {

inline constexpr int max_enumerated_order = 6;

namespace detail {
    inline bool mask_connected(int n, std::uint32_t mask, const std::vector<Edge> & pairs)
    {
        std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (mask & (1u << k)) {
                adj[pairs[k].first] |= 1u << pairs[k].second;
                adj[pairs[k].second] |= 1u << pairs[k].first;
            }
        std::uint32_t seen = 1, frontier = 1;
        while (frontier) {
            std::uint32_t next = 0;
            for (std::uint32_t f = frontier; f; f &= f - 1)
                next |= adj[std::countr_zero(f)];
            frontier = next & ~seen;
            seen |= next;
        }
        return seen == (n == 32 ? ~0u : (1u << n) - 1);
    }
} // namespace detail

/// All connected graphs on 1..max_n vertices up to isomorphism, ordered by
/// vertex count, then edge count, then canonical code. The canonical code of
/// a graph is the smallest upper-triangle edge mask over all relabellings.
inline std::vector<Graph> enumerate_connected_graphs(int max_n)
{
    if (max_n < 1)
        throw std::invalid_argument("max_n must be at least 1");
    if (max_n > max_enumerated_order)
        throw std::invalid_argument("the built-in enumerator stops at " + std::to_string(max_enumerated_order)
            + " vertices; ingest a graph6 atlas for larger orders");

    std::vector<Graph> out;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<Edge> pairs;
        std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
        for (int v = 1; v < n; ++v)
            for (int u = 0; u < v; ++u) {
                index[u][v] = index[v][u] = static_cast<int>(pairs.size());
                pairs.emplace_back(u, v);
            }

        // For every relabelling, where each edge slot is sent.
        std::vector<std::vector<int>> images;
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<int> image;
            for (auto [u, v] : pairs)
                image.push_back(index[perm[u]][perm[v]]);
            images.push_back(std::move(image));
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::vector<std::uint32_t> canonical;
        const std::uint32_t limit = 1u << pairs.size();
        for (std::uint32_t mask = 0; mask < limit; ++mask) {
            if (! detail::mask_connected(n, mask, pairs))
                continue;
            bool smallest = true;
            for (const auto & image : images) {
                std::uint32_t relabelled = 0;
                for (std::size_t k = 0; k < pairs.size(); ++k)
                    if (mask & (1u << k))
                        relabelled |= 1u << image[k];
                if (relabelled < mask) {
                    smallest = false;
                    break;
                }
            }
            if (smallest)
                canonical.push_back(mask);
        }
        std::stable_sort(canonical.begin(), canonical.end(),
            [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });

        for (std::size_t i = 0; i < canonical.size(); ++i) {
            std::vector<Edge> edges;
            for (std::size_t k = 0; k < pairs.size(); ++k)
                if (canonical[i] & (1u << k))
                    edges.push_back(pairs[k]);
            out.emplace_back("conn" + std::to_string(n) + "_" + std::to_string(i + 1), n, std::move(edges));
        }
    }
    return out;
}

/// Decodes graph6 lines in file order; blank lines and a ">>graph6<<"
/// header are skipped. Ids are "g6:<line number>".
inline std::vector<Graph> read_graph6(std::istream & in)
{
    std::vector<Graph> out;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::string_view view(line);
        if (view.starts_with(">>graph6<<"))
            view.remove_prefix(10);
        while (! view.empty() && (view.back() == '\r' || view.back() == ' '))
            view.remove_suffix(1);
        if (view.empty())
            continue;
        try {
            out.push_back(decode_graph6(view, "g6:" + std::to_string(line_number)));
        }
        catch (const std::exception & e) {
            throw ParseError(line_number, e.what());
        }
    }
    return out;
}

inline std::vector<Graph> ingest_graph6(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("cannot read " + path.string());
    return read_graph6(in);
}

struct CounterexampleReport {
    LinearConjecture conjecture;
    std::string witness_id;
    SourceObject witness;
    std::int64_t order = 0; // vertex count, or the integer itself
    Rational lhs, rhs;
};

struct ObjectValues {
    std::map<std::string, Rational> values;
    std::map<std::string, bool> flags;
};

inline ObjectValues object_values(const SourceObject & obj)
{
    if (auto g = std::get_if<Graph>(&obj)) {
        auto iv = compute_invariant_vector(*g);
        return {std::move(iv.values), std::move(iv.flags)};
    }
    auto row = integer_row(compute_integer_record(std::get<std::int64_t>(obj)));
    ObjectValues out;
    for (std::size_t c = 0; c < row.numeric.size(); ++c)
        out.values[integer_numeric_columns()[c]] = row.numeric[c];
    for (std::size_t c = 0; c < row.boolean.size(); ++c)
        out.flags[integer_boolean_columns()[c]] = row.boolean[c];
    return out;
}

inline std::int64_t object_order(const SourceObject & obj)
{
    if (auto g = std::get_if<Graph>(&obj))
        return g->order();
    return std::get<std::int64_t>(obj);
}

struct Verdict {
    bool applies = false;  // the hypothesis holds
    bool violates = false; // strictly
    Rational lhs, rhs;
};

/// Evaluates one conjecture on a single object.
inline Verdict check_object(const LinearConjecture & c, const SourceObject & obj)
{
    ObjectValues v;
    try {
        v = object_values(obj);
    }
    catch (const std::exception & e) {
        throw std::runtime_error("invariant computation failed for candidate " + source_id(obj) + ": " + e.what());
    }
    auto lookup = [&](const std::string & name) -> const Rational & {
        auto it = v.values.find(name);
        if (it == v.values.end())
            throw std::invalid_argument("unknown invariant " + name);
        return it->second;
    };
    Verdict verdict;
    verdict.applies = std::all_of(c.hypothesis.conjuncts.begin(), c.hypothesis.conjuncts.end(), [&](const std::string & p) {
        auto it = v.flags.find(p);
        if (it == v.flags.end())
            throw std::invalid_argument("unknown property " + p);
        return it->second;
    });
    verdict.lhs = lookup(c.target);
    verdict.rhs = c.rhs.intercept;
    for (const auto & term : c.rhs.terms)
        verdict.rhs += term.coefficient * lookup(term.invariant);
    verdict.violates = verdict.applies && ! satisfies(verdict.lhs, c.direction, verdict.rhs);
    return verdict;
}

/// First candidate (in stream order, assumed ordered by size) that meets the
/// hypothesis and strictly violates the inequality. Candidates whose id is in
/// `skip_ids` are passed over.
template <typename Object>
std::optional<CounterexampleReport> find_smallest_counterexample(
    const LinearConjecture & c, std::span<const Object> candidates, const std::set<std::string> & skip_ids = {})
{
    for (const auto & candidate : candidates) {
        SourceObject obj = candidate;
        auto id = source_id(obj);
        if (skip_ids.count(id))
            continue;
        auto verdict = check_object(c, obj);
        if (verdict.violates)
            return CounterexampleReport{c, id, std::move(obj), object_order(candidate), verdict.lhs, verdict.rhs};
    }
    return std::nullopt;
}

template <typename Object>
std::optional<CounterexampleReport> find_smallest_counterexample(
    const LinearConjecture & c, const std::vector<Object> & candidates, const std::set<std::string> & skip_ids = {})
{
    return find_smallest_counterexample(c, std::span<const Object>(candidates), skip_ids);
}

struct RedBurtonOutcome {
    KnowledgeTable table;
    std::optional<CounterexampleReport> report;
};

/// "ce-<k>" with the smallest k not already used in the table.
inline std::string next_witness_id(const KnowledgeTable & t)
{
    for (std::size_t k = 1;; ++k) {
        auto id = "ce-" + std::to_string(k);
        if (! t.find_row(id))
            return id;
    }
}

/// Finds the smallest counterexample among the candidates and appends it to
/// the table, after which the refuted conjecture can no longer be generated.
/// Graph witnesses are renamed "ce-<k>"; integers keep their value as id.
template <typename Object>
RedBurtonOutcome red_burton(const KnowledgeTable & t, const LinearConjecture & c, const std::vector<Object> & candidates)
{
    std::set<std::string> existing;
    for (const auto & row : t.rows())
        existing.insert(row.id);
    auto report = find_smallest_counterexample(c, candidates, existing);
    if (! report)
        return {t, std::nullopt};
    if (auto g = std::get_if<Graph>(&report->witness)) {
        report->witness_id = next_witness_id(t);
        report->witness = g->with_id(report->witness_id);
    }
    auto table = append_object(t, report->witness);
    if (violations(table, c).empty())
        throw InvariantViolation("appended witness does not violate the conjecture");
    return {std::move(table), std::move(report)};
}

} // namespace conjecturer
