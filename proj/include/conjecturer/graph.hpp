#pragma once

#include <conjecturer/rational.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conjecturer {

using Edge = std::pair<int, int>;

/// Largest order for which the exact NP-hard invariants are computed.
inline constexpr int max_exact_order = 24;

/// Simple undirected labelled graph. Immutable once built; edges are stored
/// normalised (u < v) and sorted.
class Graph {
public:
    Graph() = default;

    Graph(std::string id, int n, std::vector<Edge> edges) : id_(std::move(id)), n_(n)
    {
        if (n < 0)
            throw std::invalid_argument("graph " + id_ + ": negative vertex count");
        for (auto & [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::invalid_argument("graph " + id_ + ": edge endpoint out of range (" + std::to_string(u) + ","
                    + std::to_string(v) + ")");
            if (u == v)
                throw std::invalid_argument("graph " + id_ + ": self-loop at vertex " + std::to_string(u));
            if (u > v)
                std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw std::invalid_argument("graph " + id_ + ": duplicate edge");
        edges_ = std::move(edges);
        adjacency_.assign(static_cast<std::size_t>(n), {});
        for (auto [u, v] : edges_) {
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto & list : adjacency_)
            std::sort(list.begin(), list.end());
    }

    [[nodiscard]] const std::string & id() const { return id_; }
    [[nodiscard]] int order() const { return n_; }
    [[nodiscard]] std::size_t size() const { return edges_.size(); }
    [[nodiscard]] const std::vector<Edge> & edges() const { return edges_; }
    [[nodiscard]] const std::vector<int> & neighbours(int v) const { return adjacency_.at(v); }
    [[nodiscard]] int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }

    [[nodiscard]] bool adjacent(int u, int v) const
    {
        const auto & list = adjacency_.at(u);
        return std::binary_search(list.begin(), list.end(), v);
    }

    [[nodiscard]] Graph with_id(std::string id) const
    {
        Graph g = *this;
        g.id_ = std::move(id);
        return g;
    }

    /// Structural equality; the id is ignored.
    [[nodiscard]] bool same_structure(const Graph & other) const { return n_ == other.n_ && edges_ == other.edges_; }

    friend bool operator==(const Graph & a, const Graph & b) { return a.id_ == b.id_ && a.same_structure(b); }

private:
    std::string id_;
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

// Text formats ---------------------------------------------------------------

/// Edge-list format: a header line "n <count>", then one "u v" pair per line.
/// Blank lines and lines starting with '#' are ignored.
inline Graph parse_edge_list(std::istream & in, std::string id)
{
    std::string line;
    int line_number = 0;
    int n = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_number;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream fields(line.substr(0, line.find('#')));
        if (n < 0) {
            std::string keyword;
            if (! (fields >> keyword >> n) || keyword != "n" || n < 0)
                throw std::invalid_argument("edge list line " + std::to_string(line_number) + ": expected 'n <count>'");
        }
        else {
            int u = 0, v = 0;
            if (! (fields >> u >> v))
                throw std::invalid_argument("edge list line " + std::to_string(line_number) + ": expected 'u v'");
            edges.emplace_back(u, v);
        }
        std::string rest;
        if (fields >> rest)
            throw std::invalid_argument("edge list line " + std::to_string(line_number) + ": trailing text");
    }
    if (n < 0)
        throw std::invalid_argument("edge list: missing 'n <count>' header");
    return Graph(std::move(id), n, std::move(edges));
}

inline Graph parse_edge_list(const std::string & text, std::string id)
{
    std::istringstream in(text);
    return parse_edge_list(in, std::move(id));
}

inline std::string to_edge_list(const Graph & g)
{
    std::string out = "n " + std::to_string(g.order()) + "\n";
    for (auto [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

/// Decodes one graph6 line (orders up to 258047; no ">>graph6<<" header).
inline Graph decode_graph6(std::string_view line, std::string id)
{
    while (! line.empty() && (line.back() == '\r' || line.back() == '\n'))
        line.remove_suffix(1);
    for (char c : line)
        if (c < 63 || c > 126)
            throw std::invalid_argument("graph6: invalid character");
    if (line.empty())
        throw std::invalid_argument("graph6: empty line");

    std::size_t pos = 0;
    long n = 0;
    if (line[0] != 126) {
        n = line[0] - 63;
        pos = 1;
    }
    else {
        if (line.size() < 4 || line[1] == 126)
            throw std::invalid_argument("graph6: unsupported order header");
        n = ((line[1] - 63) << 12) | ((line[2] - 63) << 6) | (line[3] - 63);
        pos = 4;
    }

    std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - (n > 0 ? 1 : 0)) / 2;
    std::size_t expected = (bits + 5) / 6;
    if (line.size() - pos != expected)
        throw std::invalid_argument("graph6: expected " + std::to_string(expected) + " data bytes, found "
            + std::to_string(line.size() - pos));

    std::vector<Edge> edges;
    std::size_t k = 0;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u, ++k) {
            int byte = line[pos + k / 6] - 63;
            if (byte & (1 << (5 - k % 6)))
                edges.emplace_back(u, v);
        }
    return Graph(std::move(id), static_cast<int>(n), std::move(edges));
}

inline std::string encode_graph6(const Graph & g)
{
    int n = g.order();
    std::string out;
    if (n < 63)
        out.push_back(static_cast<char>(n + 63));
    else {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0, used = 0;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) {
            acc = (acc << 1) | (g.adjacent(u, v) ? 1 : 0);
            if (++used == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = used = 0;
            }
        }
    if (used > 0)
        out.push_back(static_cast<char>((acc << (6 - used)) + 63));
    return out;
}

// Invariants -----------------------------------------------------------------

namespace detail {
    inline void require_exact_order(const Graph & g)
    {
        if (g.order() > max_exact_order)
            throw std::invalid_argument("graph " + g.id() + ": order " + std::to_string(g.order())
                + " exceeds the exact-computation limit of " + std::to_string(max_exact_order));
    }

    inline std::vector<std::uint32_t> adjacency_masks(const Graph & g)
    {
        std::vector<std::uint32_t> masks(static_cast<std::size_t>(g.order()), 0);
        for (auto [u, v] : g.edges()) {
            masks[u] |= 1u << v;
            masks[v] |= 1u << u;
        }
        return masks;
    }

    class IndependentSetSearch {
    public:
        explicit IndependentSetSearch(std::vector<std::uint32_t> adj) : adj_(std::move(adj)) {}

        int run(int lower_bound)
        {
            best_ = lower_bound;
            std::uint32_t all = adj_.empty() ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << adj_.size()) - 1);
            expand(all, 0);
            return best_;
        }

    private:
        void expand(std::uint32_t candidates, int taken)
        {
            while (true) {
                if (candidates == 0) {
                    best_ = std::max(best_, taken);
                    return;
                }
                if (taken + std::popcount(candidates) <= best_)
                    return;

                // A vertex of degree <= 1 among the candidates is in some maximum
                // independent set, so take it without branching.
                int forced = -1;
                int branch = -1, branch_degree = -1;
                for (std::uint32_t rest = candidates; rest; rest &= rest - 1) {
                    int v = std::countr_zero(rest);
                    int d = std::popcount(adj_[v] & candidates);
                    if (d <= 1) {
                        forced = v;
                        break;
                    }
                    if (d > branch_degree) {
                        branch = v;
                        branch_degree = d;
                    }
                }
                if (forced >= 0) {
                    candidates &= ~(adj_[forced] | (1u << forced));
                    ++taken;
                    continue;
                }
                expand(candidates & ~(adj_[branch] | (1u << branch)), taken + 1);
                candidates &= ~(1u << branch);
            }
        }

        std::vector<std::uint32_t> adj_;
        int best_ = 0;
    };

    inline int greedy_independent_set(const std::vector<std::uint32_t> & adj)
    {
        std::uint32_t candidates = adj.empty() ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << adj.size()) - 1);
        int size = 0;
        while (candidates) {
            int pick = -1, pick_degree = 1 << 30;
            for (std::uint32_t rest = candidates; rest; rest &= rest - 1) {
                int v = std::countr_zero(rest);
                int d = std::popcount(adj[v] & candidates);
                if (d < pick_degree) {
                    pick = v;
                    pick_degree = d;
                }
            }
            candidates &= ~(adj[pick] | (1u << pick));
            ++size;
        }
        return size;
    }

    // Edmonds' blossom algorithm.
    class BlossomMatcher {
    public:
        explicit BlossomMatcher(const Graph & g) :
            g_(g), n_(g.order()), match_(n_, -1), parent_(n_), base_(n_), used_(n_), blossom_(n_)
        {
        }

        int run()
        {
            for (auto [u, v] : g_.edges())
                if (match_[u] == -1 && match_[v] == -1) {
                    match_[u] = v;
                    match_[v] = u;
                }
            for (int v = 0; v < n_; ++v) {
                if (match_[v] != -1)
                    continue;
                int end = find_path(v);
                while (end != -1) {
                    int pv = parent_[end], ppv = match_[pv];
                    match_[end] = pv;
                    match_[pv] = end;
                    end = ppv;
                }
            }
            int matched = 0;
            for (int v = 0; v < n_; ++v)
                if (match_[v] != -1)
                    ++matched;
            return matched / 2;
        }

    private:
        int lowest_common_ancestor(int a, int b)
        {
            std::vector<bool> seen(n_, false);
            while (true) {
                a = base_[a];
                seen[a] = true;
                if (match_[a] == -1)
                    break;
                a = parent_[match_[a]];
            }
            while (true) {
                b = base_[b];
                if (seen[b])
                    return b;
                b = parent_[match_[b]];
            }
        }

        void mark_path(int v, int b, int child)
        {
            while (base_[v] != b) {
                blossom_[base_[v]] = blossom_[base_[match_[v]]] = true;
                parent_[v] = child;
                child = match_[v];
                v = parent_[match_[v]];
            }
        }

        int find_path(int root)
        {
            std::fill(used_.begin(), used_.end(), false);
            std::fill(parent_.begin(), parent_.end(), -1);
            for (int i = 0; i < n_; ++i)
                base_[i] = i;
            used_[root] = true;
            std::queue<int> queue;
            queue.push(root);
            while (! queue.empty()) {
                int v = queue.front();
                queue.pop();
                for (int to : g_.neighbours(v)) {
                    if (base_[v] == base_[to] || match_[v] == to)
                        continue;
                    if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
                        int current = lowest_common_ancestor(v, to);
                        std::fill(blossom_.begin(), blossom_.end(), false);
                        mark_path(v, current, to);
                        mark_path(to, current, v);
                        for (int i = 0; i < n_; ++i)
                            if (blossom_[base_[i]]) {
                                base_[i] = current;
                                if (! used_[i]) {
                                    used_[i] = true;
                                    queue.push(i);
                                }
                            }
                    }
                    else if (parent_[to] == -1) {
                        parent_[to] = v;
                        if (match_[to] == -1)
                            return to;
                        used_[match_[to]] = true;
                        queue.push(match_[to]);
                    }
                }
            }
            return -1;
        }

        const Graph & g_;
        int n_;
        std::vector<int> match_, parent_, base_;
        std::vector<bool> used_, blossom_;
    };
} // namespace detail

/// Size of a maximum independent set, by branch and bound seeded with a
/// greedy lower bound. Orders above max_exact_order are refused.
inline int independence_number(const Graph & g)
{
    detail::require_exact_order(g);
    auto adj = detail::adjacency_masks(g);
    int lower = detail::greedy_independent_set(adj);
    return detail::IndependentSetSearch(std::move(adj)).run(lower);
}

/// Size of a maximum matching.
inline int matching_number(const Graph & g)
{
    detail::require_exact_order(g);
    return detail::BlossomMatcher(g).run();
}

inline int min_degree(const Graph & g)
{
    if (g.order() == 0)
        throw std::invalid_argument("degenerate graph");
    int best = g.degree(0);
    for (int v = 1; v < g.order(); ++v)
        best = std::min(best, g.degree(v));
    return best;
}

inline int max_degree(const Graph & g)
{
    if (g.order() == 0)
        throw std::invalid_argument("degenerate graph");
    int best = g.degree(0);
    for (int v = 1; v < g.order(); ++v)
        best = std::max(best, g.degree(v));
    return best;
}

/// The null graph is treated as disconnected.
inline bool is_connected(const Graph & g)
{
    if (g.order() == 0)
        return false;
    std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (! stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbours(v))
            if (! seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == g.order();
}

inline bool is_tree(const Graph & g)
{
    return is_connected(g) && g.size() + 1 == static_cast<std::size_t>(g.order());
}

inline bool is_regular(const Graph & g)
{
    return g.order() == 0 || min_degree(g) == max_degree(g);
}

inline bool is_bipartite(const Graph & g)
{
    std::vector<int> colour(static_cast<std::size_t>(g.order()), -1);
    for (int start = 0; start < g.order(); ++start) {
        if (colour[start] != -1)
            continue;
        colour[start] = 0;
        std::vector<int> stack{start};
        while (! stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbours(v)) {
                if (colour[w] == -1) {
                    colour[w] = 1 - colour[v];
                    stack.push_back(w);
                }
                else if (colour[w] == colour[v])
                    return false;
            }
        }
    }
    return true;
}

/// Column names of the graph domain, in table order.
inline const std::vector<std::string> & graph_numeric_columns()
{
    static const std::vector<std::string> columns{"n", "matching_number", "independence_number",
        "n_minus_matching_number", "n_minus_minimum_degree", "maximum_degree_squared"};
    return columns;
}

inline const std::vector<std::string> & graph_boolean_columns()
{
    static const std::vector<std::string> columns{"connected", "tree", "regular", "bipartite"};
    return columns;
}

struct InvariantVector {
    std::map<std::string, Rational> values;
    std::map<std::string, bool> flags;
};

inline InvariantVector compute_invariant_vector(const Graph & g)
{
    if (g.order() == 0)
        throw std::invalid_argument("graph " + g.id() + ": degenerate graph");
    const std::int64_t n = g.order();
    const std::int64_t mu = matching_number(g);
    const std::int64_t alpha = independence_number(g);
    const std::int64_t delta = min_degree(g);
    const std::int64_t big_delta = max_degree(g);

    InvariantVector iv;
    iv.values["n"] = n;
    iv.values["matching_number"] = mu;
    iv.values["independence_number"] = alpha;
    iv.values["n_minus_matching_number"] = n - mu;
    iv.values["n_minus_minimum_degree"] = n - delta;
    iv.values["maximum_degree_squared"] = big_delta * big_delta;

    bool connected = is_connected(g);
    iv.flags["connected"] = connected;
    iv.flags["tree"] = connected && g.size() + 1 == static_cast<std::size_t>(n);
    iv.flags["regular"] = delta == big_delta;
    iv.flags["bipartite"] = is_bipartite(g);
    return iv;
}

} // namespace conjecturer
