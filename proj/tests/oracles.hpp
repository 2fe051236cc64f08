#pragma once

// Slow, obviously-correct reference implementations. Nothing here calls into
// the library's algorithms; only the Rational type and plain containers.

#include <conjecturer/rational.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using conjecturer::Rational;
using EdgeList = std::vector<std::pair<int, int>>;

inline int max_independent_set(int n, const EdgeList & edges)
{
    int best = 0;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        bool ok = true;
        for (auto [u, v] : edges)
            if ((s >> u & 1u) && (s >> v & 1u)) {
                ok = false;
                break;
            }
        if (ok)
            best = std::max(best, __builtin_popcount(s));
    }
    return best;
}

inline int max_matching(const EdgeList & edges)
{
    int best = 0;
    const auto m = edges.size();
    for (std::uint32_t s = 0; s < (1u << m); ++s) {
        std::set<int> used;
        bool ok = true;
        for (std::size_t k = 0; k < m && ok; ++k)
            if (s >> k & 1u)
                ok = used.insert(edges[k].first).second && used.insert(edges[k].second).second;
        if (ok)
            best = std::max(best, __builtin_popcount(s));
    }
    return best;
}

inline std::vector<int> degrees(int n, const EdgeList & edges)
{
    std::vector<int> d(n, 0);
    for (auto [u, v] : edges) {
        ++d[u];
        ++d[v];
    }
    return d;
}

inline bool connected(int n, const EdgeList & edges)
{
    if (n == 0)
        return false;
    // Union-find.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
        while (parent[x] != x)
            x = parent[x];
        return x;
    };
    for (auto [u, v] : edges)
        parent[root(u)] = root(v);
    for (int v = 1; v < n; ++v)
        if (root(v) != root(0))
            return false;
    return true;
}

// Brute force over all two-colourings.
inline bool bipartite(int n, const EdgeList & edges)
{
    for (std::uint32_t colour = 0; colour < (1u << n); ++colour)
        if (std::all_of(edges.begin(), edges.end(), [&](auto e) {
                return (colour >> e.first & 1u) != (colour >> e.second & 1u);
            }))
            return true;
    return false;
}

inline EdgeList random_graph(std::mt19937 & rng, int n, double p)
{
    std::bernoulli_distribution coin(p);
    EdgeList edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng))
                edges.emplace_back(u, v);
    return edges;
}

// Reads graph6 as a bit string: each byte after the size contributes six
// bits, and bit k of the upper triangle (column-major, i<j) is edge (i,j).
inline std::pair<int, EdgeList> decode_graph6(const std::string & s)
{
    std::size_t pos = 0;
    int n = 0;
    if (s[0] != '~') {
        n = s[0] - 63;
        pos = 1;
    }
    else {
        n = ((s[1] - 63) << 12) | ((s[2] - 63) << 6) | (s[3] - 63);
        pos = 4;
    }
    std::string bits;
    for (; pos < s.size(); ++pos)
        for (int b = 5; b >= 0; --b)
            bits += ((s[pos] - 63) >> b & 1) ? '1' : '0';
    EdgeList edges;
    std::size_t k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k)
            if (bits.at(k) == '1')
                edges.emplace_back(i, j);
    return {n, edges};
}

inline bool isomorphic(int n, const EdgeList & a, const EdgeList & b)
{
    if (a.size() != b.size())
        return false;
    std::set<std::pair<int, int>> target;
    for (auto [u, v] : b)
        target.insert({std::min(u, v), std::max(u, v)});
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        bool same = std::all_of(a.begin(), a.end(), [&](auto e) {
            return target.count({std::min(p[e.first], p[e.second]), std::max(p[e.first], p[e.second])}) > 0;
        });
        if (same)
            return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// Isomorphism classes of connected graphs on exactly n vertices, by pairwise
// comparison against class representatives.
inline std::vector<EdgeList> connected_classes(int n)
{
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            slots.emplace_back(u, v);
    std::vector<EdgeList> reps;
    for (std::uint32_t s = 0; s < (1u << slots.size()); ++s) {
        EdgeList e;
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (s >> k & 1u)
                e.push_back(slots[k]);
        if (! connected(n, e))
            continue;
        if (std::none_of(reps.begin(), reps.end(), [&](const EdgeList & r) { return isomorphic(n, e, r); }))
            reps.push_back(e);
    }
    return reps;
}

struct Line {
    Rational m, b, objective;
};

// Best line through some pair of points with distinct x that bounds every
// point from the requested side. `upper` minimises sum(m x + b - y);
// otherwise maximises it.
inline std::optional<Line> best_pair_line(const std::vector<std::pair<Rational, Rational>> & pts, bool upper)
{
    std::optional<Line> best;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j || pts[i].first == pts[j].first)
                continue;
            Rational m = (pts[j].second - pts[i].second) / (pts[j].first - pts[i].first);
            Rational b = pts[i].second - m * pts[i].first;
            Rational obj;
            bool ok = true;
            for (const auto & [x, y] : pts) {
                Rational slack = m * x + b - y;
                if (upper ? slack < Rational(0) : slack > Rational(0))
                    ok = false;
                obj += slack;
            }
            if (ok && (! best || (upper ? obj < best->objective : obj > best->objective)))
                best = Line{m, b, obj};
        }
    return best;
}

struct Plane {
    Rational m1, m2, b, objective;
};

// Same idea with every triple of points whose projections are not collinear;
// the plane is solved by Cramer's rule on the 3x3 system.
inline std::optional<Plane> best_triple_plane(const std::vector<std::array<Rational, 3>> & pts, bool upper)
{
    std::optional<Plane> best;
    const auto n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const auto &p = pts[i], &q = pts[j], &r = pts[k];
                // | x1 x2 1 |
                auto det3 = [](Rational a, Rational b, Rational c, Rational d, Rational e, Rational f, Rational g,
                                Rational h, Rational ii) {
                    return a * (e * ii - f * h) - b * (d * ii - f * g) + c * (d * h - e * g);
                };
                Rational one(1);
                Rational D = det3(p[0], p[1], one, q[0], q[1], one, r[0], r[1], one);
                if (D.is_zero())
                    continue;
                Rational m1 = det3(p[2], p[1], one, q[2], q[1], one, r[2], r[1], one) / D;
                Rational m2 = det3(p[0], p[2], one, q[0], q[2], one, r[0], r[2], one) / D;
                Rational b = det3(p[0], p[1], p[2], q[0], q[1], q[2], r[0], r[1], r[2]) / D;
                Rational obj;
                bool ok = true;
                for (const auto & t : pts) {
                    Rational slack = m1 * t[0] + m2 * t[1] + b - t[2];
                    if (upper ? slack < Rational(0) : slack > Rational(0))
                        ok = false;
                    obj += slack;
                }
                if (ok && (! best || (upper ? obj < best->objective : obj > best->objective)))
                    best = Plane{m1, m2, b, obj};
            }
    return best;
}

inline std::vector<bool> prime_sieve(int limit)
{
    std::vector<bool> prime(limit + 1, true);
    prime[0] = false;
    if (limit >= 1)
        prime[1] = false;
    for (int p = 2; p * p <= limit; ++p)
        if (prime[p])
            for (int q = p * p; q <= limit; q += p)
                prime[q] = false;
    return prime;
}

// Literal readings of the integer properties. `sieve` must reach past every
// factorial digit sum involved: 4 * 9! for four-digit values.
struct IntegerFacts {
    int sod = 0, divisors = 0;
    bool prime = false, even = false, palindrome = false, armstrong = false, goldbach = false, fibonacci = false,
         sod_fibonacci = false, factorial_sum_prime = false, sod_prime = false, harshad = false, circular = false,
         prime_digits = false;
};

inline bool fibonacci_number(int v)
{
    for (int a = 1, b = 2; a <= v; std::tie(a, b) = std::pair(b, a + b))
        if (a == v)
            return true;
    return false;
}

inline IntegerFacts integer_facts(int v, const std::vector<bool> & sieve)
{
    static const int factorial[] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880};
    IntegerFacts f;
    const auto text = std::to_string(v);
    for (char c : text)
        f.sod += c - '0';
    for (int d = 1; d <= v; ++d)
        f.divisors += v % d == 0;
    f.prime = sieve[v];
    f.even = v % 2 == 0;
    f.palindrome = text == std::string(text.rbegin(), text.rend());

    long long power_sum = 0;
    for (char c : text) {
        long long term = 1;
        for (std::size_t k = 0; k < text.size(); ++k)
            term *= c - '0';
        power_sum += term;
    }
    f.armstrong = power_sum == v;

    // Any split into two primes.
    for (int p = 2; p <= v - 2 && ! f.goldbach; ++p)
        f.goldbach = sieve[p] && sieve[v - p];
    f.fibonacci = fibonacci_number(v);
    f.sod_fibonacci = fibonacci_number(f.sod);
    int fsum = 0;
    for (char c : text)
        fsum += factorial[c - '0'];
    f.factorial_sum_prime = sieve[fsum];
    f.sod_prime = sieve[f.sod];
    f.harshad = v % f.sod == 0;
    f.circular = true;
    for (std::size_t k = 0; k < text.size(); ++k)
        f.circular = f.circular && sieve[std::stoi(text.substr(k) + text.substr(0, k))];
    f.prime_digits = text.find_first_not_of("2357") == std::string::npos;
    return f;
}

} // namespace oracle
