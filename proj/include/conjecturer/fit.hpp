#pragma once

#include <conjecturer/rational.hpp>

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace conjecturer {

enum class Direction { upper, lower };

inline std::string to_string(Direction d) { return d == Direction::upper ? "upper" : "lower"; }

enum class FitStatus { ok, infeasible, degenerate_zero_slope, too_few_rows };

inline std::string to_string(FitStatus s)
{
    switch (s) {
    case FitStatus::ok: return "ok";
    case FitStatus::infeasible: return "infeasible";
    case FitStatus::degenerate_zero_slope: return "degenerate_zero_slope";
    case FitStatus::too_few_rows: return "too_few_rows";
    }
    return "unknown";
}

struct Point2 {
    Rational x, y;
};

struct Point3 {
    Rational x1, x2, y;
};

/// Result of one optimisation model. `slopes` has one entry for the
/// single-invariant models and two for the two-invariant model. `tight` is
/// the number of input points on which the bound holds with equality.
struct FitResult {
    std::vector<Rational> slopes;
    Rational intercept;
    Direction direction = Direction::upper;
    Rational objective;
    FitStatus status = FitStatus::infeasible;
    std::size_t tight = 0;

    [[nodiscard]] bool ok() const { return status == FitStatus::ok; }
};

namespace detail {

    struct Candidate {
        std::vector<Rational> slopes;
        Rational intercept;
        Rational objective;
        std::size_t tight = 0;
    };

    inline Rational slope_magnitude(const Candidate & c)
    {
        Rational total;
        for (const auto & m : c.slopes)
            total += m.abs();
        return total;
    }

    /// Strict preference between two candidates with the given direction:
    /// better objective, then more tight points, then smaller |slope| sum,
    /// then smaller |intercept|, then lexicographically smaller (slopes, b).
    inline bool preferred(const Candidate & a, const Candidate & b, Direction direction)
    {
        if (a.objective != b.objective)
            return direction == Direction::upper ? a.objective < b.objective : a.objective > b.objective;
        if (a.tight != b.tight)
            return a.tight > b.tight;
        auto ma = slope_magnitude(a), mb = slope_magnitude(b);
        if (ma != mb)
            return ma < mb;
        auto ba = a.intercept.abs(), bb = b.intercept.abs();
        if (ba != bb)
            return ba < bb;
        if (a.slopes != b.slopes)
            return std::lexicographical_compare(a.slopes.begin(), a.slopes.end(), b.slopes.begin(), b.slopes.end());
        return a.intercept < b.intercept;
    }

    inline FitResult finish(const std::optional<Candidate> & best, Direction direction)
    {
        FitResult r;
        r.direction = direction;
        if (! best) {
            r.status = FitStatus::infeasible;
            return r;
        }
        r.slopes = best->slopes;
        r.intercept = best->intercept;
        r.objective = best->objective;
        r.tight = best->tight;
        bool zero_slope = std::any_of(r.slopes.begin(), r.slopes.end(), [](const Rational & m) { return m.is_zero(); });
        r.status = zero_slope ? FitStatus::degenerate_zero_slope : FitStatus::ok;
        return r;
    }

    inline Rational cross(const Point2 & o, const Point2 & a, const Point2 & b)
    {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    }

    // Every feasible line through two points of a finite set supports one
    // edge of its upper hull, and the optimum of a bounded LP sits at a
    // vertex, so the hull edges are the only candidates that need checking.
    inline FitResult fit_line(std::span<const Point2> points, Direction direction)
    {
        FitResult r;
        r.direction = direction;
        if (points.size() < 2) {
            r.status = FitStatus::too_few_rows;
            return r;
        }

        // Work on the upper hull; lower bounds mirror y.
        const Rational sign = direction == Direction::upper ? Rational(1) : Rational(-1);
        std::vector<Point2> pts;
        pts.reserve(points.size());
        for (const auto & p : points)
            pts.push_back({p.x, sign * p.y});
        std::sort(pts.begin(), pts.end(), [](const Point2 & a, const Point2 & b) {
            return a.x != b.x ? a.x < b.x : a.y > b.y;
        });
        // Keep the highest point per x.
        std::vector<Point2> columns;
        for (const auto & p : pts)
            if (columns.empty() || columns.back().x != p.x)
                columns.push_back(p);
        if (columns.size() < 2) {
            r.status = FitStatus::degenerate_zero_slope;
            return r;
        }

        std::vector<Point2> hull;
        for (const auto & p : columns) {
            while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= Rational(0))
                hull.pop_back();
            hull.push_back(p);
        }

        Rational sum_x, sum_y;
        for (const auto & p : points) {
            sum_x += p.x;
            sum_y += p.y;
        }
        const Rational count(static_cast<std::int64_t>(points.size()));

        std::optional<Candidate> best;
        for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
            Rational m = (hull[i + 1].y - hull[i].y) / (hull[i + 1].x - hull[i].x);
            Rational b = hull[i].y - m * hull[i].x;
            // Back to the caller's orientation.
            m = sign * m;
            b = sign * b;
            Candidate c{{m}, b, m * sum_x + count * b - sum_y, 0};
            for (const auto & p : points)
                if (m * p.x + b == p.y)
                    ++c.tight;
            if (! best || preferred(c, *best, direction))
                best = std::move(c);
        }
        return finish(best, direction);
    }

    struct Plane {
        Rational m1, m2, b;
    };

    /// Plane through three points; nullopt when their (x1, x2) are collinear.
    inline std::optional<Plane> plane_through(const Point3 & p, const Point3 & q, const Point3 & s)
    {
        Rational a1 = q.x1 - p.x1, a2 = q.x2 - p.x2, ay = q.y - p.y;
        Rational c1 = s.x1 - p.x1, c2 = s.x2 - p.x2, cy = s.y - p.y;
        Rational det = a1 * c2 - a2 * c1;
        if (det.is_zero())
            return std::nullopt;
        Rational m1 = (ay * c2 - a2 * cy) / det;
        Rational m2 = (a1 * cy - ay * c1) / det;
        return Plane{m1, m2, p.y - m1 * p.x1 - m2 * p.x2};
    }

    inline Rational orient(const Rational & ax, const Rational & ay, const Rational & bx, const Rational & by,
        const Rational & cx, const Rational & cy)
    {
        return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    }

    // The optimum equals the height of the upper envelope at the centroid of
    // the (x1, x2) projections, so every optimal vertex is the plane through
    // a triple whose projected triangle contains the centroid.
    inline FitResult fit_plane(std::span<const Point3> points, Direction direction)
    {
        FitResult r;
        r.direction = direction;
        if (points.size() < 3) {
            r.status = FitStatus::too_few_rows;
            return r;
        }
        const Rational count(static_cast<std::int64_t>(points.size()));
        Rational sum1, sum2, sum_y;
        for (const auto & p : points) {
            sum1 += p.x1;
            sum2 += p.x2;
            sum_y += p.y;
        }
        const Rational cx = sum1 / count, cy = sum2 / count;

        bool any_triangle = false;
        std::optional<Candidate> best;
        const std::size_t n = points.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) {
                    const auto &p = points[i], &q = points[j], &s = points[k];
                    auto plane = plane_through(p, q, s);
                    if (! plane)
                        continue;
                    any_triangle = true;
                    int o1 = orient(p.x1, p.x2, q.x1, q.x2, cx, cy).sign();
                    int o2 = orient(q.x1, q.x2, s.x1, s.x2, cx, cy).sign();
                    int o3 = orient(s.x1, s.x2, p.x1, p.x2, cx, cy).sign();
                    bool has_negative = o1 < 0 || o2 < 0 || o3 < 0;
                    bool has_positive = o1 > 0 || o2 > 0 || o3 > 0;
                    if (has_negative && has_positive)
                        continue;

                    Candidate c{{plane->m1, plane->m2}, plane->b, {}, 0};
                    bool feasible = true;
                    for (const auto & t : points) {
                        Rational h = plane->m1 * t.x1 + plane->m2 * t.x2 + plane->b;
                        if (direction == Direction::upper ? h < t.y : h > t.y) {
                            feasible = false;
                            break;
                        }
                        if (h == t.y)
                            ++c.tight;
                    }
                    if (! feasible)
                        continue;
                    c.objective = plane->m1 * sum1 + plane->m2 * sum2 + count * plane->b - sum_y;
                    if (! best || preferred(c, *best, direction))
                        best = std::move(c);
                }
        if (! any_triangle) {
            r.status = FitStatus::degenerate_zero_slope;
            return r;
        }
        return finish(best, direction);
    }

} // namespace detail

/// Tightest line y <= m x + b over the points: minimises the total slack
/// sum(m x_i + b - y_i). A zero optimal slope is reported as degenerate.
inline FitResult fit_upper(std::span<const Point2> points) { return detail::fit_line(points, Direction::upper); }

/// Mirror of fit_upper: y >= m x + b maximising sum(m x_i + b - y_i).
inline FitResult fit_lower(std::span<const Point2> points) { return detail::fit_line(points, Direction::lower); }

/// Tightest plane y <= m1 x1 + m2 x2 + b. Either slope being zero is degenerate.
inline FitResult fit_upper_2d(std::span<const Point3> points) { return detail::fit_plane(points, Direction::upper); }

inline FitResult fit_lower_2d(std::span<const Point3> points) { return detail::fit_plane(points, Direction::lower); }

} // namespace conjecturer
