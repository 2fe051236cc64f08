#pragma once

#include <conjecturer/conjecture.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace conjecturer {

inline std::string_view subject_symbol(Domain d) { return d == Domain::graph ? "G" : "n"; }
inline std::string_view object_noun(Domain d) { return d == Domain::graph ? "graphs" : "integers"; }

inline std::string render_hypothesis(const Hypothesis & h)
{
    std::string out;
    for (std::size_t i = 0; i < h.conjuncts.size(); ++i) {
        if (i > 0)
            out += " and ";
        out += h.conjuncts[i];
    }
    return out;
}

/// "1/2 n(G) + 1", "n_minus_matching_number(G) + -1/2"; unit coefficients
/// and a zero intercept are omitted.
inline std::string render_affine(const AffineForm & form, Domain domain)
{
    const std::string subject(subject_symbol(domain));
    std::string out;
    for (std::size_t i = 0; i < form.terms.size(); ++i) {
        const auto & term = form.terms[i];
        if (i > 0)
            out += " + ";
        if (term.coefficient != Rational(1))
            out += term.coefficient.str() + " ";
        out += term.invariant + "(" + subject + ")";
    }
    if (form.terms.empty())
        return form.intercept.str();
    if (! form.intercept.is_zero())
        out += " + " + form.intercept.str();
    return out;
}

inline std::string render_inequality(const Hypothesis & h, const std::string & target, Direction direction,
    const AffineForm & rhs, Domain domain)
{
    const std::string subject(subject_symbol(domain));
    return "If " + subject + " is " + render_hypothesis(h) + ", then " + target + "(" + subject + ") "
        + (direction == Direction::upper ? "<=" : ">=") + " " + render_affine(rhs, domain);
}

/// "Conjecture k. If G is ..., then ... . This bound is sharp on t graphs."
inline std::string render_conjecture(std::size_t k, const LinearConjecture & c, Domain domain)
{
    return "Conjecture " + std::to_string(k) + ". " + render_inequality(c.hypothesis, c.target, c.direction, c.rhs, domain)
        + ". This bound is sharp on " + std::to_string(c.touch) + " " + std::string(object_noun(domain)) + ".";
}

inline std::string render_equality(const EqualityConjecture & e, Domain domain)
{
    const std::string subject(subject_symbol(domain));
    return "If " + subject + " is " + render_hypothesis(e.hypothesis) + ", then " + e.target + "(" + subject
        + ") = " + render_affine(e.rhs, domain);
}

/// One rendered conjecture per line, numbered from 1.
inline std::string render_conjectures(std::span<const LinearConjecture> conjectures, Domain domain)
{
    std::string out;
    for (std::size_t i = 0; i < conjectures.size(); ++i)
        out += render_conjecture(i + 1, conjectures[i], domain) + "\n";
    return out;
}

namespace detail {
    inline std::string_view trim(std::string_view s)
    {
        while (! s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        while (! s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
            s.remove_suffix(1);
        return s;
    }

    inline std::vector<std::string_view> split(std::string_view s, std::string_view separator)
    {
        std::vector<std::string_view> parts;
        std::size_t start = 0;
        while (true) {
            auto at = s.find(separator, start);
            if (at == std::string_view::npos) {
                parts.push_back(s.substr(start));
                return parts;
            }
            parts.push_back(s.substr(start, at - start));
            start = at + separator.size();
        }
    }

    inline std::string strip_call(std::string_view text, std::string_view subject)
    {
        std::string suffix = "(" + std::string(subject) + ")";
        if (text.size() <= suffix.size() || text.substr(text.size() - suffix.size()) != suffix)
            throw std::invalid_argument("expected '" + std::string(text) + "' to end in " + suffix);
        return std::string(text.substr(0, text.size() - suffix.size()));
    }
} // namespace detail

/// Parses the inequality grammar produced by render_conjecture, with or
/// without the "Conjecture k." prefix and the sharpness sentence. Hypothesis
/// names are returned as written; callers validate them against a table.
inline KnownPattern parse_conjecture_form(std::string_view text)
{
    using namespace detail;
    auto s = trim(text);
    if (s.starts_with("Conjecture ")) {
        auto dot = s.find(". ");
        if (dot == std::string_view::npos)
            throw std::invalid_argument("malformed conjecture: missing '.' after number");
        s = trim(s.substr(dot + 2));
    }
    if (auto sharp = s.find(". This bound"); sharp != std::string_view::npos)
        s = s.substr(0, sharp);
    if (s.ends_with("."))
        s.remove_suffix(1);

    if (! s.starts_with("If "))
        throw std::invalid_argument("malformed conjecture: expected 'If <subject> is ...'");
    s.remove_prefix(3);
    auto is_at = s.find(" is ");
    if (is_at == std::string_view::npos)
        throw std::invalid_argument("malformed conjecture: expected '<subject> is'");
    auto subject = s.substr(0, is_at);
    if (subject.empty() || subject.find(' ') != std::string_view::npos)
        throw std::invalid_argument("malformed conjecture: bad subject");
    s.remove_prefix(is_at + 4);
    auto then_at = s.find(", then ");
    if (then_at == std::string_view::npos)
        throw std::invalid_argument("malformed conjecture: expected ', then'");

    KnownPattern p;
    for (auto name : split(s.substr(0, then_at), " and ")) {
        name = trim(name);
        if (name.empty())
            throw std::invalid_argument("malformed conjecture: empty property");
        p.hypothesis.conjuncts.emplace_back(name);
    }
    s.remove_prefix(then_at + 7);

    std::size_t op_at = s.find(" <= ");
    p.direction = Direction::upper;
    if (op_at == std::string_view::npos) {
        op_at = s.find(" >= ");
        p.direction = Direction::lower;
    }
    if (op_at == std::string_view::npos)
        throw std::invalid_argument("malformed conjecture: expected '<=' or '>='");
    p.target = strip_call(trim(s.substr(0, op_at)), subject);

    auto terms = split(s.substr(op_at + 4), " + ");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        auto term = trim(terms[i]);
        if (term.empty())
            throw std::invalid_argument("malformed conjecture: empty term");
        auto space = term.find(' ');
        bool is_call = term.ends_with(")");
        if (! is_call) {
            if (i + 1 != terms.size() || space != std::string_view::npos)
                throw std::invalid_argument("malformed conjecture: constant must be the last term");
            p.rhs.intercept = Rational::parse(term);
        }
        else if (space == std::string_view::npos)
            p.rhs.terms.push_back({strip_call(term, subject), Rational(1)});
        else
            p.rhs.terms.push_back(
                {strip_call(trim(term.substr(space + 1)), subject), Rational::parse(term.substr(0, space))});
    }
    for (const auto & term : p.rhs.terms)
        if (term.coefficient.is_zero())
            throw std::invalid_argument("malformed conjecture: zero coefficient");
    return p;
}

/// Resolves a parsed pattern against a table: validates names and puts the
/// hypothesis into column order.
inline LinearConjecture bind_pattern(const KnowledgeTable & t, const KnownPattern & p)
{
    t.require_numeric(p.target);
    for (const auto & term : p.rhs.terms)
        t.require_numeric(term.invariant);
    LinearConjecture c{make_hypothesis(t, p.hypothesis.conjuncts), p.target, p.direction, p.rhs, 0, {}};
    auto sharp = touch_and_sharp(t, c);
    c.touch = sharp.touch;
    c.sharp_set = std::move(sharp.sharp_set);
    return c;
}

} // namespace conjecturer
