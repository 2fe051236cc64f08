#pragma once

#include <conjecturer/conjecture.hpp>
#include <conjecturer/render.hpp>

#include <json.hpp>

#include <string>
#include <vector>

// Machine-readable forms. Rationals always travel as "p/q" strings.
namespace conjecturer {

using Json = nlohmann::json;

inline Json to_json(const AffineForm & form)
{
    Json terms = Json::array();
    for (const auto & t : form.terms)
        terms.push_back({{"invariant", t.invariant}, {"coefficient", t.coefficient.str()}});
    return {{"terms", terms}, {"intercept", form.intercept.str()}};
}

inline AffineForm affine_from_json(const Json & j)
{
    AffineForm form;
    for (const auto & t : j.at("terms"))
        form.terms.push_back({t.at("invariant").get<std::string>(), Rational::parse(t.at("coefficient").get<std::string>())});
    form.intercept = Rational::parse(j.at("intercept").get<std::string>());
    return form;
}

inline Direction direction_from_string(const std::string & s)
{
    if (s == "upper")
        return Direction::upper;
    if (s == "lower")
        return Direction::lower;
    throw std::invalid_argument("unknown direction '" + s + "'");
}

inline Json to_json(const LinearConjecture & c)
{
    return {{"hypothesis", c.hypothesis.conjuncts}, {"target", c.target}, {"direction", to_string(c.direction)},
        {"rhs", to_json(c.rhs)}, {"touch", c.touch}, {"sharp_set", c.sharp_set}};
}

inline LinearConjecture conjecture_from_json(const Json & j)
{
    LinearConjecture c;
    c.hypothesis.conjuncts = j.at("hypothesis").get<std::vector<std::string>>();
    c.target = j.at("target").get<std::string>();
    c.direction = direction_from_string(j.at("direction").get<std::string>());
    c.rhs = affine_from_json(j.at("rhs"));
    c.touch = j.value("touch", std::size_t{0});
    c.sharp_set = j.value("sharp_set", std::vector<std::string>{});
    return c;
}

inline Json to_json(const KnownPattern & p)
{
    return {{"hypothesis", p.hypothesis.conjuncts}, {"target", p.target}, {"direction", to_string(p.direction)},
        {"rhs", to_json(p.rhs)}};
}

inline KnownPattern pattern_from_json(const Json & j)
{
    KnownPattern p;
    p.hypothesis.conjuncts = j.at("hypothesis").get<std::vector<std::string>>();
    if (p.hypothesis.conjuncts.empty())
        throw std::invalid_argument("a pattern needs at least one property");
    p.target = j.at("target").get<std::string>();
    p.direction = direction_from_string(j.at("direction").get<std::string>());
    p.rhs = affine_from_json(j.at("rhs"));
    return p;
}

inline KnownPattern to_pattern(const LinearConjecture & c) { return {c.hypothesis, c.target, c.direction, c.rhs}; }

inline Json to_json(const EqualityConjecture & e)
{
    return {{"hypothesis", e.hypothesis.conjuncts}, {"target", e.target}, {"rhs", to_json(e.rhs)}};
}

inline EqualityConjecture equality_from_json(const Json & j)
{
    return {Hypothesis{j.at("hypothesis").get<std::vector<std::string>>()}, j.at("target").get<std::string>(),
        affine_from_json(j.at("rhs"))};
}

/// Conjectures carry their rendered text alongside the structured fields.
inline Json run_to_json(const ConjectureRun & run)
{
    auto domain = run.table->domain();
    Json conjectures = Json::array();
    for (std::size_t i = 0; i < run.conjectures.size(); ++i) {
        auto j = to_json(run.conjectures[i]);
        j["text"] = render_conjecture(i + 1, run.conjectures[i], domain);
        conjectures.push_back(std::move(j));
    }
    Json equalities = Json::array();
    for (const auto & e : run.equalities) {
        auto j = to_json(e);
        j["text"] = render_equality(e, domain);
        equalities.push_back(std::move(j));
    }
    return {{"domain", to_string(domain)}, {"conjectures", conjectures}, {"equalities", equalities}};
}

inline std::vector<LinearConjecture> conjectures_from_json(const Json & j)
{
    std::vector<LinearConjecture> out;
    for (const auto & c : j.at("conjectures"))
        out.push_back(conjecture_from_json(c));
    return out;
}

inline Json table_to_json(const KnowledgeTable & t)
{
    Json rows = Json::array();
    for (const auto & row : t.rows()) {
        Json r = {{"name", row.id}};
        for (std::size_t c = 0; c < t.numeric_columns().size(); ++c)
            r[t.numeric_columns()[c]] = row.numeric[c].str();
        for (std::size_t c = 0; c < t.boolean_columns().size(); ++c)
            r[t.boolean_columns()[c]] = static_cast<bool>(row.boolean[c]);
        rows.push_back(std::move(r));
    }
    return {{"domain", to_string(t.domain())}, {"numeric_columns", t.numeric_columns()},
        {"boolean_columns", t.boolean_columns()}, {"rows", rows}};
}

} // namespace conjecturer
