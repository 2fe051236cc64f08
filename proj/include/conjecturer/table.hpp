#pragma once

#include <conjecturer/graph.hpp>
#include <conjecturer/integers.hpp>
#include <conjecturer/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace conjecturer {

enum class Domain { graph, integer };

inline std::string to_string(Domain d) { return d == Domain::graph ? "graph" : "integer"; }

inline Domain parse_domain(std::string_view text)
{
    if (text == "graph")
        return Domain::graph;
    if (text == "integer")
        return Domain::integer;
    throw std::invalid_argument("unknown domain '" + std::string(text) + "'");
}

/// A raw object a table row was computed from.
using SourceObject = std::variant<Graph, std::int64_t>;

inline std::string source_id(const SourceObject & obj)
{
    if (auto g = std::get_if<Graph>(&obj))
        return g->id();
    return std::to_string(std::get<std::int64_t>(obj));
}

inline Domain source_domain(const SourceObject & obj)
{
    return std::holds_alternative<Graph>(obj) ? Domain::graph : Domain::integer;
}

struct TableRow {
    std::string id;
    std::vector<Rational> numeric;
    std::vector<bool> boolean;

    friend bool operator==(const TableRow &, const TableRow &) = default;
};

/// Error raised while reading a persisted table; carries a 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string & message) :
        std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
    {
    }

    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

/// Objects x numeric invariants x boolean properties. Value-immutable: every
/// operation that adds data returns a new table.
class KnowledgeTable {
public:
    KnowledgeTable(Domain domain, std::vector<std::string> numeric_columns, std::vector<std::string> boolean_columns,
        std::vector<TableRow> rows, std::map<std::string, SourceObject> sources = {}) :
        domain_(domain),
        numeric_columns_(std::move(numeric_columns)),
        boolean_columns_(std::move(boolean_columns)),
        rows_(std::move(rows)),
        sources_(std::move(sources))
    {
        std::set<std::string> names;
        for (const auto & c : numeric_columns_)
            if (! names.insert(c).second)
                throw std::invalid_argument("duplicate column " + c);
        for (const auto & c : boolean_columns_)
            if (! names.insert(c).second)
                throw std::invalid_argument("duplicate column " + c);
        std::set<std::string> ids;
        for (const auto & row : rows_) {
            if (! ids.insert(row.id).second)
                throw std::invalid_argument("duplicate id " + row.id);
            if (row.numeric.size() != numeric_columns_.size() || row.boolean.size() != boolean_columns_.size())
                throw std::invalid_argument("row " + row.id + " does not define every column");
        }
    }

    [[nodiscard]] Domain domain() const { return domain_; }
    [[nodiscard]] const std::vector<std::string> & numeric_columns() const { return numeric_columns_; }
    [[nodiscard]] const std::vector<std::string> & boolean_columns() const { return boolean_columns_; }
    [[nodiscard]] const std::vector<TableRow> & rows() const { return rows_; }
    [[nodiscard]] std::size_t row_count() const { return rows_.size(); }
    [[nodiscard]] const TableRow & row(std::size_t i) const { return rows_.at(i); }
    [[nodiscard]] const std::map<std::string, SourceObject> & sources() const { return sources_; }

    [[nodiscard]] std::optional<std::size_t> numeric_index(std::string_view name) const
    {
        return index_of(numeric_columns_, name);
    }

    [[nodiscard]] std::optional<std::size_t> boolean_index(std::string_view name) const
    {
        return index_of(boolean_columns_, name);
    }

    std::size_t require_numeric(std::string_view name) const
    {
        auto i = numeric_index(name);
        if (! i)
            throw std::invalid_argument("unknown invariant " + std::string(name));
        return *i;
    }

    std::size_t require_boolean(std::string_view name) const
    {
        auto i = boolean_index(name);
        if (! i)
            throw std::invalid_argument("unknown property " + std::string(name));
        return *i;
    }

    [[nodiscard]] std::optional<std::size_t> find_row(std::string_view id) const
    {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i].id == id)
                return i;
        return std::nullopt;
    }

    [[nodiscard]] const Rational & value(std::size_t row, std::string_view column) const
    {
        return rows_.at(row).numeric[require_numeric(column)];
    }

    [[nodiscard]] bool flag(std::size_t row, std::string_view column) const
    {
        return rows_.at(row).boolean[require_boolean(column)];
    }

    /// Rows with the given ids, in table order.
    [[nodiscard]] KnowledgeTable subtable(const std::vector<std::string> & ids) const
    {
        std::set<std::string> wanted(ids.begin(), ids.end());
        for (const auto & id : wanted)
            if (! find_row(id))
                throw std::invalid_argument("unknown object id " + id);
        std::vector<TableRow> rows;
        std::map<std::string, SourceObject> sources;
        for (const auto & row : rows_)
            if (wanted.count(row.id)) {
                rows.push_back(row);
                if (auto it = sources_.find(row.id); it != sources_.end())
                    sources.emplace(row.id, it->second);
            }
        return KnowledgeTable(domain_, numeric_columns_, boolean_columns_, std::move(rows), std::move(sources));
    }

    /// Content equality; retained source objects are not compared.
    friend bool operator==(const KnowledgeTable & a, const KnowledgeTable & b)
    {
        return a.domain_ == b.domain_ && a.numeric_columns_ == b.numeric_columns_
            && a.boolean_columns_ == b.boolean_columns_ && a.rows_ == b.rows_;
    }

private:
    static std::optional<std::size_t> index_of(const std::vector<std::string> & list, std::string_view name)
    {
        auto it = std::find(list.begin(), list.end(), name);
        if (it == list.end())
            return std::nullopt;
        return static_cast<std::size_t>(it - list.begin());
    }

    Domain domain_;
    std::vector<std::string> numeric_columns_;
    std::vector<std::string> boolean_columns_;
    std::vector<TableRow> rows_;
    std::map<std::string, SourceObject> sources_;
};

// Rows from raw objects ------------------------------------------------------

inline TableRow graph_row(const Graph & g)
{
    InvariantVector iv;
    try {
        iv = compute_invariant_vector(g);
    }
    catch (const std::exception & e) {
        throw std::invalid_argument("invariant computation failed for graph " + g.id() + ": " + e.what());
    }
    TableRow row{g.id(), {}, {}};
    for (const auto & c : graph_numeric_columns())
        row.numeric.push_back(iv.values.at(c));
    for (const auto & c : graph_boolean_columns())
        row.boolean.push_back(iv.flags.at(c));
    return row;
}

inline TableRow integer_row(const IntegerRecord & r)
{
    return TableRow{std::to_string(r.value),
        {Rational(r.value), Rational(r.sum_of_digits), Rational(r.num_divisors), r.sod_over_divisors,
            Rational(r.sod_squared)},
        {r.prime, r.even, r.palindrome, r.digit_power_sum, r.goldbach, r.fibonacci, r.sod_is_fibonacci,
            r.factorial_digit_sum_prime, r.sum_of_digits_prime, r.harshad, r.circular_prime, r.all_prime_digits}};
}

inline KnowledgeTable build_graph_table(const std::vector<Graph> & graphs)
{
    if (graphs.empty())
        throw std::invalid_argument("no graphs given");
    std::vector<TableRow> rows;
    std::map<std::string, SourceObject> sources;
    for (const auto & g : graphs) {
        if (sources.count(g.id()))
            throw std::invalid_argument("duplicate id " + g.id());
        rows.push_back(graph_row(g));
        sources.emplace(g.id(), g);
    }
    return KnowledgeTable(
        Domain::graph, graph_numeric_columns(), graph_boolean_columns(), std::move(rows), std::move(sources));
}

inline KnowledgeTable build_integer_table(const std::vector<IntegerRecord> & records)
{
    std::vector<TableRow> rows;
    std::map<std::string, SourceObject> sources;
    for (const auto & r : records) {
        rows.push_back(integer_row(r));
        sources.emplace(rows.back().id, r.value);
    }
    return KnowledgeTable(
        Domain::integer, integer_numeric_columns(), integer_boolean_columns(), std::move(rows), std::move(sources));
}

inline KnowledgeTable build_integer_table(std::int64_t lo, std::int64_t hi)
{
    return build_integer_table(build_integer_dataset(lo, hi));
}

/// Computes the row for a new object and returns the extended table.
inline KnowledgeTable append_object(const KnowledgeTable & t, const SourceObject & obj)
{
    if (source_domain(obj) != t.domain())
        throw std::invalid_argument("domain mismatch: cannot add a " + to_string(source_domain(obj)) + " object to a "
            + to_string(t.domain()) + " table");
    auto id = source_id(obj);
    if (t.find_row(id))
        throw std::invalid_argument("duplicate id " + id);

    TableRow computed = std::holds_alternative<Graph>(obj) ? graph_row(std::get<Graph>(obj))
                                                           : integer_row(compute_integer_record(std::get<std::int64_t>(obj)));
    // Loaded tables may carry a column subset or order of their own.
    const auto & full_numeric
        = t.domain() == Domain::graph ? graph_numeric_columns() : integer_numeric_columns();
    const auto & full_boolean
        = t.domain() == Domain::graph ? graph_boolean_columns() : integer_boolean_columns();
    TableRow row{id, {}, {}};
    for (const auto & c : t.numeric_columns()) {
        auto it = std::find(full_numeric.begin(), full_numeric.end(), c);
        if (it == full_numeric.end())
            throw std::invalid_argument("cannot compute column " + c + " for a new object");
        row.numeric.push_back(computed.numeric[static_cast<std::size_t>(it - full_numeric.begin())]);
    }
    for (const auto & c : t.boolean_columns()) {
        auto it = std::find(full_boolean.begin(), full_boolean.end(), c);
        if (it == full_boolean.end())
            throw std::invalid_argument("cannot compute column " + c + " for a new object");
        row.boolean.push_back(computed.boolean[static_cast<std::size_t>(it - full_boolean.begin())]);
    }

    auto rows = t.rows();
    rows.push_back(std::move(row));
    auto sources = t.sources();
    sources.emplace(id, obj);
    return KnowledgeTable(t.domain(), t.numeric_columns(), t.boolean_columns(), std::move(rows), std::move(sources));
}

// Hypotheses -----------------------------------------------------------------

/// Conjunction of boolean columns, kept in table column order.
struct Hypothesis {
    std::vector<std::string> conjuncts;

    friend bool operator==(const Hypothesis &, const Hypothesis &) = default;
};

/// Validates the names against the table and orders them by column.
inline Hypothesis make_hypothesis(const KnowledgeTable & t, const std::vector<std::string> & names)
{
    if (names.empty())
        throw std::invalid_argument("a hypothesis needs at least one property");
    std::set<std::size_t> indices;
    for (const auto & name : names)
        indices.insert(t.require_boolean(name));
    Hypothesis h;
    for (auto i : indices)
        h.conjuncts.push_back(t.boolean_columns()[i]);
    return h;
}

inline std::vector<std::size_t> select_rows(const KnowledgeTable & t, const Hypothesis & h)
{
    std::vector<std::size_t> columns;
    for (const auto & name : h.conjuncts)
        columns.push_back(t.require_boolean(name));
    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < t.row_count(); ++i) {
        const auto & row = t.row(i);
        if (std::all_of(columns.begin(), columns.end(), [&](std::size_t c) { return row.boolean[c]; }))
            selected.push_back(i);
    }
    return selected;
}

inline std::vector<Hypothesis> default_hypotheses(const KnowledgeTable & t)
{
    std::vector<Hypothesis> out;
    if (t.domain() == Domain::graph) {
        for (const auto & names : std::vector<std::vector<std::string>>{
                 {"connected"}, {"tree"}, {"connected", "regular"}, {"connected", "bipartite"}})
            out.push_back(make_hypothesis(t, names));
    }
    else {
        for (const auto & name : t.boolean_columns())
            out.push_back(Hypothesis{{name}});
    }
    return out;
}

// CSV persistence ------------------------------------------------------------

namespace detail {
    inline std::vector<std::string> split_csv_line(const std::string & line)
    {
        std::vector<std::string> cells;
        std::string cell;
        for (char c : line) {
            if (c == ',') {
                cells.push_back(cell);
                cell.clear();
            }
            else if (c != '\r')
                cell.push_back(c);
        }
        cells.push_back(cell);
        return cells;
    }
} // namespace detail

/// Header "name,<numeric...>,<boolean...>"; rationals as "p/q" or "p",
/// booleans as True/False.
inline void write_csv(const KnowledgeTable & t, std::ostream & out)
{
    out << "name";
    for (const auto & c : t.numeric_columns())
        out << ',' << c;
    for (const auto & c : t.boolean_columns())
        out << ',' << c;
    out << '\n';
    for (const auto & row : t.rows()) {
        if (row.id.find_first_of(",\r\n") != std::string::npos)
            throw std::invalid_argument("id '" + row.id + "' cannot be written as a CSV cell");
        out << row.id;
        for (const auto & v : row.numeric)
            out << ',' << v.str();
        for (bool b : row.boolean)
            out << ',' << (b ? "True" : "False");
        out << '\n';
    }
}

inline std::string to_csv(const KnowledgeTable & t)
{
    std::ostringstream out;
    write_csv(t, out);
    return out.str();
}

/// Boolean columns are those whose cells are all True/False. The domain is
/// integer when the header names exactly the integer columns, graph otherwise.
inline KnowledgeTable read_csv(std::istream & in)
{
    std::string line;
    int line_number = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_number;
        if (! line.empty() && line != "\r") {
            header = detail::split_csv_line(line);
            break;
        }
    }
    if (header.empty())
        throw ParseError(line_number, "missing header row");
    if (header[0] != "name")
        throw ParseError(line_number, "first column must be 'name'");
    std::vector<std::string> columns(header.begin() + 1, header.end());

    std::vector<std::pair<int, std::vector<std::string>>> raw;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line == "\r")
            continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw ParseError(line_number,
                "expected " + std::to_string(header.size()) + " cells, found " + std::to_string(cells.size()));
        raw.emplace_back(line_number, std::move(cells));
    }

    std::vector<std::string> all_integer = integer_numeric_columns();
    all_integer.insert(all_integer.end(), integer_boolean_columns().begin(), integer_boolean_columns().end());
    Domain domain = columns == all_integer ? Domain::integer : Domain::graph;
    const auto & known_boolean = domain == Domain::graph ? graph_boolean_columns() : integer_boolean_columns();

    std::vector<bool> is_boolean(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (raw.empty())
            is_boolean[c]
                = std::find(known_boolean.begin(), known_boolean.end(), columns[c]) != known_boolean.end();
        else
            is_boolean[c] = std::all_of(raw.begin(), raw.end(), [&](const auto & r) {
                return r.second[c + 1] == "True" || r.second[c + 1] == "False";
            });
    }

    std::vector<std::string> numeric_columns, boolean_columns;
    for (std::size_t c = 0; c < columns.size(); ++c)
        (is_boolean[c] ? boolean_columns : numeric_columns).push_back(columns[c]);

    std::vector<TableRow> rows;
    std::set<std::string> ids;
    for (const auto & [number, cells] : raw) {
        TableRow row{cells[0], {}, {}};
        if (row.id.empty())
            throw ParseError(number, "empty name");
        if (! ids.insert(row.id).second)
            throw ParseError(number, "duplicate id " + row.id);
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto & cell = cells[c + 1];
            if (is_boolean[c])
                row.boolean.push_back(cell == "True");
            else {
                try {
                    row.numeric.push_back(Rational::parse(cell));
                }
                catch (const std::exception & e) {
                    throw ParseError(number, "column " + columns[c] + ": " + e.what());
                }
            }
        }
        rows.push_back(std::move(row));
    }
    return KnowledgeTable(domain, std::move(numeric_columns), std::move(boolean_columns), std::move(rows));
}

inline void save_table(const KnowledgeTable & t, const std::filesystem::path & path)
{
    std::ofstream out(path, std::ios::binary);
    if (! out)
        throw std::runtime_error("cannot write " + path.string());
    write_csv(t, out);
    if (! out)
        throw std::runtime_error("failed writing " + path.string());
}

inline KnowledgeTable load_table(const std::filesystem::path & path)
{
    if (path.empty())
        throw std::invalid_argument("empty table path");
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw std::runtime_error("cannot read " + path.string());
    return read_csv(in);
}

} // namespace conjecturer
