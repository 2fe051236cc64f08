#pragma once

#include <conjecturer/appendix.hpp>
#include <conjecturer/conjecture.hpp>
#include <conjecturer/datasets.hpp>
#include <conjecturer/json_io.hpp>
#include <conjecturer/refinement.hpp>
#include <conjecturer/render.hpp>
#include <conjecturer/service.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace conjecturer {

enum ExitCode { exit_ok = 0, exit_user_error = 2, exit_internal = 3 };

namespace cli_detail {

    inline std::vector<std::string> split_list(const std::string & text, char separator)
    {
        std::vector<std::string> out;
        std::string item;
        std::istringstream in(text);
        while (std::getline(in, item, separator)) {
            auto trimmed = std::string(detail::trim(item));
            if (! trimmed.empty())
                out.push_back(trimmed);
        }
        return out;
    }

    /// "connected,connected+bipartite" -> two hypotheses.
    inline std::vector<Hypothesis> parse_hypotheses(const KnowledgeTable & t, const std::string & text)
    {
        std::vector<Hypothesis> out;
        for (const auto & group : split_list(text, ','))
            out.push_back(make_hypothesis(t, split_list(group, '+')));
        return out;
    }

    /// "target:upper|lower:invariant"
    inline BlockedFamily parse_block(const std::string & text)
    {
        auto parts = split_list(text, ':');
        if (parts.size() != 3)
            throw std::invalid_argument("blocked family must look like target:upper:invariant");
        if (parts[1] != "upper" && parts[1] != "lower")
            throw std::invalid_argument("blocked family direction must be upper or lower");
        return {parts[0], parts[1] == "upper" ? Direction::upper : Direction::lower, parts[2]};
    }

    inline std::vector<KnownPattern> read_known_file(const std::string & path)
    {
        std::ifstream in(path);
        if (! in)
            throw std::invalid_argument("cannot read known-theorem file " + path);
        Json j;
        try {
            j = Json::parse(in);
        }
        catch (const Json::parse_error & e) {
            throw std::invalid_argument(path + ": " + e.what());
        }
        std::vector<KnownPattern> out;
        for (const auto & item : j.is_array() ? j : Json::array({j}))
            out.push_back(item.is_string() ? parse_conjecture_form(item.get<std::string>()) : pattern_from_json(item));
        return out;
    }

    struct KnownArgs {
        std::string file;
        std::vector<std::string> add;
        std::vector<std::size_t> remove;
    };

    /// Lists, extends or trims a known-theorem file in place. New entries are
    /// stored as text; an entry whose pattern is already present is skipped.
    inline int manage_known(const KnownArgs & a, std::ostream & out)
    {
        Json items = Json::array();
        if (std::filesystem::exists(a.file)) {
            std::ifstream in(a.file);
            try {
                items = Json::parse(in);
            }
            catch (const Json::parse_error & e) {
                throw std::invalid_argument(a.file + ": " + e.what());
            }
            if (! items.is_array())
                throw std::invalid_argument(a.file + ": expected a JSON array");
        }
        auto pattern_of = [](const Json & item) {
            return item.is_string() ? parse_conjecture_form(item.get<std::string>()) : pattern_from_json(item);
        };

        std::vector<std::size_t> drop = a.remove;
        std::sort(drop.rbegin(), drop.rend());
        drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
        for (auto k : drop) {
            if (k < 1 || k > items.size())
                throw std::invalid_argument("no known theorem " + std::to_string(k) + "; the file has "
                    + std::to_string(items.size()));
            items.erase(k - 1);
        }
        for (const auto & text : a.add) {
            auto p = parse_conjecture_form(text);
            if (p.hypothesis.conjuncts.empty())
                throw std::invalid_argument("a known theorem needs at least one property");
            bool present = std::any_of(items.begin(), items.end(), [&](const Json & item) { return pattern_of(item) == p; });
            if (! present)
                items.push_back(text);
        }
        if (! a.add.empty() || ! a.remove.empty()) {
            std::ofstream file(a.file);
            file << items.dump(2) << '\n';
            if (! file)
                throw std::invalid_argument("cannot write " + a.file);
        }
        for (std::size_t i = 0; i < items.size(); ++i) {
            auto p = pattern_of(items[i]);
            out << i + 1 << ". "
                << (items[i].is_string() ? items[i].get<std::string>()
                                         : render_inequality(p.hypothesis, p.target, p.direction, p.rhs, Domain::graph))
                << '\n';
        }
        return exit_ok;
    }

    struct ConjectureArgs {
        std::string dataset;
        std::string targets;
        std::string hypotheses;
        std::string invariants;
        bool no_dalmatian = false;
        std::optional<std::size_t> limit;
        std::string format = "text";
        std::string direction = "both";
        bool equalities = false;
        std::vector<std::string> known_files;
        bool seed_known = false;
        std::vector<std::string> blocks;
    };

    inline ConjectureRun run_conjecture(const ConjectureArgs & a)
    {
        auto table = std::make_shared<const KnowledgeTable>(resolve_dataset(a.dataset));
        RunOptions o;
        o.targets = split_list(a.targets, ',');
        if (o.targets.empty())
            throw std::invalid_argument("--targets needs at least one invariant");
        o.invariants = split_list(a.invariants, ',');
        for (const auto & name : o.invariants)
            table->require_numeric(name);
        o.hypotheses = parse_hypotheses(*table, a.hypotheses);
        o.use_dalmatian = ! a.no_dalmatian;
        o.limit = a.limit;
        o.upper = a.direction != "lower";
        o.lower = a.direction != "upper";
        auto run = write_on_the_wall(table, o);

        std::vector<KnownPattern> known;
        if (a.seed_known)
            known = seed_known_patterns();
        for (const auto & path : a.known_files) {
            auto more = read_known_file(path);
            known.insert(known.end(), more.begin(), more.end());
        }
        if (! known.empty())
            run = filter_known(run, known);
        std::vector<BlockedFamily> blocked;
        for (const auto & b : a.blocks)
            blocked.push_back(parse_block(b));
        if (! blocked.empty())
            run = filter_blocked_families(run, blocked);
        return run;
    }

    inline void print_run(const ConjectureRun & run, const ConjectureArgs & a, std::ostream & out)
    {
        auto domain = run.table->domain();
        if (a.format == "json") {
            out << run_to_json(run).dump(2) << '\n';
            return;
        }
        out << render_conjectures(run.conjectures, domain);
        if (a.equalities)
            for (const auto & e : run.equalities)
                out << "Equality. " << render_equality(e, domain) << ".\n";
    }

    struct RefuteArgs {
        std::string dataset;
        std::string form;
        std::string targets = "independence_number,matching_number";
        int max_n = max_enumerated_order;
        std::int64_t max_value = 10000;
        std::vector<std::string> graph6_files;
        std::string out_path;
    };

    inline LinearConjecture resolve_form(const KnowledgeTable & t, const RefuteArgs & a)
    {
        bool is_index = ! a.form.empty() && std::all_of(a.form.begin(), a.form.end(), [](unsigned char ch) { return std::isdigit(ch); });
        if (! is_index)
            return bind_pattern(t, parse_conjecture_form(a.form));
        RunOptions o;
        o.targets = split_list(a.targets, ',');
        auto run = write_on_the_wall(t, o);
        auto k = std::stoul(a.form);
        if (k < 1 || k > run.conjectures.size())
            throw std::invalid_argument("conjecture " + a.form + " does not exist; the run has "
                + std::to_string(run.conjectures.size()));
        return run.conjectures[k - 1];
    }

    inline int refute(const RefuteArgs & a, std::ostream & out)
    {
        auto table = resolve_dataset(a.dataset);
        auto c = resolve_form(table, a);
        const auto domain = table.domain();
        out << "refuting: " << render_inequality(c.hypothesis, c.target, c.direction, c.rhs, domain) << '\n';

        RedBurtonOutcome outcome{table, std::nullopt};
        std::string searched;
        if (domain == Domain::graph) {
            auto candidates = enumerate_connected_graphs(a.max_n);
            for (const auto & path : a.graph6_files) {
                auto more = ingest_graph6(path);
                candidates.insert(candidates.end(), more.begin(), more.end());
            }
            std::stable_sort(candidates.begin(), candidates.end(), [](const Graph & x, const Graph & y) {
                return std::pair(x.order(), x.size()) < std::pair(y.order(), y.size());
            });
            outcome = red_burton(table, c, candidates);
            searched = "n=" + std::to_string(a.graph6_files.empty() ? a.max_n : candidates.back().order());
        }
        else {
            if (a.max_value < 1 || a.max_value > max_integer_value)
                throw std::invalid_argument("--max-value out of range");
            std::vector<std::int64_t> candidates(static_cast<std::size_t>(a.max_value));
            std::iota(candidates.begin(), candidates.end(), std::int64_t{1});
            outcome = red_burton(table, c, candidates);
            searched = std::to_string(a.max_value);
        }

        if (! outcome.report) {
            out << "none found up to " << searched << '\n';
            return exit_ok;
        }
        const auto & r = *outcome.report;
        out << "witness " << r.witness_id;
        if (std::holds_alternative<Graph>(r.witness))
            out << " (order " << r.order << ")";
        out << ": " << c.target << " = " << r.lhs.str()
            << ", bound = " << r.rhs.str() << '\n';
        if (auto g = std::get_if<Graph>(&r.witness))
            out << "graph6 " << encode_graph6(*g) << '\n' << to_edge_list(*g);
        if (! a.out_path.empty()) {
            save_table(outcome.table, a.out_path);
            out << "updated dataset: " << a.out_path << '\n';
        }
        else
            out << "dataset not saved; pass --out to write the augmented table\n";
        return exit_ok;
    }

} // namespace cli_detail

/// Entry point shared by the executable and the tests.
inline int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    using namespace cli_detail;
    CLI::App app{"Conjecture generator over tables of mathematical objects", "conjecturer"};
    app.require_subcommand(1);

    ConjectureArgs conj;
    auto * conjecture = app.add_subcommand("conjecture", "Generate, rank and print conjectures");
    conjecture->add_option("--dataset", conj.dataset, "figure1, integers[:lo..hi], or a CSV path")->required();
    conjecture->add_option("--targets", conj.targets, "Comma-separated target invariants")->required();
    conjecture->add_option("--hypotheses", conj.hypotheses, "Comma-separated; conjuncts joined by '+'");
    conjecture->add_option("--invariants", conj.invariants, "Comma-separated right-hand-side invariants");
    conjecture->add_flag("--no-dalmatian", conj.no_dalmatian, "Keep every conjecture");
    conjecture->add_option("--limit", conj.limit, "Keep the first k conjectures")->check(CLI::PositiveNumber);
    conjecture->add_option("--format", conj.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    conjecture->add_option("--direction", conj.direction, "both, upper or lower")
        ->check(CLI::IsMember({"both", "upper", "lower"}));
    conjecture->add_flag("--equalities", conj.equalities, "Also print detected equalities");
    conjecture->add_option("--known", conj.known_files, "JSON file of known theorems to filter out");
    conjecture->add_flag("--seed-known", conj.seed_known, "Filter out the built-in known theorems");
    conjecture->add_option("--block", conj.blocks, "Blocked family target:upper|lower:invariant");

    std::string table_dataset;
    auto * table = app.add_subcommand("table", "Print a dataset as CSV");
    table->add_option("--dataset", table_dataset, "figure1, integers[:lo..hi], or a CSV path")->required();

    RefuteArgs ref;
    auto * refute_cmd = app.add_subcommand("refute", "Search for the smallest counterexample and append it");
    refute_cmd->add_option("--dataset", ref.dataset)->required();
    refute_cmd->add_option("--form", ref.form, "Conjecture text, or its number in the default run")->required();
    refute_cmd->add_option("--targets", ref.targets, "Targets of the run that --form numbers refer to");
    refute_cmd->add_option("--max-n", ref.max_n, "Largest enumerated graph order")->check(CLI::Range(1, 64));
    refute_cmd->add_option("--max-value", ref.max_value, "Largest integer candidate");
    refute_cmd->add_option("--graph6", ref.graph6_files, "Extra candidates from graph6 files");
    refute_cmd->add_option("--out", ref.out_path, "Write the augmented table here as CSV");

    std::string report_dataset = "integers";
    auto * appendix = app.add_subcommand("published", "Evaluate the published integer conjectures");
    appendix->add_option("--dataset", report_dataset, "An integer dataset");

    KnownArgs known_args;
    auto * known_cmd = app.add_subcommand("known", "List or edit a known-theorem file");
    known_cmd->add_option("--file", known_args.file, "JSON array of conjecture forms")->required();
    known_cmd->add_option("--add", known_args.add, "Conjecture form to add");
    known_cmd->add_option("--remove", known_args.remove, "Entry number to remove");

    std::string host = "127.0.0.1";
    int port = 8080;
    std::string data_dir;
    auto * serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    serve_cmd->add_option("--host", host);
    serve_cmd->add_option("--port", port)->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--data-dir", data_dir, "Persistence directory (default: $CONJECTURER_DATA_DIR)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp & e) {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::ParseError & e) {
        err << e.what() << '\n';
        return exit_user_error;
    }

    try {
        if (*conjecture) {
            print_run(run_conjecture(conj), conj, out);
            return exit_ok;
        }
        if (*table) {
            write_csv(resolve_dataset(table_dataset), out);
            return exit_ok;
        }
        if (*refute_cmd)
            return refute(ref, out);
        if (*known_cmd)
            return manage_known(known_args, out);
        if (*appendix) {
            auto t = resolve_dataset(report_dataset);
            if (t.domain() != Domain::integer)
                throw std::invalid_argument("published conjectures need an integer dataset");
            out << format_published_report(evaluate_published(t));
            return exit_ok;
        }
        if (*serve_cmd) {
            std::optional<std::filesystem::path> dir;
            if (! data_dir.empty())
                dir = data_dir;
            else
                dir = data_dir_from_env();
            return serve(host, port, dir, err) ? exit_ok : exit_user_error;
        }
    }
    catch (const DatasetNotFound & e) {
        err << e.what() << '\n';
        return exit_user_error;
    }
    catch (const InvariantViolation & e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    catch (const std::overflow_error & e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    catch (const std::exception & e) {
        err << "error: " << e.what() << '\n';
        return exit_user_error;
    }
    return exit_user_error;
}

inline int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
    return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

} // namespace conjecturer
