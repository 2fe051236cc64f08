#pragma once

#include <conjecturer/conjecture.hpp>
#include <conjecturer/datasets.hpp>
#include <conjecturer/json_io.hpp>
#include <conjecturer/refinement.hpp>
#include <conjecturer/render.hpp>
#include <conjecturer/table.hpp>

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

namespace conjecturer {

/// Error with an HTTP status and a machine-readable code.
class ApiError : public std::runtime_error {
public:
    ApiError(int status, std::string code, const std::string & message, Json extra = Json::object()) :
        std::runtime_error(message), status_(status), code_(std::move(code)), extra_(std::move(extra))
    {
    }

    [[nodiscard]] int status() const { return status_; }
    [[nodiscard]] const std::string & code() const { return code_; }

    [[nodiscard]] Json body() const
    {
        Json j = extra_;
        j["code"] = code_;
        j["message"] = what();
        return j;
    }

private:
    int status_;
    std::string code_;
    Json extra_;
};

/// Datasets (with every version), runs and known theorems. Tables are
/// immutable snapshots shared with runs; appends are serialized per dataset.
/// With a data directory every mutation is also written to disk:
///   datasets/<id>/v<k>.csv, runs/<run id>.json, known_theorems.json
class Store {
public:
    explicit Store(std::optional<std::filesystem::path> dir = std::nullopt) : dir_(std::move(dir))
    {
        if (dir_)
            load();
    }

    struct Handle {
        std::string id;
        Domain domain = Domain::graph;
        std::size_t version = 0;
        std::size_t rows = 0;
    };

    static Json to_json(const Handle & h)
    {
        return {{"id", h.id}, {"domain", to_string(h.domain)}, {"version", h.version}, {"rows", h.rows}};
    }

    Handle create_dataset(std::optional<std::string> id, KnowledgeTable table)
    {
        std::unique_lock lock(mutex_);
        if (! id)
            id = next_free_id("ds-", [&](const std::string & s) { return datasets_.count(s) > 0; });
        else if (id->empty() || id->find_first_of("/\\.") != std::string::npos)
            throw ApiError(422, "invalid_request", "dataset id must be a plain non-empty name");
        if (datasets_.count(*id))
            throw ApiError(409, "conflict", "dataset " + *id + " already exists");
        auto entry = std::make_shared<Dataset>();
        entry->id = *id;
        entry->versions.push_back(std::make_shared<const KnowledgeTable>(std::move(table)));
        persist_version(*entry, 1);
        datasets_[*id] = entry;
        return handle(*entry);
    }

    std::vector<Handle> list_datasets() const
    {
        std::shared_lock lock(mutex_);
        std::vector<Handle> out;
        for (const auto & [id, entry] : datasets_) {
            std::lock_guard guard(entry->append_mutex);
            out.push_back(handle(*entry));
        }
        return out;
    }

    Handle dataset_handle(const std::string & id) const
    {
        auto entry = find(id);
        std::lock_guard guard(entry->append_mutex);
        return handle(*entry);
    }

    /// The table at `version` (1-based), or the latest.
    std::pair<std::shared_ptr<const KnowledgeTable>, std::size_t> snapshot(
        const std::string & id, std::optional<std::size_t> version = std::nullopt) const
    {
        auto entry = find(id);
        std::lock_guard guard(entry->append_mutex);
        auto v = version.value_or(entry->versions.size());
        if (v < 1 || v > entry->versions.size())
            throw ApiError(404, "not_found", "dataset " + id + " has no version " + std::to_string(v));
        return {entry->versions[v - 1], v};
    }

    /// Appends one object to the latest version. `check` runs under the
    /// dataset's append lock against the table being extended; it may throw
    /// to reject the object. Graphs are renamed "ce-<k>" first.
    template <typename Check>
    std::pair<Handle, std::shared_ptr<const KnowledgeTable>> append(
        const std::string & id, SourceObject object, Check && check)
    {
        auto entry = find(id);
        std::lock_guard guard(entry->append_mutex);
        const auto & latest = *entry->versions.back();
        if (auto g = std::get_if<Graph>(&object))
            object = g->with_id(next_witness_id(latest));
        check(latest, object);
        KnowledgeTable next = [&] {
            try {
                return append_object(latest, object);
            }
            catch (const std::invalid_argument & e) {
                throw ApiError(409, "conflict", e.what());
            }
        }();
        entry->versions.push_back(std::make_shared<const KnowledgeTable>(std::move(next)));
        persist_version(*entry, entry->versions.size());
        return {handle(*entry), entry->versions.back()};
    }

    std::string store_run(Json run)
    {
        std::unique_lock lock(mutex_);
        auto id = next_free_id("run-", [&](const std::string & s) { return runs_.count(s) > 0; });
        run["run_id"] = id;
        if (dir_)
            write_json(*dir_ / "runs" / (id + ".json"), run);
        runs_[id] = std::move(run);
        return id;
    }

    Json run(const std::string & id) const
    {
        std::shared_lock lock(mutex_);
        auto it = runs_.find(id);
        if (it == runs_.end())
            throw ApiError(404, "not_found", "unknown run " + id);
        return it->second;
    }

    struct KnownEntry {
        std::string id;
        KnownPattern pattern;
    };

    static Json to_json(const KnownEntry & k)
    {
        auto j = conjecturer::to_json(k.pattern);
        j["id"] = k.id;
        return j;
    }

    /// Idempotent: an equal pattern returns the existing entry.
    std::pair<KnownEntry, bool> add_known(KnownPattern p)
    {
        std::unique_lock lock(mutex_);
        for (const auto & k : known_)
            if (k.pattern == p)
                return {k, false};
        auto id = next_free_id("kt-", [&](const std::string & s) {
            return std::any_of(known_.begin(), known_.end(), [&](const KnownEntry & k) { return k.id == s; });
        });
        known_.push_back({id, std::move(p)});
        persist_known();
        return {known_.back(), true};
    }

    bool remove_known(const std::string & id)
    {
        std::unique_lock lock(mutex_);
        auto it = std::find_if(known_.begin(), known_.end(), [&](const KnownEntry & k) { return k.id == id; });
        if (it == known_.end())
            return false;
        known_.erase(it);
        persist_known();
        return true;
    }

    std::vector<KnownEntry> known() const
    {
        std::shared_lock lock(mutex_);
        return known_;
    }

private:
    struct Dataset {
        std::string id;
        std::vector<std::shared_ptr<const KnowledgeTable>> versions;
        mutable std::mutex append_mutex;
    };

    static Handle handle(const Dataset & d)
    {
        return {d.id, d.versions.back()->domain(), d.versions.size(), d.versions.back()->row_count()};
    }

    std::shared_ptr<Dataset> find(const std::string & id) const
    {
        std::shared_lock lock(mutex_);
        auto it = datasets_.find(id);
        if (it == datasets_.end())
            throw ApiError(404, "not_found", "unknown dataset " + id);
        return it->second;
    }

    template <typename Taken>
    static std::string next_free_id(const std::string & prefix, Taken && taken)
    {
        for (std::size_t k = 1;; ++k)
            if (auto id = prefix + std::to_string(k); ! taken(id))
                return id;
    }

    static void write_json(const std::filesystem::path & path, const Json & j)
    {
        std::filesystem::create_directories(path.parent_path());
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            out << j.dump(2) << '\n';
            if (! out)
                throw std::runtime_error("cannot write " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

    void persist_version(const Dataset & d, std::size_t version) const
    {
        if (! dir_)
            return;
        auto folder = *dir_ / "datasets" / d.id;
        std::filesystem::create_directories(folder);
        save_table(*d.versions[version - 1], folder / ("v" + std::to_string(version) + ".csv"));
    }

    void persist_known() const
    {
        if (! dir_)
            return;
        Json list = Json::array();
        for (const auto & k : known_)
            list.push_back(to_json(k));
        write_json(*dir_ / "known_theorems.json", list);
    }

    void load()
    {
        namespace fs = std::filesystem;
        fs::create_directories(*dir_);
        if (fs::is_directory(*dir_ / "datasets"))
            for (const auto & folder : fs::directory_iterator(*dir_ / "datasets")) {
                if (! folder.is_directory())
                    continue;
                auto entry = std::make_shared<Dataset>();
                entry->id = folder.path().filename().string();
                for (std::size_t v = 1;; ++v) {
                    auto file = folder.path() / ("v" + std::to_string(v) + ".csv");
                    if (! fs::is_regular_file(file))
                        break;
                    entry->versions.push_back(std::make_shared<const KnowledgeTable>(load_table(file)));
                }
                if (! entry->versions.empty())
                    datasets_[entry->id] = entry;
            }
        if (fs::is_directory(*dir_ / "runs"))
            for (const auto & file : fs::directory_iterator(*dir_ / "runs")) {
                if (file.path().extension() != ".json")
                    continue;
                std::ifstream in(file.path());
                auto j = Json::parse(in);
                auto id = j.at("run_id").get<std::string>();
                runs_[id] = std::move(j);
            }
        if (fs::is_regular_file(*dir_ / "known_theorems.json")) {
            std::ifstream in(*dir_ / "known_theorems.json");
            for (const auto & j : Json::parse(in))
                known_.push_back({j.at("id").get<std::string>(), pattern_from_json(j)});
        }
    }

    std::optional<std::filesystem::path> dir_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, std::shared_ptr<Dataset>> datasets_;
    std::map<std::string, Json> runs_;
    std::vector<KnownEntry> known_;
};

namespace detail {

    inline Json parse_body(const httplib::Request & req)
    {
        if (req.body.empty())
            return Json::object();
        try {
            auto j = Json::parse(req.body);
            if (! j.is_object())
                throw ApiError(400, "bad_request", "request body must be a JSON object");
            return j;
        }
        catch (const Json::parse_error & e) {
            throw ApiError(400, "bad_request", std::string("malformed JSON: ") + e.what());
        }
    }

    template <typename T>
    T field(const Json & body, const char * name, T fallback)
    {
        if (! body.contains(name) || body[name].is_null())
            return fallback;
        try {
            return body[name].get<T>();
        }
        catch (const Json::exception &) {
            throw ApiError(422, "invalid_request", std::string("field '") + name + "' has the wrong type");
        }
    }

    inline std::vector<std::string> string_list(const Json & body, const char * name)
    {
        return field<std::vector<std::string>>(body, name, {});
    }

    /// An edge list whose "n <count>" line may be missing: the count then
    /// comes from an "n" field or from the largest endpoint.
    inline Graph edge_list_graph(const std::string & text, const Json & j, const std::string & id)
    {
        std::istringstream lines(text);
        int largest = -1;
        for (std::string line; std::getline(lines, line);) {
            std::istringstream fields(line.substr(0, line.find('#')));
            std::string first;
            if (! (fields >> first))
                continue;
            if (first == "n")
                return parse_edge_list(text, id);
            int u = 0, v = 0;
            std::istringstream pair(line.substr(0, line.find('#')));
            if (pair >> u >> v)
                largest = std::max({largest, u, v});
        }
        int n = j.contains("n") ? j.at("n").get<int>() : largest + 1;
        return parse_edge_list("n " + std::to_string(n) + "\n" + text, id);
    }

    /// {"n": 3, "edges": [[0,1],...]}, {"edge_list": "..."}, {"graph6": "..."}
    /// or {"value": 7}, possibly nested under "graph"/"object".
    inline SourceObject object_from_json(const Json & body, Domain domain)
    {
        const Json & j = body.contains("graph") ? body["graph"] : body.contains("object") ? body["object"] : body;
        auto id = field<std::string>(j, "id", "submitted");
        try {
            if (domain == Domain::integer) {
                if (! j.contains("value"))
                    throw ApiError(422, "invalid_object", "integer datasets take {\"value\": v}");
                auto v = j.at("value").get<std::int64_t>();
                compute_integer_record(v); // validates
                return v;
            }
            if (j.contains("edge_list"))
                return edge_list_graph(j.at("edge_list").get<std::string>(), j, id);
            if (j.contains("graph6"))
                return decode_graph6(j.at("graph6").get<std::string>(), id);
            if (j.contains("n")) {
                std::vector<Edge> edges;
                for (const auto & e : j.value("edges", Json::array())) {
                    if (! e.is_array() || e.size() != 2)
                        throw ApiError(422, "invalid_object", "each edge must be a pair [u, v]");
                    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
                }
                return Graph(id, j.at("n").get<int>(), std::move(edges));
            }
        }
        catch (const ApiError &) {
            throw;
        }
        catch (const std::exception & e) {
            throw ApiError(422, "invalid_object", e.what());
        }
        throw ApiError(422, "invalid_object", "graph datasets take edge_list, graph6, or {n, edges}");
    }

    inline RunOptions run_options(const Json & body, const KnowledgeTable & t)
    {
        RunOptions o;
        o.targets = string_list(body, "targets");
        o.invariants = string_list(body, "invariants");
        for (const auto & names : field<std::vector<std::vector<std::string>>>(body, "hypotheses", {}))
            o.hypotheses.push_back(make_hypothesis(t, names));
        o.use_dalmatian = field<bool>(body, "use_dalmatian", true);
        if (body.contains("limit") && ! body["limit"].is_null()) {
            auto k = field<long long>(body, "limit", 0);
            if (k < 1)
                throw ApiError(422, "invalid_request", "limit must be at least 1");
            o.limit = static_cast<std::size_t>(k);
        }
        auto direction = field<std::string>(body, "direction", "both");
        if (direction != "both" && direction != "upper" && direction != "lower")
            throw ApiError(422, "invalid_request", "direction must be both, upper or lower");
        o.upper = direction != "lower";
        o.lower = direction != "upper";
        if (o.targets.empty())
            throw ApiError(422, "invalid_request", "at least one target is required");
        for (const auto & name : o.targets)
            t.require_numeric(name);
        for (const auto & name : o.invariants)
            t.require_numeric(name);
        return o;
    }

} // namespace detail

/// HTTP front end over a Store.
class Service {
public:
    explicit Service(std::optional<std::filesystem::path> data_dir = std::nullopt) : store_(std::move(data_dir)) {}

    Store & store() { return store_; }

    void install(httplib::Server & server)
    {
        using httplib::Request;
        using httplib::Response;

        server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
            {"Access-Control-Allow-Headers", "Content-Type"},
            {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"}});
        server.Options(R"(.*)", [](const Request &, Response & res) { res.status = 204; });

        route(server, "POST", "/datasets", [this](const Request & req) { return create_dataset(req); });
        route(server, "GET", "/datasets", [this](const Request &) {
            Json list = Json::array();
            for (const auto & h : store_.list_datasets())
                list.push_back(Store::to_json(h));
            return Reply{200, list};
        });
        route(server, "GET", R"(/datasets/([^/]+))",
            [this](const Request & req) { return Reply{200, Store::to_json(store_.dataset_handle(req.matches[1]))}; });
        route(server, "GET", R"(/datasets/([^/]+)/table)", [this](const Request & req) { return get_table(req); });
        route(server, "POST", R"(/datasets/([^/]+)/runs)", [this](const Request & req) { return create_run(req); });
        route(server, "GET", R"(/runs/([^/]+))", [this](const Request & req) { return Reply{200, store_.run(req.matches[1])}; });
        route(server, "POST", R"(/datasets/([^/]+)/counterexamples)",
            [this](const Request & req) { return submit_counterexample(req); });
        route(server, "GET", "/known-theorems", [this](const Request &) {
            Json list = Json::array();
            for (const auto & k : store_.known())
                list.push_back(Store::to_json(k));
            return Reply{200, list};
        });
        route(server, "POST", "/known-theorems", [this](const Request & req) { return add_known(req); });
        route(server, "DELETE", R"(/known-theorems/([^/]+))", [this](const Request & req) {
            if (! store_.remove_known(req.matches[1]))
                throw ApiError(404, "not_found", "unknown known theorem " + std::string(req.matches[1]));
            return Reply{200, Json{{"deleted", std::string(req.matches[1])}}};
        });
    }

private:
    struct Reply {
        int status = 200;
        Json body;
    };

    template <typename Handler>
    static void route(httplib::Server & server, const std::string & method, const std::string & pattern, Handler handler)
    {
        auto wrapped = [handler](const httplib::Request & req, httplib::Response & res) {
            Reply reply;
            try {
                reply = handler(req);
            }
            catch (const ApiError & e) {
                reply = {e.status(), e.body()};
            }
            catch (const InvariantViolation & e) {
                reply = {500, Json{{"code", "internal"}, {"message", e.what()}}};
            }
            catch (const std::invalid_argument & e) {
                reply = {422, Json{{"code", "invalid_request"}, {"message", e.what()}}};
            }
            catch (const std::exception & e) {
                reply = {500, Json{{"code", "internal"}, {"message", e.what()}}};
            }
            res.status = reply.status;
            res.set_content(reply.body.dump(), "application/json");
        };
        if (method == "GET")
            server.Get(pattern, wrapped);
        else if (method == "POST")
            server.Post(pattern, wrapped);
        else
            server.Delete(pattern, wrapped);
    }

    Reply create_dataset(const httplib::Request & req)
    {
        auto body = detail::parse_body(req);
        std::optional<std::string> id;
        if (body.contains("id"))
            id = detail::field<std::string>(body, "id", "");

        std::optional<KnowledgeTable> table;
        if (body.contains("builtin")) {
            auto name = detail::field<std::string>(body, "builtin", "");
            try {
                table = builtin_table(name);
            }
            catch (const std::invalid_argument & e) {
                throw ApiError(422, "invalid_request", e.what());
            }
            if (! table)
                throw ApiError(404, "not_found", "dataset not found: " + name);
        }
        else if (body.contains("objects")) {
            auto domain = parse_domain(detail::field<std::string>(body, "domain", "graph"));
            const auto & objects = body["objects"];
            if (! objects.is_array() || objects.empty())
                throw ApiError(422, "invalid_request", "objects must be a non-empty array");
            try {
                if (domain == Domain::integer) {
                    std::vector<IntegerRecord> records;
                    for (const auto & o : objects)
                        records.push_back(compute_integer_record(o.is_object() ? o.at("value").get<std::int64_t>() : o.get<std::int64_t>()));
                    table = build_integer_table(records);
                }
                else {
                    std::vector<Graph> graphs;
                    for (std::size_t i = 0; i < objects.size(); ++i) {
                        Json o = objects[i];
                        if (! o.contains("id"))
                            o["id"] = "G_" + std::to_string(i + 1);
                        graphs.push_back(std::get<Graph>(detail::object_from_json(o, Domain::graph)));
                    }
                    table = build_graph_table(graphs);
                }
            }
            catch (const ApiError &) {
                throw;
            }
            catch (const std::exception & e) {
                throw ApiError(422, "invalid_request", e.what());
            }
        }
        else
            throw ApiError(422, "invalid_request", "body needs 'builtin' or 'objects'");

        if (body.contains("rows")) {
            try {
                table = table->subtable(detail::string_list(body, "rows"));
            }
            catch (const std::invalid_argument & e) {
                throw ApiError(422, "invalid_request", e.what());
            }
        }
        return {201, Store::to_json(store_.create_dataset(id, std::move(*table)))};
    }

    Reply get_table(const httplib::Request & req)
    {
        std::optional<std::size_t> version;
        if (req.has_param("version")) {
            try {
                version = std::stoul(req.get_param_value("version"));
            }
            catch (const std::exception &) {
                throw ApiError(422, "invalid_request", "version must be a positive integer");
            }
        }
        auto [table, v] = store_.snapshot(req.matches[1], version);
        auto j = table_to_json(*table);
        j["dataset"] = std::string(req.matches[1]);
        j["version"] = v;
        return {200, j};
    }

    Reply create_run(const httplib::Request & req)
    {
        auto body = detail::parse_body(req);
        std::optional<std::size_t> version;
        if (body.contains("version"))
            version = detail::field<std::size_t>(body, "version", 0);
        auto [table, v] = store_.snapshot(req.matches[1], version);
        auto options = detail::run_options(body, *table);
        auto run = write_on_the_wall(table, options);
        if (detail::field<bool>(body, "apply_known", true)) {
            std::vector<KnownPattern> known;
            for (const auto & k : store_.known())
                known.push_back(k.pattern);
            if (! known.empty())
                run = filter_known(run, known);
        }
        auto j = run_to_json(run);
        j["dataset"] = std::string(req.matches[1]);
        j["version"] = v;
        j["run_id"] = store_.store_run(j);
        return {201, j};
    }

    /// A structured conjecture, its rendered form, or {"run_id", "index"}.
    LinearConjecture resolve_conjecture(const Json & ref, const KnowledgeTable & t) const
    {
        try {
            if (ref.is_string())
                return bind_pattern(t, parse_conjecture_form(ref.get<std::string>()));
            if (ref.contains("text"))
                return bind_pattern(t, parse_conjecture_form(ref.at("text").get<std::string>()));
            if (ref.contains("run_id")) {
                auto run = store_.run(ref.at("run_id").get<std::string>());
                auto index = ref.at("index").get<std::size_t>();
                const auto & list = run.at("conjectures");
                if (index < 1 || index > list.size())
                    throw ApiError(422, "invalid_request", "conjecture index out of range");
                return bind_pattern(t, to_pattern(conjecture_from_json(list[index - 1])));
            }
            return bind_pattern(t, to_pattern(conjecture_from_json(ref)));
        }
        catch (const ApiError &) {
            throw;
        }
        catch (const std::exception & e) {
            throw ApiError(422, "invalid_conjecture", e.what());
        }
    }

    Reply submit_counterexample(const httplib::Request & req)
    {
        auto body = detail::parse_body(req);
        const std::string id = req.matches[1];
        auto domain = store_.dataset_handle(id).domain;
        auto object = detail::object_from_json(body, domain);

        std::optional<LinearConjecture> conjecture;
        std::optional<Verdict> verdict;
        auto [h, table] = store_.append(id, std::move(object), [&](const KnowledgeTable & latest, const SourceObject & obj) {
            if (! body.contains("conjecture"))
                return;
            conjecture = resolve_conjecture(body["conjecture"], latest);
            verdict = check_object(*conjecture, obj);
            if (! verdict->violates)
                throw ApiError(409, "not_a_counterexample",
                    verdict->applies ? "the object satisfies the conjecture" : "the object does not meet the hypothesis",
                    Json{{"lhs", verdict->lhs.str()}, {"rhs", verdict->rhs.str()}, {"applies", verdict->applies}});
        });

        auto j = Store::to_json(h);
        j["witness_id"] = table->rows().back().id;
        if (conjecture) {
            j["lhs"] = verdict->lhs.str();
            j["rhs"] = verdict->rhs.str();
            j["refuted"] = render_inequality(
                conjecture->hypothesis, conjecture->target, conjecture->direction, conjecture->rhs, domain);
            j["violations"] = violations(*table, *conjecture);
        }
        return {200, j};
    }

    Reply add_known(const httplib::Request & req)
    {
        auto body = detail::parse_body(req);
        KnownPattern p;
        try {
            p = body.contains("text") ? parse_conjecture_form(body.at("text").get<std::string>()) : pattern_from_json(body);
            if (p.hypothesis.conjuncts.empty())
                throw std::invalid_argument("a pattern needs at least one property");
        }
        catch (const std::exception & e) {
            throw ApiError(422, "invalid_pattern", e.what());
        }
        auto [entry, created] = store_.add_known(std::move(p));
        auto j = Store::to_json(entry);
        j["created"] = created;
        return {200, j};
    }

    Store store_;
};

/// Blocks until the server stops.
inline bool serve(const std::string & host, int port, std::optional<std::filesystem::path> data_dir, std::ostream & log)
{
    Service service(std::move(data_dir));
    httplib::Server server;
    service.install(server);
    log << "listening on " << host << ":" << port << std::endl;
    return server.listen(host, port);
}

} // namespace conjecturer
