#include "alertgraph/store.hpp"

#include <sqlite3.h>

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <tuple>

#include "alertgraph/errors.hpp"

namespace alertgraph {

using nlohmann::json;

namespace {

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS runs (
    run_id INTEGER PRIMARY KEY AUTOINCREMENT,
    created_at TEXT NOT NULL,
    filename TEXT NOT NULL,
    digest TEXT NOT NULL UNIQUE,
    status TEXT NOT NULL,
    alerts INTEGER NOT NULL DEFAULT 0,
    skipped INTEGER NOT NULL DEFAULT 0,
    episodes INTEGER NOT NULL DEFAULT 0,
    nodes INTEGER NOT NULL DEFAULT 0,
    edges INTEGER NOT NULL DEFAULT 0,
    objective_graphs INTEGER NOT NULL DEFAULT 0,
    options TEXT,
    config TEXT
);
CREATE TABLE IF NOT EXISTS alerts (
    run_id INTEGER NOT NULL REFERENCES runs(run_id) ON DELETE CASCADE,
    idx INTEGER NOT NULL,
    ts_us INTEGER NOT NULL,
    src_ip TEXT NOT NULL,
    dest_ip TEXT NOT NULL,
    dest_port INTEGER NOT NULL,
    signature TEXT NOT NULL,
    signature_id INTEGER NOT NULL,
    category TEXT NOT NULL,
    micro TEXT NOT NULL,
    severity TEXT NOT NULL,
    service TEXT NOT NULL,
    PRIMARY KEY (run_id, idx)
);
CREATE TABLE IF NOT EXISTS episodes (
    run_id INTEGER NOT NULL REFERENCES runs(run_id) ON DELETE CASCADE,
    episode_id INTEGER NOT NULL,
    attacker_ip TEXT NOT NULL,
    victim_ip TEXT NOT NULL,
    micro TEXT NOT NULL,
    severity TEXT NOT NULL,
    service TEXT NOT NULL,
    start_us INTEGER NOT NULL,
    end_us INTEGER NOT NULL,
    alert_count INTEGER NOT NULL,
    context_id INTEGER NOT NULL,
    histogram TEXT NOT NULL,
    PRIMARY KEY (run_id, episode_id)
);
CREATE TABLE IF NOT EXISTS nodes (
    run_id INTEGER NOT NULL REFERENCES runs(run_id) ON DELETE CASCADE,
    micro TEXT NOT NULL,
    service TEXT NOT NULL,
    context_id INTEGER NOT NULL,
    severity TEXT NOT NULL,
    is_start INTEGER NOT NULL,
    is_end INTEGER NOT NULL,
    episode_refs TEXT NOT NULL,
    PRIMARY KEY (run_id, micro, service, context_id)
);
CREATE TABLE IF NOT EXISTS edges (
    run_id INTEGER NOT NULL,
    from_micro TEXT NOT NULL,
    from_service TEXT NOT NULL,
    from_context INTEGER NOT NULL,
    to_micro TEXT NOT NULL,
    to_service TEXT NOT NULL,
    to_context INTEGER NOT NULL,
    attacker_ip TEXT NOT NULL,
    victim_ip TEXT NOT NULL,
    elapsed_us INTEGER NOT NULL,
    multiplicity INTEGER NOT NULL,
    FOREIGN KEY (run_id, from_micro, from_service, from_context)
        REFERENCES nodes(run_id, micro, service, context_id) ON DELETE CASCADE,
    FOREIGN KEY (run_id, to_micro, to_service, to_context)
        REFERENCES nodes(run_id, micro, service, context_id) ON DELETE CASCADE
);
CREATE TABLE IF NOT EXISTS paths (
    run_id INTEGER NOT NULL REFERENCES runs(run_id) ON DELETE CASCADE,
    path_id INTEGER NOT NULL,
    attacker_ip TEXT NOT NULL,
    victim_ip TEXT NOT NULL,
    steps TEXT NOT NULL,
    PRIMARY KEY (run_id, path_id)
);
CREATE TABLE IF NOT EXISTS settings (
    key TEXT PRIMARY KEY,
    value TEXT NOT NULL
);
)sql";

Micro micro_from(const std::string& s) {
    const auto m = parse_micro(s);
    if (!m) throw StorageError("corrupt micro value '" + s + "'");
    return *m;
}

Severity severity_from(const std::string& s) {
    const auto v = parse_severity(s);
    if (!v) throw StorageError("corrupt severity value '" + s + "'");
    return *v;
}

RunStatus status_from(const std::string& s) {
    if (s == "Complete") return RunStatus::Complete;
    if (s == "Failed") return RunStatus::Failed;
    return RunStatus::Pending;
}

std::string now_rfc3339() {
    return format_rfc3339(std::chrono::time_point_cast<Duration>(std::chrono::system_clock::now()));
}

}  // namespace

class Store::Statement {
public:
    Statement(const Store& store, const char* sql) : db_(store.db_) {
        if (sqlite3_prepare_v2(db_, sql, -1, &stmt_, nullptr) != SQLITE_OK)
            throw StorageError(std::string("prepare failed: ") + sqlite3_errmsg(db_));
    }
    ~Statement() { sqlite3_finalize(stmt_); }

    Statement(const Statement&) = delete;
    Statement& operator=(const Statement&) = delete;

    Statement& bind(int i, std::int64_t v) {
        check(sqlite3_bind_int64(stmt_, i, v));
        return *this;
    }
    Statement& bind(int i, std::string_view v) {
        check(sqlite3_bind_text(stmt_, i, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT));
        return *this;
    }

    /// True while a row is available.
    bool step() {
        const int rc = sqlite3_step(stmt_);
        if (rc == SQLITE_ROW) return true;
        if (rc == SQLITE_DONE) return false;
        throw StorageError(std::string("step failed: ") + sqlite3_errmsg(db_));
    }

    void reset() {
        sqlite3_reset(stmt_);
        sqlite3_clear_bindings(stmt_);
    }

    std::int64_t integer(int col) const { return sqlite3_column_int64(stmt_, col); }
    std::size_t count(int col) const { return static_cast<std::size_t>(sqlite3_column_int64(stmt_, col)); }
    std::string text(int col) const {
        const auto* p = sqlite3_column_text(stmt_, col);
        return p ? std::string(reinterpret_cast<const char*>(p), sqlite3_column_bytes(stmt_, col)) : std::string();
    }

private:
    void check(int rc) {
        if (rc != SQLITE_OK) throw StorageError(std::string("bind failed: ") + sqlite3_errmsg(db_));
    }

    sqlite3* db_;
    sqlite3_stmt* stmt_ = nullptr;
};

std::string_view to_string(RunStatus s) noexcept {
    switch (s) {
        case RunStatus::Pending: return "Pending";
        case RunStatus::Complete: return "Complete";
        case RunStatus::Failed: return "Failed";
    }
    return "Pending";
}

json to_json(const RunInfo& r) {
    return json{
        {"run_id", r.run_id},
        {"created_at", r.created_at},
        {"filename", r.filename},
        {"digest", r.digest},
        {"status", std::string(to_string(r.status))},
        {"counts",
         {{"alerts", r.alerts},
          {"skipped", r.skipped},
          {"episodes", r.episodes},
          {"nodes", r.nodes},
          {"edges", r.edges},
          {"objective_graphs", r.objective_graphs}}},
    };
}

std::string content_digest(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw StorageError("SHA-256 computation failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[md[i] >> 4]);
        out.push_back(kHex[md[i] & 0x0f]);
    }
    return out;
}

Store::Store(const std::filesystem::path& path) {
    const auto p = path.string();
    if (sqlite3_open_v2(p.c_str(), &db_, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX,
                        nullptr) != SQLITE_OK) {
        const std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
        sqlite3_close(db_);
        db_ = nullptr;
        throw StorageError("cannot open store " + p + ": " + msg);
    }
    sqlite3_busy_timeout(db_, 5000);
    try {
        exec("PRAGMA foreign_keys = ON;");
        exec("PRAGMA journal_mode = WAL;");
        exec(kSchema);
    } catch (...) {
        sqlite3_close(db_);
        db_ = nullptr;
        throw;
    }
}

Store::~Store() {
    if (db_) sqlite3_close(db_);
}

std::filesystem::path Store::default_path() {
    if (const char* env = std::getenv("ALERTGRAPH_STORE"); env && *env) return env;
    return "alertgraph.db";
}

void Store::exec(const char* sql) const {
    char* err = nullptr;
    if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
        std::string msg = err ? err : "unknown error";
        sqlite3_free(err);
        throw StorageError(msg);
    }
}

void Store::count_write() {
    if (!writes_left_) return;
    if (*writes_left_ == 0) throw StorageError("injected write failure");
    --*writes_left_;
}

void Store::fail_after_writes(std::optional<std::size_t> n) {
    std::lock_guard lock(mutex_);
    writes_left_ = n;
}

std::optional<RunInfo> Store::find_by_digest(const std::string& digest) const {
    std::lock_guard lock(mutex_);
    Statement q(*this, "SELECT run_id FROM runs WHERE digest = ?");
    q.bind(1, digest);
    if (!q.step()) return std::nullopt;
    return read_run(q.integer(0));
}

std::int64_t Store::insert_run(const std::string& filename, const std::string& digest, RunStatus status) {
    Statement ins(*this, "INSERT INTO runs (created_at, filename, digest, status) VALUES (?, ?, ?, ?)");
    ins.bind(1, now_rfc3339()).bind(2, filename).bind(3, digest).bind(4, to_string(status));
    count_write();
    ins.step();
    return sqlite3_last_insert_rowid(db_);
}

std::int64_t Store::reserve_run(const std::string& filename, const std::string& digest) {
    std::lock_guard lock(mutex_);
    Statement q(*this, "SELECT run_id FROM runs WHERE digest = ?");
    q.bind(1, digest);
    if (q.step()) return q.integer(0);
    return insert_run(filename, digest, RunStatus::Pending);
}

std::int64_t Store::persist_analysis(const std::string& filename, const std::string& digest,
                                     const Analysis& analysis) {
    std::lock_guard lock(mutex_);

    std::optional<std::int64_t> reserved;
    {
        Statement q(*this, "SELECT run_id, status FROM runs WHERE digest = ?");
        q.bind(1, digest);
        if (q.step()) {
            if (status_from(q.text(1)) == RunStatus::Complete) return q.integer(0);
            reserved = q.integer(0);
        }
    }

    exec("BEGIN IMMEDIATE;");
    try {
        const auto run_id = reserved ? *reserved : insert_run(filename, digest, RunStatus::Pending);
        write_payload(run_id, analysis);

        Statement upd(*this,
                      "UPDATE runs SET status = 'Complete', alerts = ?, skipped = ?, episodes = ?, nodes = ?, "
                      "edges = ?, objective_graphs = ?, options = ?, config = ? WHERE run_id = ?");
        upd.bind(1, static_cast<std::int64_t>(analysis.alerts.size()))
            .bind(2, static_cast<std::int64_t>(analysis.skipped))
            .bind(3, static_cast<std::int64_t>(analysis.episodes.size()))
            .bind(4, static_cast<std::int64_t>(analysis.graph.nodes.size()))
            .bind(5, static_cast<std::int64_t>(analysis.graph.edges.size()))
            .bind(6, static_cast<std::int64_t>(analysis.objective_graph_count))
            .bind(7, to_json(analysis.options).dump())
            .bind(8, to_json(analysis.config).dump())
            .bind(9, run_id);
        count_write();
        upd.step();
        exec("COMMIT;");
        return run_id;
    } catch (const std::exception& e) {
        exec("ROLLBACK;");
        if (reserved) {
            Statement del(*this, "DELETE FROM runs WHERE run_id = ?");
            del.bind(1, *reserved);
            del.step();
        }
        if (dynamic_cast<const StorageError*>(&e)) throw;
        throw StorageError(e.what());
    }
}

void Store::write_payload(std::int64_t run_id, const Analysis& a) {
    {
        Statement ins(*this,
                      "INSERT INTO alerts (run_id, idx, ts_us, src_ip, dest_ip, dest_port, signature, signature_id, "
                      "category, micro, severity, service) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)");
        std::int64_t idx = 0;
        for (const auto& al : a.alerts) {
            ins.reset();
            ins.bind(1, run_id)
                .bind(2, idx++)
                .bind(3, to_micros(al.timestamp))
                .bind(4, al.src_ip)
                .bind(5, al.dst_ip)
                .bind(6, static_cast<std::int64_t>(al.dst_port))
                .bind(7, al.signature)
                .bind(8, al.signature_id)
                .bind(9, al.category)
                .bind(10, to_string(al.micro))
                .bind(11, to_string(al.severity))
                .bind(12, al.service);
            count_write();
            ins.step();
        }
    }
    {
        Statement ins(*this,
                      "INSERT INTO episodes (run_id, episode_id, attacker_ip, victim_ip, micro, severity, service, "
                      "start_us, end_us, alert_count, context_id, histogram) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)");
        for (const auto& e : a.episodes) {
            ins.reset();
            ins.bind(1, run_id)
                .bind(2, static_cast<std::int64_t>(e.id))
                .bind(3, e.attacker_ip)
                .bind(4, e.victim_ip)
                .bind(5, to_string(e.micro))
                .bind(6, to_string(e.severity))
                .bind(7, e.service)
                .bind(8, to_micros(e.start))
                .bind(9, to_micros(e.end))
                .bind(10, static_cast<std::int64_t>(e.alert_count))
                .bind(11, static_cast<std::int64_t>(e.context_id))
                .bind(12, json(e.signature_histogram).dump());
            count_write();
            ins.step();
        }
    }
    {
        Statement ins(*this,
                      "INSERT INTO nodes (run_id, micro, service, context_id, severity, is_start, is_end, "
                      "episode_refs) VALUES (?, ?, ?, ?, ?, ?, ?, ?)");
        for (const auto& n : a.graph.nodes) {
            ins.reset();
            ins.bind(1, run_id)
                .bind(2, to_string(n.key.micro))
                .bind(3, n.key.service)
                .bind(4, static_cast<std::int64_t>(n.key.context_id))
                .bind(5, to_string(n.severity))
                .bind(6, static_cast<std::int64_t>(n.is_start))
                .bind(7, static_cast<std::int64_t>(n.is_end))
                .bind(8, json(n.episode_refs).dump());
            count_write();
            ins.step();
        }
    }
    {
        Statement ins(*this,
                      "INSERT INTO edges (run_id, from_micro, from_service, from_context, to_micro, to_service, "
                      "to_context, attacker_ip, victim_ip, elapsed_us, multiplicity) "
                      "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)");
        for (const auto& e : a.graph.edges) {
            ins.reset();
            ins.bind(1, run_id)
                .bind(2, to_string(e.from.micro))
                .bind(3, e.from.service)
                .bind(4, static_cast<std::int64_t>(e.from.context_id))
                .bind(5, to_string(e.to.micro))
                .bind(6, e.to.service)
                .bind(7, static_cast<std::int64_t>(e.to.context_id))
                .bind(8, e.attacker_ip)
                .bind(9, e.victim_ip)
                .bind(10, e.elapsed.count())
                .bind(11, static_cast<std::int64_t>(e.multiplicity));
            count_write();
            ins.step();
        }
    }
    {
        Statement ins(*this,
                      "INSERT INTO paths (run_id, path_id, attacker_ip, victim_ip, steps) VALUES (?, ?, ?, ?, ?)");
        for (const auto& p : a.graph.paths) {
            json steps = json::array();
            for (const auto& s : p.steps)
                steps.push_back({s.node.label(), s.episode_id, to_string(s.severity), to_micros(s.start),
                                 to_micros(s.end)});
            ins.reset();
            ins.bind(1, run_id)
                .bind(2, static_cast<std::int64_t>(p.id))
                .bind(3, p.attacker_ip)
                .bind(4, p.victim_ip)
                .bind(5, steps.dump());
            count_write();
            ins.step();
        }
    }
}

RunInfo Store::read_run(std::int64_t run_id) const {
    Statement q(*this,
                "SELECT run_id, created_at, filename, digest, status, alerts, skipped, episodes, nodes, edges, "
                "objective_graphs FROM runs WHERE run_id = ?");
    q.bind(1, run_id);
    if (!q.step()) throw NotFound("run " + std::to_string(run_id) + " does not exist");
    RunInfo r;
    r.run_id = q.integer(0);
    r.created_at = q.text(1);
    r.filename = q.text(2);
    r.digest = q.text(3);
    r.status = status_from(q.text(4));
    r.alerts = q.count(5);
    r.skipped = q.count(6);
    r.episodes = q.count(7);
    r.nodes = q.count(8);
    r.edges = q.count(9);
    r.objective_graphs = q.count(10);
    return r;
}

RunInfo Store::run_info(std::int64_t run_id) const {
    std::lock_guard lock(mutex_);
    return read_run(run_id);
}

std::vector<RunInfo> Store::list_runs() const {
    std::lock_guard lock(mutex_);
    std::vector<RunInfo> out;
    std::vector<std::int64_t> ids;
    {
        Statement q(*this, "SELECT run_id FROM runs ORDER BY run_id");
        while (q.step()) ids.push_back(q.integer(0));
    }
    for (auto id : ids) out.push_back(read_run(id));
    return out;
}

std::size_t Store::complete_run_count() const {
    std::lock_guard lock(mutex_);
    Statement q(*this, "SELECT COUNT(*) FROM runs WHERE status = 'Complete'");
    q.step();
    return q.count(0);
}

Analysis Store::load_analysis(std::int64_t run_id) const {
    std::lock_guard lock(mutex_);
    // Deferred read transaction: one consistent snapshot across all tables.
    exec("BEGIN;");
    try {
        auto a = read_analysis(run_id);
        exec("COMMIT;");
        return a;
    } catch (...) {
        exec("ROLLBACK;");
        throw;
    }
}

Analysis Store::read_analysis(std::int64_t run_id) const {
    const auto info = read_run(run_id);
    if (info.status != RunStatus::Complete)
        throw NotReady("run " + std::to_string(run_id) + " is " + std::string(to_string(info.status)));

    Analysis a;
    a.skipped = info.skipped;
    a.objective_graph_count = info.objective_graphs;
    {
        Statement q(*this, "SELECT options, config FROM runs WHERE run_id = ?");
        q.bind(1, run_id);
        q.step();
        try {
            a.options = analysis_options_from_json(json::parse(q.text(0)));
            a.config = urgency_config_from_json(json::parse(q.text(1)));
        } catch (const std::exception& e) {
            throw StorageError(std::string("corrupt run settings: ") + e.what());
        }
    }
    {
        Statement q(*this,
                    "SELECT ts_us, src_ip, dest_ip, dest_port, signature, signature_id, category, micro, severity, "
                    "service FROM alerts WHERE run_id = ? ORDER BY idx");
        q.bind(1, run_id);
        while (q.step()) {
            NormalizedAlert al;
            al.timestamp = from_micros(q.integer(0));
            al.src_ip = q.text(1);
            al.dst_ip = q.text(2);
            al.dst_port = static_cast<int>(q.integer(3));
            al.signature = q.text(4);
            al.signature_id = q.integer(5);
            al.category = q.text(6);
            al.micro = micro_from(q.text(7));
            al.macro = macro_of(al.micro);
            al.severity = severity_from(q.text(8));
            al.service = q.text(9);
            a.alerts.push_back(std::move(al));
        }
    }
    {
        Statement q(*this,
                    "SELECT episode_id, attacker_ip, victim_ip, micro, severity, service, start_us, end_us, "
                    "alert_count, context_id, histogram FROM episodes WHERE run_id = ? ORDER BY episode_id");
        q.bind(1, run_id);
        while (q.step()) {
            Episode e;
            e.id = q.count(0);
            e.attacker_ip = q.text(1);
            e.victim_ip = q.text(2);
            e.micro = micro_from(q.text(3));
            e.macro = macro_of(e.micro);
            e.severity = severity_from(q.text(4));
            e.service = q.text(5);
            e.start = from_micros(q.integer(6));
            e.end = from_micros(q.integer(7));
            e.alert_count = q.count(8);
            e.context_id = static_cast<int>(q.integer(9));
            e.signature_histogram = json::parse(q.text(10)).get<std::map<std::string, std::size_t>>();
            a.episodes.push_back(std::move(e));
        }
    }
    {
        Statement q(*this,
                    "SELECT micro, service, context_id, severity, is_start, is_end, episode_refs FROM nodes "
                    "WHERE run_id = ?");
        q.bind(1, run_id);
        while (q.step()) {
            AttackGraphNode n;
            n.key = {micro_from(q.text(0)), q.text(1), static_cast<int>(q.integer(2))};
            n.severity = severity_from(q.text(3));
            n.macro = n.key.is_root() ? Macro::Unknown : macro_of(n.key.micro);
            n.shape = shape_for(n.severity);
            n.is_start = q.integer(4) != 0;
            n.is_end = q.integer(5) != 0;
            n.episode_refs = json::parse(q.text(6)).get<std::vector<std::size_t>>();
            a.graph.nodes.push_back(std::move(n));
        }
        std::sort(a.graph.nodes.begin(), a.graph.nodes.end(),
                  [](const AttackGraphNode& x, const AttackGraphNode& y) { return x.key < y.key; });
    }
    {
        Statement q(*this,
                    "SELECT from_micro, from_service, from_context, to_micro, to_service, to_context, attacker_ip, "
                    "victim_ip, elapsed_us, multiplicity FROM edges WHERE run_id = ?");
        q.bind(1, run_id);
        while (q.step()) {
            AttackGraphEdge e;
            e.from = {micro_from(q.text(0)), q.text(1), static_cast<int>(q.integer(2))};
            e.to = {micro_from(q.text(3)), q.text(4), static_cast<int>(q.integer(5))};
            e.attacker_ip = q.text(6);
            e.victim_ip = q.text(7);
            e.elapsed = Duration{q.integer(8)};
            e.multiplicity = q.count(9);
            a.graph.edges.push_back(std::move(e));
        }
        std::sort(a.graph.edges.begin(), a.graph.edges.end(), [](const AttackGraphEdge& x, const AttackGraphEdge& y) {
            return std::tie(x.from, x.to, x.attacker_ip, x.victim_ip) <
                   std::tie(y.from, y.to, y.attacker_ip, y.victim_ip);
        });
    }
    {
        Statement q(*this, "SELECT path_id, attacker_ip, victim_ip, steps FROM paths WHERE run_id = ? ORDER BY path_id");
        q.bind(1, run_id);
        while (q.step()) {
            AttackPath p;
            p.id = q.count(0);
            p.attacker_ip = q.text(1);
            p.victim_ip = q.text(2);
            for (const auto& s : json::parse(q.text(3))) {
                const auto key = NodeKey::parse(s.at(0).get<std::string>());
                if (!key) throw StorageError("corrupt path step");
                p.steps.push_back({*key, s.at(1).get<std::size_t>(), severity_from(s.at(2).get<std::string>()),
                                   from_micros(s.at(3).get<std::int64_t>()), from_micros(s.at(4).get<std::int64_t>())});
            }
            a.graph.paths.push_back(std::move(p));
        }
    }
    return a;
}

std::vector<SignatureRow> Store::node_signature_table(std::int64_t run_id, const NodeKey& node) const {
    const auto a = load_analysis(run_id);
    return alertgraph::node_signature_table(a.graph, a.episodes, node);
}

void Store::save_config(const UrgencyConfig& config) {
    std::lock_guard lock(mutex_);
    Statement ins(*this, "INSERT INTO settings (key, value) VALUES ('urgency_config', ?) "
                         "ON CONFLICT(key) DO UPDATE SET value = excluded.value");
    ins.bind(1, to_json(config).dump());
    count_write();
    ins.step();
}

std::optional<UrgencyConfig> Store::load_config() const {
    std::lock_guard lock(mutex_);
    Statement q(*this, "SELECT value FROM settings WHERE key = 'urgency_config'");
    if (!q.step()) return std::nullopt;
    try {
        return urgency_config_from_json(json::parse(q.text(0)));
    } catch (const std::exception& e) {
        throw StorageError(std::string("corrupt stored config: ") + e.what());
    }
}

}  // namespace alertgraph
