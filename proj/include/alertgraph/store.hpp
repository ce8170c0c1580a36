#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alertgraph/pipeline.hpp"

struct sqlite3;

namespace alertgraph {

enum class RunStatus { Pending, Complete, Failed };

std::string_view to_string(RunStatus s) noexcept;

struct RunInfo {
    std::int64_t run_id = 0;
    std::string created_at;
    std::string filename;
    std::string digest;
    RunStatus status = RunStatus::Pending;
    std::size_t alerts = 0;
    std::size_t skipped = 0;
    std::size_t episodes = 0;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t objective_graphs = 0;
};

nlohmann::json to_json(const RunInfo& r);

/// Lower-case hex SHA-256.
std::string content_digest(std::string_view bytes);

/// Embedded SQLite store for analysis runs and the live urgency config.
/// One connection, serialized behind a mutex: a run is written in a single
/// transaction, so readers only ever observe complete runs.
class Store {
public:
    /// ":memory:" opens a private in-memory database.
    explicit Store(const std::filesystem::path& path);
    ~Store();

    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    /// $ALERTGRAPH_STORE, falling back to ./alertgraph.db.
    static std::filesystem::path default_path();

    std::optional<RunInfo> find_by_digest(const std::string& digest) const;

    /// Inserts a Pending run (or returns the run already holding `digest`).
    std::int64_t reserve_run(const std::string& filename, const std::string& digest);

    /// Writes the whole analysis atomically and marks the run Complete. A run
    /// that already exists Complete for `digest` is returned untouched.
    /// Throws StorageError, in which case nothing of the run remains.
    std::int64_t persist_analysis(const std::string& filename, const std::string& digest, const Analysis& analysis);

    /// Throws NotFound for unknown ids, NotReady unless Complete.
    Analysis load_analysis(std::int64_t run_id) const;
    RunInfo run_info(std::int64_t run_id) const;
    std::vector<RunInfo> list_runs() const;
    std::size_t complete_run_count() const;

    std::vector<SignatureRow> node_signature_table(std::int64_t run_id, const NodeKey& node) const;

    void save_config(const UrgencyConfig& config);
    std::optional<UrgencyConfig> load_config() const;

    /// Test hook: the (n+1)-th write statement from now on fails.
    void fail_after_writes(std::optional<std::size_t> n);

private:
    class Statement;
    friend class Statement;

    void exec(const char* sql) const;
    void count_write();
    std::int64_t insert_run(const std::string& filename, const std::string& digest, RunStatus status);
    void write_payload(std::int64_t run_id, const Analysis& analysis);
    RunInfo read_run(std::int64_t run_id) const;
    Analysis read_analysis(std::int64_t run_id) const;

    sqlite3* db_ = nullptr;
    mutable std::mutex mutex_;
    std::optional<std::size_t> writes_left_;
};

}  // namespace alertgraph
