// alertgraph command line: ingest alert files, serve the HTTP API, and export
// graphs, matrices and signature tables from the store.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "alertgraph/errors.hpp"
#include "alertgraph/http_server.hpp"
#include "alertgraph/service.hpp"

namespace ag = alertgraph;

namespace {

struct FilterFlags {
    std::string attacker, victim, service, micro, start, end;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--attacker", attacker, "Attacker IP");
        cmd->add_option("--victim", victim, "Victim IP");
        cmd->add_option("--service", service, "Targeted service name");
        cmd->add_option("--micro", micro, "Micro attack stage, e.g. \"Data Exfiltration\"");
        cmd->add_option("--start", start, "Window start (RFC 3339)");
        cmd->add_option("--end", end, "Window end (RFC 3339)");
    }

    ag::FilterSpec to_filter() const {
        ag::QueryParams p;
        if (!attacker.empty()) p.emplace("attacker", attacker);
        if (!victim.empty()) p.emplace("victim", victim);
        if (!service.empty()) p.emplace("service", service);
        if (!micro.empty()) p.emplace("micro", micro);
        if (!start.empty()) p.emplace("start", start);
        if (!end.empty()) p.emplace("end", end);
        return ag::filter_from_params(p);
    }
};

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ag::ValidationError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ag::ValidationError("cannot write " + path);
    out << content;
}

ag::LayoutMethod layout_of(const std::string& name) {
    const auto m = ag::parse_layout_method(name);
    if (!m) throw ag::ValidationError("unknown layout '" + name + "'");
    return *m;
}

std::string matrix_table(const nlohmann::json& doc) {
    std::ostringstream out;
    if (doc["empty_node_set"].get<bool>()) out << "(filter leaves no attack graph nodes)\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %-27s %8s %-9s %6s %6s %-7s\n", "macro", "micro", "urgency", "class",
                  "nodes", "alerts", "level");
    out << line;
    for (const auto& col : doc["columns"])
        for (const auto& c : col["cells"]) {
            std::snprintf(line, sizeof line, "%-22s %-27s %8.4f %-9s %6zu %6zu %-7s\n",
                          col["macro"].get<std::string>().c_str(), c["micro"].get<std::string>().c_str(),
                          c["urgency_score"].get<double>(), c["urgency_class"].get<std::string>().c_str(),
                          c["node_count"].get<std::size_t>(), c["alert_count"].get<std::size_t>(),
                          c["severity_level"].get<std::string>().c_str());
            out << line;
        }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Alert-driven attack graph analytics"};
    app.require_subcommand(1);

    std::string store_path = ag::Store::default_path().string();
    std::string mapping_path, ports_path;
    app.add_option("--store", store_path, "SQLite store (default: $ALERTGRAPH_STORE or ./alertgraph.db)");
    app.add_option("--mapping", mapping_path, "Signature mapping table (JSON) replacing the bundled one");
    app.add_option("--ports", ports_path, "Port/service table (JSON) extending the bundled one");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Analyze an alert file and store the run");
    std::string input;
    std::string filename;
    long gap_seconds = 300;
    std::size_t merge_min_count = ag::kDefaultMergeMinCount;
    bool strict = false;
    ingest->add_option("file", input, "Alert file (newline-delimited JSON or JSON array); - for stdin")->required();
    ingest->add_option("--filename", filename, "Name recorded for the run (default: the path)");
    ingest->add_option("--gap-seconds", gap_seconds, "Maximum gap inside an episode")->check(CLI::PositiveNumber);
    ingest->add_option("--merge-min-count", merge_min_count, "Context model merge threshold")
        ->check(CLI::PositiveNumber);
    ingest->add_flag("--strict", strict, "Fail on the first malformed record instead of skipping it");

    // serve
    auto* serve = app.add_subcommand("serve", "Run the HTTP API");
    std::string host = "127.0.0.1";
    int port = 8080;
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));

    // export
    auto* exp = app.add_subcommand("export", "Export the (filtered) global attack graph");
    std::int64_t run_id = 0;
    std::string format = "json";
    std::string layout;
    std::string output;
    FilterFlags export_filter;
    exp->add_option("--run", run_id, "Run id")->required();
    exp->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "graphviz", "json", "structured"}));
    exp->add_option("--layout", layout, "Annotate levels: directed or hubsize");
    exp->add_option("-o,--output", output, "Output file (default: stdout)");
    export_filter.add_to(exp);

    // matrix
    auto* mat = app.add_subcommand("matrix", "Print the recommender matrix");
    bool as_table = false;
    FilterFlags matrix_filter;
    mat->add_option("--run", run_id, "Run id")->required();
    mat->add_flag("--table", as_table, "Human readable table instead of JSON");
    matrix_filter.add_to(mat);

    // signatures
    auto* sigs = app.add_subcommand("signatures", "Signature table of one graph node as TSV");
    std::string node_label;
    std::string sort_column = "start";
    bool descending = false;
    sigs->add_option("--run", run_id, "Run id")->required();
    sigs->add_option("--node", node_label, "Node key, e.g. \"Data Exfiltration|http|0\"")->required();
    sigs->add_option("--sort", sort_column, "signature, start, end, attacker, victim or frequency");
    sigs->add_flag("--desc", descending, "Sort descending");
    sigs->add_option("-o,--output", output, "Output file (default: stdout)");

    // timeline
    auto* tl = app.add_subcommand("timeline", "Print timeline segments as JSON");
    std::string perspective = "victim";
    std::string lane_host;
    tl->add_option("--run", run_id, "Run id")->required();
    tl->add_option("--perspective", perspective, "attacker or victim")->check(CLI::IsMember({"attacker", "victim"}));
    tl->add_option("--host", lane_host, "Only this attacker/victim host");

    // config
    auto* cfg = app.add_subcommand("config", "Show or replace the urgency configuration");
    std::string config_file;
    cfg->add_option("--set", config_file, "Config document (JSON) to install");

    CLI11_PARSE(app, argc, argv);

    try {
        ag::ServiceOptions options;
        if (!mapping_path.empty()) options.mapping = ag::AisMapping::load(mapping_path);
        if (!ports_path.empty()) options.ports = options.ports.merged_with(ag::PortServiceTable::load(ports_path));
        options.defaults.gap_threshold = std::chrono::seconds(gap_seconds);
        options.defaults.merge_min_count = merge_min_count;
        options.defaults.policy = strict ? ag::ParsePolicy::Strict : ag::ParsePolicy::Skip;

        ag::Store store(store_path);
        ag::Service service(store, options);

        if (*ingest) {
            const auto result = service.upload(read_file(input), filename.empty() ? input : filename);
            auto doc = ag::to_json(result.run);
            doc["existing"] = result.existing;
            std::cout << doc.dump(2) << "\n";
        } else if (*serve) {
            return ag::serve(service, host, port) ? 0 : 1;
        } else if (*exp) {
            std::optional<ag::LayoutMethod> method;
            if (!layout.empty()) method = layout_of(layout);
            write_output(output, service.export_graph(run_id, ag::parse_graph_format(format), export_filter.to_filter(),
                                                      method));
        } else if (*mat) {
            const auto doc = service.matrix(run_id, matrix_filter.to_filter());
            std::cout << (as_table ? matrix_table(doc) : doc.dump(2) + "\n");
        } else if (*sigs) {
            const auto key = ag::NodeKey::parse(node_label);
            if (!key) throw ag::ValidationError("malformed node key '" + node_label + "'");
            const auto column = ag::parse_signature_column(sort_column);
            if (!column) throw ag::ValidationError("unknown sort column '" + sort_column + "'");
            write_output(output, service.signature_table_tsv(run_id, *key, *column, descending));
        } else if (*tl) {
            std::optional<std::string> h;
            if (!lane_host.empty()) h = lane_host;
            std::cout << service.timeline(run_id, *ag::parse_perspective(perspective), h).dump(2) << "\n";
        } else if (*cfg) {
            if (!config_file.empty())
                std::cout << service.put_config(nlohmann::json::parse(read_file(config_file))).dump(2) << "\n";
            else
                std::cout << service.config().dump(2) << "\n";
        }
    } catch (const ag::Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
