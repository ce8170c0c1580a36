#include "alertgraph/http_server.hpp"

#include <httplib.h>

#include <charconv>
#include <iostream>

#include "alertgraph/errors.hpp"
#include "alertgraph/service.hpp"

namespace alertgraph {
namespace {

using nlohmann::json;

int status_for(const Error& e) {
    const auto& code = e.code();
    if (code == "NotFound") return 404;
    if (code == "NotReady") return 409;
    if (code == "FormatError" || code == "RecordError") return 422;
    if (code == "ValidationError" || code == "ConfigError") return 400;
    return 500;
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
    res.status = status;
    res.set_content(json{{"error", {{"code", code}, {"message", message}}}}.dump(), "application/json");
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            handler(req, res);
        } catch (const Error& e) {
            send_error(res, status_for(e), e.code(), e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, "InternalError", e.what());
        }
    };
}

std::int64_t run_id_of(const httplib::Request& req) {
    const auto& text = req.matches[1].str();
    std::int64_t id = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), id);
    if (ec != std::errc() || ptr != text.data() + text.size()) throw ValidationError("invalid run id");
    return id;
}

QueryParams params_of(const httplib::Request& req) { return {req.params.begin(), req.params.end()}; }

std::optional<std::string> param(const httplib::Request& req, const std::string& key) {
    if (!req.has_param(key)) return std::nullopt;
    return req.get_param_value(key);
}

std::size_t unsigned_param(const httplib::Request& req, const std::string& key, std::size_t fallback) {
    const auto text = param(req, key);
    if (!text) return fallback;
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), value);
    if (ec != std::errc() || ptr != text->data() + text->size())
        throw ValidationError("'" + key + "' must be a non-negative integer");
    return value;
}

LayoutMethod layout_of(const httplib::Request& req) {
    const auto text = param(req, "layout");
    if (!text) return LayoutMethod::Directed;
    const auto method = parse_layout_method(*text);
    if (!method) throw ValidationError("unknown layout '" + *text + "'");
    return *method;
}

NodeKey node_of(const httplib::Request& req) {
    const auto text = param(req, "node");
    if (!text) throw ValidationError("missing 'node' parameter");
    const auto key = NodeKey::parse(*text);
    if (!key) throw ValidationError("malformed node key '" + *text + "'");
    return *key;
}

struct TableRequest {
    NodeKey node;
    SignatureColumn sort = SignatureColumn::Start;
    bool descending = false;
};

TableRequest table_request(const httplib::Request& req, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : req.params)
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ValidationError("unknown query parameter '" + key + "'");
    TableRequest t{node_of(req)};
    if (const auto s = param(req, "sort")) {
        const auto col = parse_signature_column(*s);
        if (!col) throw ValidationError("unknown sort column '" + *s + "'");
        t.sort = *col;
    }
    if (const auto o = param(req, "order")) {
        if (*o != "asc" && *o != "desc") throw ValidationError("order must be 'asc' or 'desc'");
        t.descending = *o == "desc";
    }
    return t;
}

AnalysisOptions upload_options(const httplib::Request& req, const AnalysisOptions& defaults) {
    for (const auto& [key, value] : req.params)
        if (key != "filename" && key != "gap_seconds" && key != "merge_min_count" && key != "policy")
            throw ValidationError("unknown query parameter '" + key + "'");
    AnalysisOptions o = defaults;
    if (req.has_param("gap_seconds"))
        o.gap_threshold = std::chrono::seconds(unsigned_param(req, "gap_seconds", 0));
    o.merge_min_count = unsigned_param(req, "merge_min_count", o.merge_min_count);
    if (const auto p = param(req, "policy")) {
        if (*p == "strict")
            o.policy = ParsePolicy::Strict;
        else if (*p == "skip")
            o.policy = ParsePolicy::Skip;
        else
            throw ValidationError("policy must be 'skip' or 'strict'");
    }
    return o;
}

}  // namespace

void register_routes(httplib::Server& server, Service& service) {
    server.Get("/api/health", guarded([&](const httplib::Request&, httplib::Response& res) {
                   send_json(res, service.health());
               }));

    server.Get("/api/runs", guarded([&](const httplib::Request&, httplib::Response& res) {
                   send_json(res, service.runs());
               }));

    server.Post("/api/runs", guarded([&](const httplib::Request& req, httplib::Response& res) {
                    const auto options = upload_options(req, service.options().defaults);
                    const auto filename = param(req, "filename").value_or("upload.json");
                    const auto result = service.upload(req.body, filename, options);
                    auto body = to_json(result.run);
                    body["existing"] = result.existing;
                    send_json(res, body, result.existing ? 200 : 201);
                }));

    server.Get(R"(/api/runs/(\d+))", guarded([&](const httplib::Request& req, httplib::Response& res) {
                   send_json(res, service.run(run_id_of(req)));
               }));

    server.Get(R"(/api/runs/(\d+)/graph)", guarded([&](const httplib::Request& req, httplib::Response& res) {
                   const auto filter = filter_from_params(params_of(req), {"layout"});
                   send_json(res, service.graph(run_id_of(req), filter, layout_of(req)));
               }));

    server.Get(R"(/api/runs/(\d+)/redirect)", guarded([&](const httplib::Request& req, httplib::Response& res) {
                   const auto f = filter_from_params(params_of(req), {"layout"});
                   const RedirectQuery q{f.attacker_ip, f.victim_ip, f.service, f.micro, f.from, f.to};
                   send_json(res, service.redirect_to_graph(run_id_of(req), q, layout_of(req)));
               }));

    server.Get(R"(/api/runs/(\d+)/export)", guarded([&](const httplib::Request& req, httplib::Response& res) {
                   const auto filter = filter_from_params(params_of(req), {"format", "layout"});
                   const auto format = parse_graph_format(param(req, "format").value_or("json"));
                   std::optional<LayoutMethod> layout;
                   if (req.has_param("layout")) layout = layout_of(req);
                   const auto body = service.export_graph(run_id_of(req), format, filter, layout);
                   res.set_content(body, format == GraphFormat::GraphvizText ? "text/vnd.graphviz"
                                                                             : "application/json");
               }));

    server.Get(R"(/api/runs/(\d+)/timeline)", guarded([&](const httplib::Request& req, httplib::Response& res) {
                   for (const auto& [key, value] : req.params)
                       if (key != "perspective" && key != "host" && key != "start" && key != "end")
                           throw ValidationError("unknown query parameter '" + key + "'");
                   const auto pname = param(req, "perspective").value_or("victim");
                   const auto perspective = parse_perspective(pname);
                   if (!perspective) throw ValidationError("perspective must be 'attacker' or 'victim'");
                   std::optional<Timestamp> from, to;
                   if (const auto s = param(req, "start")) {
                       from = parse_rfc3339(*s);
                       if (!from) throw ValidationError("invalid timestamp for 'start'");
                   }
                   if (const auto s = param(req, "end")) {
                       to = parse_rfc3339(*s);
                       if (!to) throw ValidationError("invalid timestamp for 'end'");
                   }
                   send_json(res, service.timeline(run_id_of(req), *perspective, param(req, "host"), from, to));
               }));

    server.Get(R"(/api/runs/(\d+)/matrix)", guarded([&](const httplib::Request& req, httplib::Response& res) {
                   send_json(res, service.matrix(run_id_of(req), filter_from_params(params_of(req))));
               }));

    server.Get(R"(/api/runs/(\d+)/signatures)", guarded([&](const httplib::Request& req, httplib::Response& res) {
                   const auto t = table_request(req, {"node", "sort", "order", "page"});
                   send_json(res, service.signature_table(run_id_of(req), t.node, t.sort, t.descending,
                                                          unsigned_param(req, "page", 1)));
               }));

    server.Get(R"(/api/runs/(\d+)/signatures\.tsv)",
               guarded([&](const httplib::Request& req, httplib::Response& res) {
                   const auto t = table_request(req, {"node", "sort", "order"});
                   res.set_content(service.signature_table_tsv(run_id_of(req), t.node, t.sort, t.descending),
                                   "text/tab-separated-values");
               }));

    server.Get("/api/config", guarded([&](const httplib::Request&, httplib::Response& res) {
                   send_json(res, service.config());
               }));

    server.Put("/api/config", guarded([&](const httplib::Request& req, httplib::Response& res) {
                   const auto doc = json::parse(req.body, nullptr, false);
                   if (doc.is_discarded()) throw ConfigError("config body is not valid JSON");
                   send_json(res, service.put_config(doc));
               }));
}

bool serve(Service& service, const std::string& host, int port) {
    httplib::Server server;
    register_routes(server, service);
    std::cerr << "alertgraph listening on http://" << host << ":" << port << "\n";
    return server.listen(host, port);
}

}  // namespace alertgraph
