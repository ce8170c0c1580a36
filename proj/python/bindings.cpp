#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "alertgraph/errors.hpp"
#include "alertgraph/service.hpp"

namespace py = pybind11;
namespace ag = alertgraph;

namespace {

ag::Micro micro_arg(const std::string& name) {
    const auto m = ag::parse_micro(name);
    if (!m) throw ag::ValidationError("unknown micro stage '" + name + "'");
    return *m;
}

std::vector<ag::Micro> micros_arg(const std::vector<std::string>& names) {
    std::vector<ag::Micro> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(micro_arg(n));
    return out;
}

ag::UrgencyConfig config_arg(const std::string& doc) {
    return doc.empty() ? ag::UrgencyConfig{} : ag::urgency_config_from_json(nlohmann::json::parse(doc));
}

ag::AnalysisOptions options_arg(double gap_seconds, std::size_t merge_min_count, bool strict) {
    ag::AnalysisOptions o;
    o.gap_threshold = std::chrono::duration_cast<ag::Duration>(std::chrono::duration<double>(gap_seconds));
    o.merge_min_count = merge_min_count;
    o.policy = strict ? ag::ParsePolicy::Strict : ag::ParsePolicy::Skip;
    return o;
}

ag::FilterSpec filter_arg(const py::dict& kwargs) {
    ag::QueryParams params;
    for (const auto& [k, v] : kwargs) {
        if (v.is_none()) continue;
        params.emplace(py::str(k), py::str(v));
    }
    return ag::filter_from_params(params);
}

struct PyService {
    PyService(const std::string& path) : store(path), service(store) {}
    ag::Store store;
    ag::Service service;
};

}  // namespace

PYBIND11_MODULE(_alertgraph, m) {
    m.doc() = "Alert-driven attack graphs and urgency matrices";
    m.attr("__version__") = std::string(ag::kVersion);

    static py::exception<ag::Error> base(m, "AlertGraphError");
    static py::exception<ag::ValidationError> validation(m, "ValidationError", base.ptr());
    static py::exception<ag::FormatError> format(m, "FormatError", base.ptr());
    static py::exception<ag::RecordError> record(m, "RecordError", base.ptr());
    static py::exception<ag::ConfigError> config(m, "ConfigError", base.ptr());
    static py::exception<ag::EmptyNodeSetError> empty(m, "EmptyNodeSetError", base.ptr());
    static py::exception<ag::NotFound> not_found(m, "NotFound", base.ptr());
    static py::exception<ag::NotReady> not_ready(m, "NotReady", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ag::ValidationError& e) {
            py::set_error(validation, e.what());
        } catch (const ag::FormatError& e) {
            py::set_error(format, e.what());
        } catch (const ag::RecordError& e) {
            py::set_error(record, e.what());
        } catch (const ag::ConfigError& e) {
            py::set_error(config, e.what());
        } catch (const ag::EmptyNodeSetError& e) {
            py::set_error(empty, e.what());
        } catch (const ag::NotFound& e) {
            py::set_error(not_found, e.what());
        } catch (const ag::NotReady& e) {
            py::set_error(not_ready, e.what());
        } catch (const ag::Error& e) {
            py::set_error(base, e.what());
        }
    });

    m.def("elapsed_label", py::overload_cast<double>(&ag::elapsed_label), py::arg("seconds"));
    m.def("resolve_service", [](int port) { return ag::resolve_service(port); }, py::arg("port"));
    m.def(
        "map_signature",
        [](const std::string& signature, std::int64_t sid, const std::string& category) {
            const auto a = ag::AisMapping::builtin().map(signature, sid, category);
            return py::make_tuple(std::string(ag::to_string(a.micro)), std::string(ag::to_string(a.macro)),
                                  std::string(ag::to_string(a.severity)));
        },
        py::arg("signature"), py::arg("signature_id") = 0, py::arg("category") = "");
    m.def(
        "normalized_prevalence",
        [](const std::vector<std::string>& nodes, const std::string& micro) {
            return ag::normalized_prevalence(micros_arg(nodes), micro_arg(micro));
        },
        py::arg("node_micros"), py::arg("micro"));
    m.def(
        "urgency_score",
        [](const std::string& micro, const std::vector<std::string>& nodes, const std::string& config) {
            return ag::urgency_score(micro_arg(micro), config_arg(config), micros_arg(nodes));
        },
        py::arg("micro"), py::arg("node_micros"), py::arg("config_json") = "");
    m.def(
        "classify_urgency",
        [](double score, const std::string& config) {
            return std::string(ag::to_string(ag::classify_urgency(score, config_arg(config).ranges)));
        },
        py::arg("score"), py::arg("config_json") = "");
    m.def(
        "analyze_json",
        [](const std::string& raw, double gap_seconds, std::size_t merge_min_count, bool strict) {
            ag::Analysis a;
            {
                py::gil_scoped_release release;
                a = ag::analyze(raw, options_arg(gap_seconds, merge_min_count, strict));
            }
            nlohmann::json doc{{"alerts", a.alerts.size()},
                               {"skipped", a.skipped},
                               {"episodes", a.episodes.size()},
                               {"objective_graphs", a.objective_graph_count},
                               {"graph", ag::graph_document(a.graph)},
                               {"matrix", ag::to_json(ag::build_matrix(a.graph, a.episodes, a.config, {}))}};
            return doc.dump();
        },
        py::arg("raw"), py::arg("gap_seconds") = 300.0, py::arg("merge_min_count") = ag::kDefaultMergeMinCount,
        py::arg("strict") = false);

    py::class_<PyService>(m, "_Service")
        .def(py::init<const std::string&>(), py::arg("store_path"))
        .def(
            "upload",
            [](PyService& s, const std::string& raw, const std::string& filename) {
                ag::UploadResult r;
                {
                    py::gil_scoped_release release;
                    r = s.service.upload(raw, filename);
                }
                auto doc = ag::to_json(r.run);
                doc["existing"] = r.existing;
                return doc.dump();
            },
            py::arg("raw"), py::arg("filename"))
        .def("runs", [](PyService& s) { return s.service.runs().dump(); })
        .def(
            "graph",
            [](PyService& s, std::int64_t run, const std::string& layout, const py::dict& filters) {
                const auto method = ag::parse_layout_method(layout);
                if (!method) throw ag::ValidationError("unknown layout '" + layout + "'");
                return s.service.graph(run, filter_arg(filters), *method).dump();
            },
            py::arg("run_id"), py::arg("layout"), py::arg("filters"))
        .def(
            "export",
            [](PyService& s, std::int64_t run, const std::string& format, const py::dict& filters) {
                return s.service.export_graph(run, ag::parse_graph_format(format), filter_arg(filters));
            },
            py::arg("run_id"), py::arg("format"), py::arg("filters"))
        .def(
            "matrix",
            [](PyService& s, std::int64_t run, const py::dict& filters) {
                return s.service.matrix(run, filter_arg(filters)).dump();
            },
            py::arg("run_id"), py::arg("filters"))
        .def(
            "timeline",
            [](PyService& s, std::int64_t run, const std::string& perspective) {
                const auto p = ag::parse_perspective(perspective);
                if (!p) throw ag::ValidationError("unknown perspective '" + perspective + "'");
                return s.service.timeline(run, *p).dump();
            },
            py::arg("run_id"), py::arg("perspective"))
        .def("config", [](PyService& s) { return s.service.config().dump(); })
        .def(
            "put_config", [](PyService& s, const std::string& doc) {
                return s.service.put_config(nlohmann::json::parse(doc)).dump();
            },
            py::arg("document"));
}
