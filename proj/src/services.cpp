#include "alertgraph/services.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "alertgraph/errors.hpp"
#include "builtin_data.hpp"

namespace alertgraph {

PortServiceTable::PortServiceTable(std::map<int, std::string> names) : names_(std::move(names)) {
    for (const auto& [port, name] : names_) {
        if (port < 0 || port > 65535) throw ConfigError("port out of range: " + std::to_string(port));
        // The empty service name is reserved for the graph's artificial root.
        if (name.empty()) throw ConfigError("empty service name for port " + std::to_string(port));
    }
}

const PortServiceTable& PortServiceTable::builtin() {
    static const PortServiceTable table = from_json(detail::builtin_port_services_json());
    return table;
}

PortServiceTable PortServiceTable::from_json(std::string_view text) {
    const auto doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("services") || !doc["services"].is_object())
        throw ConfigError("port table must be an object with a \"services\" object");

    std::map<int, std::string> names;
    for (const auto& [key, value] : doc["services"].items()) {
        int port = 0;
        try {
            std::size_t used = 0;
            port = std::stoi(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw ConfigError("invalid port key '" + key + "'");
        }
        if (!value.is_string()) throw ConfigError("service name for port " + key + " must be a string");
        names[port] = value.get<std::string>();
    }
    return PortServiceTable(std::move(names));
}

PortServiceTable PortServiceTable::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open port table " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::string PortServiceTable::resolve(int port) const {
    if (port < 0 || port > 65535) throw ValidationError("port out of range: " + std::to_string(port));
    if (const auto it = names_.find(port); it != names_.end()) return it->second;
    return "port-" + std::to_string(port);
}

PortServiceTable PortServiceTable::merged_with(const PortServiceTable& other) const {
    auto names = names_;
    for (const auto& [port, name] : other.names_) names[port] = name;
    return PortServiceTable(std::move(names));
}

}  // namespace alertgraph
