#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace alertgraph {

/// Destination port -> service name, seeded from a snapshot of the IANA
/// service-name registry (data/port_services.json).
class PortServiceTable {
public:
    PortServiceTable() = default;
    explicit PortServiceTable(std::map<int, std::string> names);

    static const PortServiceTable& builtin();
    static PortServiceTable from_json(std::string_view text);
    static PortServiceTable load(const std::filesystem::path& path);

    /// Registry name for the port, or "port-<n>" when unregistered.
    /// Throws ValidationError outside 0..65535.
    std::string resolve(int port) const;

    /// Entries of `other` replace entries of this table.
    PortServiceTable merged_with(const PortServiceTable& other) const;

    std::size_t size() const noexcept { return names_.size(); }

private:
    std::map<int, std::string> names_;
};

inline std::string resolve_service(int port, const PortServiceTable& table = PortServiceTable::builtin()) {
    return table.resolve(port);
}

}  // namespace alertgraph
