#pragma once

#include <string_view>

namespace alertgraph::detail {

std::string_view builtin_ais_mapping_json();
std::string_view builtin_port_services_json();

}  // namespace alertgraph::detail
