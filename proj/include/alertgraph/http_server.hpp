#pragma once

#include <string>

namespace httplib {
class Server;
}

namespace alertgraph {

class Service;

/// Registers the REST endpoints (see docs/api.md) on `server`.
void register_routes(httplib::Server& server, Service& service);

/// Blocking; returns when the server stops.
bool serve(Service& service, const std::string& host, int port);

}  // namespace alertgraph
