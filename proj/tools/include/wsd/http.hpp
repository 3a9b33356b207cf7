#pragma once

#include <string>

namespace httplib {
class Server;
}

namespace wsd {

class Session;

/// Registers the annotation endpoints under /api on `server`.
void register_routes(httplib::Server& server, Session& session);

/// Serves `session` on host:port until the server is stopped.
/// Returns false when the port cannot be bound.
bool serve(Session& session, const std::string& host, int port);

}  // namespace wsd
