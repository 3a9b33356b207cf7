#include "wsd/http.hpp"

#include "httplib.h"
#include "wsd/session.hpp"

namespace wsd {

namespace {

void send(httplib::Response& res, const Reply& r) {
  res.status = r.status;
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_content(r.body, "application/json");
}

}  // namespace

void register_routes(httplib::Server& server, Session& session) {
  server.Get("/api/state", [&](const httplib::Request&, httplib::Response& res) {
    send(res, session.state());
  });
  server.Get("/api/next", [&](const httplib::Request&, httplib::Response& res) {
    send(res, session.next());
  });
  server.Post("/api/label", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, session.label_json(req.body));
  });
  server.Get("/api/curve", [&](const httplib::Request&, httplib::Response& res) {
    send(res, session.curve());
  });
  server.Get(R"(/api/example/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, session.example(req.matches[1]));
  });
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

bool serve(Session& session, const std::string& host, int port) {
  httplib::Server server;
  register_routes(server, session);
  return server.listen(host, port);
}

}  // namespace wsd
