#include "probeable/http_api.hpp"

#include <httplib.h>

namespace probeable {

namespace {

using nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

std::string bearer(const httplib::Request& req) {
  const std::string h = req.get_header_value("Authorization");
  constexpr std::string_view prefix = "Bearer ";
  if (h.rfind(prefix, 0) == 0) return h.substr(prefix.size());
  return {};
}

json body_json(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error&) {
    throw ServiceError(400, "bad_request", "request body is not valid JSON");
  }
}

// Runs a handler, mapping refusals and unexpected failures to JSON errors.
template <typename F>
auto guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const ServiceError& e) {
      send_json(res, e.status(), e.body());
    } catch (const std::exception& e) {
      send_json(res, 500, {{"error", {{"kind", "internal"}, {"message", e.what()}}}});
    }
  };
}

}  // namespace

void install_routes(httplib::Server& server, Contest& contest, const std::filesystem::path& static_dir) {
  Contest* c = &contest;

  server.Post("/api/session", guarded([c](const httplib::Request& req, httplib::Response& res) {
    const json body = body_json(req);
    std::string token = bearer(req);
    if (body.contains("token") && body["token"].is_string()) token = body["token"].get<std::string>();
    send_json(res, 200, c->session(token));
  }));

  server.Get("/api/problems", guarded([c](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, c->problems());
  }));

  server.Post(R"(/api/problems/([^/]+)/oracle)", guarded([c](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, c->oracle(bearer(req), req.matches[1], body_json(req)));
  }));

  server.Post(R"(/api/problems/([^/]+)/submission)", guarded([c](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, c->submit(bearer(req), req.matches[1], body_json(req)));
  }));

  server.Post(R"(/api/problems/([^/]+)/verify)", guarded([c](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, c->verify(bearer(req), req.matches[1]));
  }));

  server.Post("/api/admin/phase", guarded([c](const httplib::Request& req, httplib::Response& res) {
    const json body = body_json(req);
    if (!body.contains("phase") || !body["phase"].is_string()) {
      throw ServiceError(400, "bad_request", "body must be {\"phase\": \"...\"}");
    }
    send_json(res, 200, c->set_phase(req.get_header_value("X-Admin-Token"), body["phase"].get<std::string>()));
  }));

  server.Get("/api/admin/log", guarded([c](const httplib::Request& req, httplib::Response& res) {
    res.status = 200;
    res.set_content(c->export_log(req.get_header_value("X-Admin-Token")), "application/x-ndjson");
  }));

  server.Get("/api/admin/heatmap", guarded([c](const httplib::Request& req, httplib::Response& res) {
    res.status = 200;
    res.set_content(c->heatmap(req.get_header_value("X-Admin-Token")), "text/csv");
  }));

  server.set_payload_max_length(4 * 1024 * 1024);
  if (!static_dir.empty()) server.set_mount_point("/", static_dir.string());
}

}  // namespace probeable
