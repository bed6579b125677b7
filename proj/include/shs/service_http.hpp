#pragma once

#include <optional>
#include <string>

// larger accept queue than httplib's default of 5
#ifndef CPPHTTPLIB_LISTEN_BACKLOG
#define CPPHTTPLIB_LISTEN_BACKLOG 256
#endif
#include <httplib.h>

#include "shs/service.hpp"

namespace shs::service {

inline void send(httplib::Response& res, const HttpReply& reply) {
  res.status = reply.status;
  res.set_content(reply.body, reply.content_type);
}

inline std::optional<std::string> header(const httplib::Request& req, const char* name) {
  if (!req.has_header(name)) return std::nullopt;
  return req.get_header_value(name);
}

/// Routes:
///   GET  /questionnaire?lang=xx
///   POST /responses
///   GET  /results/{id}
///   GET  /report[?per_sheet=1]   (bearer token when configured)
///   GET  /export                 (bearer token when configured)
inline void bind_routes(httplib::Server& server, CollectionService& service) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type, Authorization");
    res.status = 204;
  });
  server.Get("/questionnaire", [&service](const httplib::Request& req, httplib::Response& res) {
    std::optional<std::string> lang;
    if (req.has_param("lang")) lang = req.get_param_value("lang");
    send(res, service.questionnaire(lang));
  });
  server.Post("/responses", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.submit(req.body));
  });
  server.Get(R"(/results/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.result(req.matches[1].str()));
  });
  server.Get("/report", [&service](const httplib::Request& req, httplib::Response& res) {
    const bool per_sheet = req.has_param("per_sheet") && req.get_param_value("per_sheet") == "1";
    send(res, service.report(header(req, "Authorization"), per_sheet));
  });
  server.Get("/export", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.export_csv(header(req, "Authorization")));
  });
}

}  // namespace shs::service
