#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

#include "graphcomm/api/query_service.hpp"

namespace httplib {
class Server;
}

namespace graphcomm::api {

inline constexpr int kDefaultPort = 8080;

// Routes: POST /query, GET /health, GET /vertex/<handle>. CORS is open so a
// browser client on another origin can call it.
class HttpServer {
 public:
  explicit HttpServer(const QueryService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws if taken.
  int bind(const std::string& host, int port);
  // Blocks until stop(); in-flight requests finish before it returns.
  void run();
  void stop();
  bool running() const;

 private:
  const QueryService& service_;
  std::unique_ptr<httplib::Server> server_;
};

struct ServeConfig {
  std::string host = "0.0.0.0";
  int port = kDefaultPort;
  std::filesystem::path store_path;
  ServiceOptions service;
};

// Binds, loads the store (requests before that get 503), serves until
// SIGINT or SIGTERM, then drains and returns. `log` gets one line per event.
void serve(const ServeConfig& config, std::ostream& log);

// JSON text for a response body; invalid UTF-8 is replaced, never thrown on.
std::string to_body(const Json& body);

}  // namespace graphcomm::api
