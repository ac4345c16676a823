#include "graphcomm/api/http_server.hpp"

#include <csignal>
#include <ostream>
#include <thread>

#include <pthread.h>

#include "httplib.h"

namespace graphcomm::api {

namespace {

constexpr const char* kJson = "application/json; charset=utf-8";

void reply(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_content(to_body(r.body), kJson);
}

}  // namespace

std::string to_body(const Json& body) {
  return body.dump(-1, ' ', false, Json::error_handler_t::replace);
}

HttpServer::HttpServer(const QueryService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  // SO_REUSEADDR only: with SO_REUSEPORT a second server would share the port
  // instead of failing to bind.
  s.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                         {"Access-Control-Allow-Headers", "Content-Type"},
                         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  s.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  s.Post("/query", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.handle_query(req.body));
  });
  s.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, service_.handle_health());
  });
  s.Get(R"(/vertex/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.handle_vertex(req.matches[1].str()));
  });
  s.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const Json body = {{"errors", Json::array({{{"message", "no route for " + req.method + " " + req.path},
                                                {"code", "not_found"}}})}};
    res.set_content(to_body(body), kJson);
  });
  s.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          reply(res, error_response(e));
        } catch (...) {
          res.status = 500;
        }
      });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kUnavailable, "cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    throw Error(ErrorCode::kUnavailable,
                "cannot bind " + host + ":" + std::to_string(port) + " (port in use?)");
  }
  return port;
}

void HttpServer::run() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

bool HttpServer::running() const { return server_->is_running(); }

void serve(const ServeConfig& config, std::ostream& log) {
  // Signals are taken synchronously by this thread; workers inherit the mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  QueryService service(config.service);
  HttpServer server(service);
  std::jthread listener;
  try {
    const int port = server.bind(config.host, config.port);
    listener = std::jthread([&server] { server.run(); });
    log << "listening on " << config.host << ":" << port << std::endl;

    auto store = std::make_shared<GraphStore>(GraphStore::load(config.store_path));
    service.attach(std::move(store));
    log << "store loaded: " << to_body(service.health()) << std::endl;
  } catch (...) {
    server.stop();
    if (listener.joinable()) listener.join();
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    throw;
  }

  int received = 0;
  sigwait(&signals, &received);
  log << "signal " << received << ", draining" << std::endl;
  server.stop();
  listener.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  log << "stopped" << std::endl;
}

}  // namespace graphcomm::api
