#pragma once

#include <memory>
#include <string>

#include "selecta/api.hpp"

namespace httplib {
class Server;
}

namespace selecta::api {

/// Binds an ApiService to an httplib server. Every method and path is
/// forwarded to ApiService::handle, so routing lives in one place.
class HttpServer {
 public:
  HttpServer(ApiLimits limits, int timeout_seconds);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to host:port (port 0 picks a free port) and returns the bound
  /// port, or -1 on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called. Blocks.
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  ApiService service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace selecta::api
