#include "selecta/http_server.hpp"

#include <httplib.h>

namespace selecta::api {

HttpServer::HttpServer(ApiLimits limits, int timeout_seconds)
    : service_(std::move(limits)), server_(std::make_unique<httplib::Server>()) {
  server_->set_read_timeout(timeout_seconds, 0);
  server_->set_write_timeout(timeout_seconds, 0);
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    const auto out = service_.handle(req.method, req.path, req.body);
    res.status = out.status;
    std::string content_type = "application/json";
    for (const auto& [k, v] : out.headers) {
      if (k == "Content-Type") content_type = v;
      else res.set_header(k, v);
    }
    if (!out.body.empty()) res.set_content(out.body, content_type);
  };
  const std::string any = R"(/.*)";
  server_->Get(any, dispatch);
  server_->Post(any, dispatch);
  server_->Options(any, dispatch);
  server_->Put(any, dispatch);
  server_->Delete(any, dispatch);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace selecta::api
