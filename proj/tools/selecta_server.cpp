#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "selecta/http_server.hpp"
#include "selecta/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"HTTP service for the selecta library"};
  std::string host = "127.0.0.1";
  int port = 8652;
  int timeout_s = 600;
  selecta::api::ApiLimits limits;
  app.add_option("--host", host, "Bind address");
  app.add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  app.add_option("--timeout", timeout_s, "Socket read/write timeout in seconds")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-oc-m", limits.max_oc_replicates, "Largest m accepted by /v1/oc");
  app.add_option("--max-sim", limits.max_simulated_replicates,
                 "Largest m times scanned n accepted for simulated sizing and curves");
  app.add_option("--cors-origin", limits.cors_origin, "Access-Control-Allow-Origin value");
  CLI11_PARSE(app, argc, argv);

  const int threads = selecta::configure_threads_from_env();
  selecta::api::HttpServer server(limits, timeout_s);
  if (server.bind(host, port) < 0) {
    std::fprintf(stderr, "cannot bind %s:%d\n", host.c_str(), port);
    return 1;
  }
  std::fprintf(stderr, "selecta-server listening on %s:%d (%d thread(s))\n", host.c_str(), port,
               threads);
  return server.listen_after_bind() ? 0 : 1;
}
