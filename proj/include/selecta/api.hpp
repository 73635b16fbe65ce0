#pragma once

// Transport-free HTTP facade. ApiService::handle maps (method, path, body) to
// a status, headers and body; tools/selecta-server binds it to a socket. The
// handler keeps no state between calls.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "selecta/json_io.hpp"

namespace selecta::api {

struct ApiLimits {
  /// Largest m accepted by /v1/oc; larger runs get a 202 pointing at the CLI.
  std::int64_t max_oc_replicates = 100000;
  /// Cap on m times the number of scanned n for simulated sizing and curves.
  double max_simulated_replicates = 2.5e7;
  /// Value of Access-Control-Allow-Origin.
  std::string cors_origin = "*";
};

struct ApiResponse {
  int status = 200;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;

  /// First header with this name, or "".
  std::string header(const std::string& name) const;
};

class ApiService {
 public:
  explicit ApiService(ApiLimits limits = {}) : limits_(std::move(limits)) {}

  ApiResponse handle(const std::string& method, const std::string& path,
                     const std::string& body) const;

  /// The document served at GET /v1/schema.
  Json schema() const;

  const ApiLimits& limits() const noexcept { return limits_; }

 private:
  ApiLimits limits_;
};

/// Routes served under /v1, in the order they are documented.
const std::vector<std::pair<std::string, std::string>>& routes();

}  // namespace selecta::api
